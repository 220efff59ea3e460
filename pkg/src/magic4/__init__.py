"""Verification toolkit for the 4x4 magic square C*-algebra: exact algebra over Q(i, sqrt 2),
the RP^3 matrix model, fixed-point geometry, integer K-theory and presentation checks.
"""
from .data import FixtureError
from .kernels import BACKEND
from .report import CheckResult, VerificationReport

__version__ = "0.1.0"

__all__ = ["BACKEND", "CheckResult", "FixtureError", "VerificationReport", "__version__"]
