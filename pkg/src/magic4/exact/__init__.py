"""Exact arithmetic: Q(i, sqrt2) scalars and matrices, integer lattice algebra."""
from .field import FieldScalar, ONE, ZERO, I, SQRT2, INV_SQRT2, fs
from .qmatrix import QMatrix
from .intlat import (
    IntMatrix,
    Lattice,
    SmithForm,
    cokernel_invariants,
    column_hnf,
    hnf_rows,
    image_lattice,
    kernel_basis,
    kernel_lattice,
    lattice_equal,
    rank,
    smith_normal_form,
)

__all__ = [
    "FieldScalar", "ONE", "ZERO", "I", "SQRT2", "INV_SQRT2", "fs", "QMatrix", "IntMatrix", "Lattice",
    "SmithForm", "cokernel_invariants", "column_hnf", "hnf_rows", "image_lattice", "kernel_basis",
    "kernel_lattice", "lattice_equal", "rank", "smith_normal_form",
]
