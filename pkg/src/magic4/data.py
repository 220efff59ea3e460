"""Fixture tables shipped as CSV.

epsilon.csv        cocycle values eps(i, j)
epsilon_sym.csv    eps(i, j) eps(j, i)
exp_map.csv        exponential map, rows q_sigma, columns v (transposed on load)
p_classes.csv      K0 classes of the P_{i,j}, rows q_sigma, columns P_{i,j}
index_map.csv      index map, rows w_{i,j}, columns v
eta.csv            eta-tilde, rows s1..s5 (s5 read mod 2), columns v
"""
from __future__ import annotations

import os
from pathlib import Path

from .exact.intlat import IntMatrix, read_labeled_csv

FIXTURE_FILES = ("epsilon.csv", "epsilon_sym.csv", "exp_map.csv", "p_classes.csv", "index_map.csv", "eta.csv")
DEFAULT_DIR = Path(__file__).parent / "fixtures"


class FixtureError(Exception):
    """A fixture file is missing or malformed (a configuration problem, not a verification failure)."""


def fixture_dir(directory=None) -> Path:
    if directory is None:
        directory = os.environ.get("MAGIC4_FIXTURES") or DEFAULT_DIR
    return Path(directory)


def check_fixtures(directory=None) -> Path:
    d = fixture_dir(directory)
    missing = [f for f in FIXTURE_FILES if not (d / f).is_file()]
    if missing:
        raise FixtureError(f"missing fixture(s) in {d}: {', '.join(missing)}")
    return d


def load_table(name: str, directory=None):
    """(column labels, row labels, IntMatrix) for one fixture file."""
    path = fixture_dir(directory) / name
    if not path.is_file():
        raise FixtureError(f"missing fixture: {path}")
    try:
        return read_labeled_csv(path)
    except (ValueError, IndexError) as exc:
        raise FixtureError(f"malformed fixture {path}: {exc}") from exc


def reorder_columns(header, body: IntMatrix, order) -> IntMatrix:
    """Permute columns of ``body`` so that they follow ``order`` (list of header labels)."""
    try:
        idx = [header.index(lab) for lab in order]
    except ValueError as exc:
        raise FixtureError(f"fixture column labels do not match the expected basis: {exc}") from exc
    if len(set(idx)) != len(header):
        raise FixtureError("fixture columns are not a permutation of the expected basis")
    return IntMatrix([[row[k] for k in idx] for row in body.entries])


def reorder_rows(labels, body: IntMatrix, order) -> IntMatrix:
    try:
        idx = [labels.index(lab) for lab in order]
    except ValueError as exc:
        raise FixtureError(f"fixture row labels do not match the expected basis: {exc}") from exc
    return IntMatrix([body.entries[k] for k in idx])
