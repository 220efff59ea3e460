"""Integer matrices, Smith and Hermite normal forms, kernels and lattices.

Convention: ``smith_normal_form(A)`` returns (left, diag, right) with
``left @ A @ right == D``, D the rectangular diagonal matrix of the invariant
factors. Both transforms are unimodular.
"""
from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence


class IntMatrix:
    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries: Iterable[Iterable[int]], cols: int | None = None):
        grid = tuple(tuple(int(x) for x in row) for row in entries)
        if grid:
            ncols = len(grid[0])
        else:
            ncols = 0 if cols is None else cols
        if any(len(r) != ncols for r in grid):
            raise ValueError("ragged matrix")
        object.__setattr__(self, "entries", grid)
        object.__setattr__(self, "rows", len(grid))
        object.__setattr__(self, "cols", ncols)

    def __setattr__(self, name, value):
        raise AttributeError("IntMatrix is immutable")

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls([[int(i == j) for j in range(n)] for i in range(n)], cols=n)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls([[0] * cols for _ in range(rows)], cols=cols)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]], rows: int) -> "IntMatrix":
        if not columns:
            return cls([[] for _ in range(rows)], cols=0) if rows else cls([], cols=0)
        return cls(list(zip(*columns)))

    @property
    def shape(self):
        return (self.rows, self.cols)

    def __getitem__(self, idx):
        i, j = idx
        return self.entries[i][j]

    def column(self, j: int) -> tuple:
        return tuple(r[j] for r in self.entries)

    def columns(self) -> list:
        return [self.column(j) for j in range(self.cols)]

    def __eq__(self, other):
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return self.shape == other.shape and self.entries == other.entries

    def __hash__(self):
        return hash((self.shape, self.entries))

    def __matmul__(self, other):
        if isinstance(other, IntMatrix):
            if self.cols != other.rows:
                raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
            oc = other.columns()
            return IntMatrix([[sum(a * b for a, b in zip(r, c)) for c in oc] for r in self.entries],
                             cols=other.cols)
        vec = tuple(other)
        if len(vec) != self.cols:
            raise ValueError("vector length mismatch")
        return tuple(sum(a * b for a, b in zip(r, vec)) for r in self.entries)

    def __add__(self, other):
        return IntMatrix([[a + b for a, b in zip(r, s)] for r, s in zip(self.entries, other.entries)], cols=self.cols)

    def __sub__(self, other):
        return IntMatrix([[a - b for a, b in zip(r, s)] for r, s in zip(self.entries, other.entries)], cols=self.cols)

    def __neg__(self):
        return IntMatrix([[-a for a in r] for r in self.entries], cols=self.cols)

    def transpose(self) -> "IntMatrix":
        return IntMatrix(list(zip(*self.entries)) if self.rows else [], cols=self.rows)

    @property
    def T(self):
        return self.transpose()

    def hstack(self, other: "IntMatrix") -> "IntMatrix":
        return IntMatrix([r + s for r, s in zip(self.entries, other.entries)], cols=self.cols + other.cols)

    def is_zero(self) -> bool:
        return not any(any(r) for r in self.entries)

    def det(self) -> int:
        """Bareiss fraction-free determinant."""
        if self.rows != self.cols:
            raise ValueError("determinant of a non-square matrix")
        n = self.rows
        if n == 0:
            return 1
        m = [list(r) for r in self.entries]
        sign, prev = 1, 1
        for k in range(n - 1):
            if m[k][k] == 0:
                p = next((r for r in range(k + 1, n) if m[r][k]), None)
                if p is None:
                    return 0
                m[k], m[p] = m[p], m[k]
                sign = -sign
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            prev = m[k][k]
        return sign * m[n - 1][n - 1]

    def to_csv(self, path) -> None:
        with open(path, "w", newline="") as fh:
            csv.writer(fh, lineterminator="\n").writerows(self.entries)

    @classmethod
    def read_csv(cls, path) -> "IntMatrix":
        with open(path, newline="") as fh:
            rows = [[int(x) for x in row] for row in csv.reader(fh) if row]
        return cls(rows)

    def __repr__(self):
        return f"IntMatrix({[list(r) for r in self.entries]})"


@dataclass(frozen=True)
class SmithForm:
    left: IntMatrix
    diag: tuple
    right: IntMatrix

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diag if d)

    def diagonal_matrix(self, rows: int, cols: int) -> IntMatrix:
        return IntMatrix([[self.diag[i] if i == j and i < len(self.diag) else 0 for j in range(cols)]
                          for i in range(rows)], cols=cols)


def _swap_rows(m, i, j):
    m[i], m[j] = m[j], m[i]


def _swap_cols(m, i, j):
    for row in m:
        row[i], row[j] = row[j], row[i]


def smith_normal_form(A: IntMatrix) -> SmithForm:
    """Smith normal form with transforms: left @ A @ right = diag(invariant factors).

    Pivot rule: smallest nonzero absolute value in the trailing block, first in
    row-major order. Only the nonzero invariant factors are listed in ``diag``.
    """
    m, n = A.rows, A.cols
    a = [list(r) for r in A.entries]
    L = [[int(i == j) for j in range(m)] for i in range(m)]
    R = [[int(i == j) for j in range(n)] for i in range(n)]
    diag = []
    for t in range(min(m, n)):
        while True:
            best = None
            for i in range(t, m):
                for j in range(t, n):
                    v = a[i][j]
                    if v and (best is None or abs(v) < best[0]):
                        best = (abs(v), i, j)
            if best is None:
                break
            _, pi, pj = best
            if pi != t:
                _swap_rows(a, t, pi)
                _swap_rows(L, t, pi)
            if pj != t:
                _swap_cols(a, t, pj)
                _swap_cols(R, t, pj)
            p = a[t][t]
            for i in range(t + 1, m):
                q = a[i][t] // p
                if q:
                    a[i] = [x - q * y for x, y in zip(a[i], a[t])]
                    L[i] = [x - q * y for x, y in zip(L[i], L[t])]
            for j in range(t + 1, n):
                q = a[t][j] // p
                if q:
                    for row in a:
                        row[j] -= q * row[t]
                    for row in R:
                        row[j] -= q * row[t]
            if any(a[i][t] for i in range(t + 1, m)) or any(a[t][j] for j in range(t + 1, n)):
                continue
            bad = next((i for i in range(t + 1, m) if any(a[i][j] % p for j in range(t + 1, n))), None)
            if bad is not None:
                a[t] = [x + y for x, y in zip(a[t], a[bad])]
                L[t] = [x + y for x, y in zip(L[t], L[bad])]
                continue
            break
        if a[t][t] == 0:
            break
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            L[t] = [-x for x in L[t]]
        diag.append(a[t][t])
    return SmithForm(IntMatrix(L, cols=m), tuple(diag), IntMatrix(R, cols=n))


def rank(A: IntMatrix) -> int:
    return smith_normal_form(A).rank


def hnf_rows(rows: Sequence[Sequence[int]], ncols: int) -> list:
    """Row-style Hermite normal form of the lattice spanned by ``rows``.

    Returns the nonzero rows: echelon, positive pivots, entries above each pivot
    reduced into [0, pivot). Unique for the lattice.
    """
    a = [list(r) for r in rows if any(r)]
    r = 0
    for c in range(ncols):
        while True:
            nz = [k for k in range(r, len(a)) if a[k][c]]
            if not nz:
                break
            k0 = min(nz, key=lambda k: (abs(a[k][c]), k))
            _swap_rows(a, r, k0)
            done = True
            for k in range(r + 1, len(a)):
                if a[k][c]:
                    q = a[k][c] // a[r][c]
                    a[k] = [x - q * y for x, y in zip(a[k], a[r])]
                    if a[k][c]:
                        done = False
            if done:
                break
        if r < len(a) and a[r][c]:
            if a[r][c] < 0:
                a[r] = [-x for x in a[r]]
            for k in range(r):
                q = a[k][c] // a[r][c]
                if q:
                    a[k] = [x - q * y for x, y in zip(a[k], a[r])]
            r += 1
    return [tuple(row) for row in a[:r]]


def column_hnf(G: IntMatrix) -> IntMatrix:
    """Column Hermite normal form of the lattice generated by the columns of G."""
    basis = hnf_rows(G.columns(), G.rows)
    return IntMatrix.from_columns(basis, G.rows)


def kernel_basis(A: IntMatrix) -> IntMatrix:
    """Saturated integer kernel basis as columns (taken from the SNF right transform, then HNF-normalized)."""
    snf = smith_normal_form(A)
    r = snf.rank
    cols = [snf.right.column(j) for j in range(r, A.cols)]
    if not cols:
        return IntMatrix.from_columns([], A.cols)
    return column_hnf(IntMatrix.from_columns(cols, A.cols))


def cokernel_invariants(A: IntMatrix):
    """(free rank, torsion invariant factors > 1) of Z^rows / A Z^cols."""
    snf = smith_normal_form(A)
    return A.rows - snf.rank, [d for d in snf.diag if d > 1]


class Lattice:
    """Subgroup of Z^n generated by the columns of ``generators``."""

    __slots__ = ("ambient", "generators", "_hnf")

    def __init__(self, generators: IntMatrix):
        object.__setattr__(self, "ambient", generators.rows)
        object.__setattr__(self, "generators", generators)
        object.__setattr__(self, "_hnf", None)

    def __setattr__(self, name, value):
        raise AttributeError("Lattice is immutable")

    @classmethod
    def from_vectors(cls, vectors: Sequence[Sequence[int]], ambient: int) -> "Lattice":
        return cls(IntMatrix.from_columns(list(vectors), ambient))

    def basis_rows(self) -> list:
        if self._hnf is None:
            object.__setattr__(self, "_hnf", hnf_rows(self.generators.columns(), self.ambient))
        return self._hnf

    def hnf(self) -> IntMatrix:
        return IntMatrix.from_columns(self.basis_rows(), self.ambient)

    @property
    def rank(self) -> int:
        return len(self.basis_rows())

    def contains(self, vec: Sequence[int]) -> bool:
        v = list(vec)
        if len(v) != self.ambient:
            raise ValueError("ambient rank mismatch")
        for row in self.basis_rows():
            c = next(k for k, x in enumerate(row) if x)
            if v[c] % row[c]:
                return False
            q = v[c] // row[c]
            if q:
                v = [x - q * y for x, y in zip(v, row)]
        return not any(v)

    def __eq__(self, other):
        if not isinstance(other, Lattice):
            return NotImplemented
        return lattice_equal(self, other)

    def __hash__(self):
        return hash(tuple(self.basis_rows()))


def lattice_equal(L1: Lattice, L2: Lattice) -> bool:
    if L1.ambient != L2.ambient:
        raise ValueError(f"ambient rank mismatch: {L1.ambient} vs {L2.ambient}")
    return L1.basis_rows() == L2.basis_rows()


def image_lattice(A: IntMatrix) -> Lattice:
    return Lattice(A)


def kernel_lattice(A: IntMatrix) -> Lattice:
    return Lattice(kernel_basis(A))


def read_labeled_csv(path) -> tuple:
    """Read a CSV with a header row and a label column. Returns (col_labels, row_labels, IntMatrix)."""
    with open(Path(path), newline="") as fh:
        rows = [row for row in csv.reader(fh) if row]
    header = rows[0][1:]
    labels = [r[0] for r in rows[1:]]
    body = IntMatrix([[int(x) for x in r[1:]] for r in rows[1:]])
    return header, labels, body
