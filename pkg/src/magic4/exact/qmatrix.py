"""Dense matrices over Q(i, sqrt2)."""
from __future__ import annotations

from typing import Iterable, Sequence

from .field import ONE, ZERO, FieldScalar, fs


class QMatrix:
    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries: Iterable[Iterable]):
        grid = tuple(tuple(fs(x) for x in row) for row in entries)
        ncols = len(grid[0]) if grid else 0
        if any(len(r) != ncols for r in grid):
            raise ValueError("ragged matrix")
        object.__setattr__(self, "entries", grid)
        object.__setattr__(self, "rows", len(grid))
        object.__setattr__(self, "cols", ncols)

    def __setattr__(self, name, value):
        raise AttributeError("QMatrix is immutable")

    @classmethod
    def _wrap(cls, grid, rows, cols):
        obj = object.__new__(cls)
        object.__setattr__(obj, "entries", grid)
        object.__setattr__(obj, "rows", rows)
        object.__setattr__(obj, "cols", cols)
        return obj

    @classmethod
    def identity(cls, n: int) -> "QMatrix":
        return cls._wrap(tuple(tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n)), n, n)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "QMatrix":
        return cls._wrap(tuple((ZERO,) * cols for _ in range(rows)), rows, cols)

    @classmethod
    def unit(cls, n: int, i: int, j: int) -> "QMatrix":
        """Matrix unit e_{i,j} (0-based indices)."""
        return cls._wrap(tuple(tuple(ONE if (r, c) == (i, j) else ZERO for c in range(n)) for r in range(n)), n, n)

    @classmethod
    def diag(cls, values: Sequence) -> "QMatrix":
        n = len(values)
        return cls._wrap(tuple(tuple(fs(values[i]) if i == j else ZERO for j in range(n)) for i in range(n)), n, n)

    @classmethod
    def block_diag(cls, blocks: Sequence["QMatrix"]) -> "QMatrix":
        n = sum(b.rows for b in blocks)
        m = sum(b.cols for b in blocks)
        grid = [[ZERO] * m for _ in range(n)]
        r0 = c0 = 0
        for b in blocks:
            for i, row in enumerate(b.entries):
                grid[r0 + i][c0:c0 + b.cols] = row
            r0 += b.rows
            c0 += b.cols
        return cls._wrap(tuple(map(tuple, grid)), n, m)

    @classmethod
    def from_blocks(cls, blocks: Sequence[Sequence["QMatrix"]]) -> "QMatrix":
        out = []
        for brow in blocks:
            h = brow[0].rows
            for i in range(h):
                out.append(tuple(x for b in brow for x in b.entries[i]))
        return cls._wrap(tuple(out), len(out), len(out[0]))

    def __getitem__(self, idx):
        i, j = idx
        return self.entries[i][j]

    @property
    def shape(self):
        return (self.rows, self.cols)

    def __eq__(self, other):
        if not isinstance(other, QMatrix):
            return NotImplemented
        return self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __add__(self, other: "QMatrix") -> "QMatrix":
        self._same_shape(other)
        return QMatrix._wrap(tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.entries, other.entries)),
                             self.rows, self.cols)

    def __sub__(self, other: "QMatrix") -> "QMatrix":
        self._same_shape(other)
        return QMatrix._wrap(tuple(tuple(a - b for a, b in zip(r, s)) for r, s in zip(self.entries, other.entries)),
                             self.rows, self.cols)

    def __neg__(self):
        return QMatrix._wrap(tuple(tuple(-a for a in r) for r in self.entries), self.rows, self.cols)

    def scale(self, k) -> "QMatrix":
        k = fs(k)
        return QMatrix._wrap(tuple(tuple(k * a for a in r) for r in self.entries), self.rows, self.cols)

    def __rmul__(self, k):
        return self.scale(k)

    def __matmul__(self, other: "QMatrix") -> "QMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        cols = list(zip(*other.entries)) if other.rows else [()] * other.cols
        out = []
        for row in self.entries:
            nz = [(k, a) for k, a in enumerate(row) if a]
            line = []
            for col in cols:
                acc = ZERO
                for k, a in nz:
                    b = col[k]
                    if b:
                        acc = acc + a * b
                line.append(acc)
            out.append(tuple(line))
        return QMatrix._wrap(tuple(out), self.rows, other.cols)

    def transpose(self) -> "QMatrix":
        return QMatrix._wrap(tuple(zip(*self.entries)), self.cols, self.rows)

    @property
    def T(self):
        return self.transpose()

    def conj(self) -> "QMatrix":
        return QMatrix._wrap(tuple(tuple(a.conj() for a in r) for r in self.entries), self.rows, self.cols)

    def adjoint(self) -> "QMatrix":
        return QMatrix._wrap(tuple(tuple(a.conj() for a in col) for col in zip(*self.entries)), self.cols, self.rows)

    def is_zero(self) -> bool:
        return not any(a for r in self.entries for a in r)

    def is_identity(self) -> bool:
        return self.rows == self.cols and self == QMatrix.identity(self.rows)

    def is_unitary(self) -> bool:
        if self.rows != self.cols:
            return False
        adj = self.adjoint()
        return (self @ adj).is_identity() and (adj @ self).is_identity()

    def is_real(self) -> bool:
        return all(a.is_real() for r in self.entries for a in r)

    def commutes_with(self, other: "QMatrix") -> bool:
        return self @ other == other @ self

    def det(self) -> FieldScalar:
        if self.rows != self.cols:
            raise ValueError("determinant of a non-square matrix")
        m = [list(r) for r in self.entries]
        n = self.rows
        sign, acc = 1, ONE
        for c in range(n):
            p = next((r for r in range(c, n) if m[r][c]), None)
            if p is None:
                return ZERO
            if p != c:
                m[c], m[p] = m[p], m[c]
                sign = -sign
            piv = m[c][c]
            acc = acc * piv
            inv = piv.inverse()
            for r in range(c + 1, n):
                if m[r][c]:
                    f = m[r][c] * inv
                    m[r] = [x - f * y for x, y in zip(m[r], m[c])]
        return acc if sign == 1 else -acc

    def rref(self):
        """Reduced row echelon form and pivot columns."""
        m = [list(r) for r in self.entries]
        pivots = []
        r = 0
        for c in range(self.cols):
            p = next((k for k in range(r, self.rows) if m[k][c]), None)
            if p is None:
                continue
            m[r], m[p] = m[p], m[r]
            inv = m[r][c].inverse()
            m[r] = [x * inv for x in m[r]]
            for k in range(self.rows):
                if k != r and m[k][c]:
                    f = m[k][c]
                    m[k] = [x - f * y for x, y in zip(m[k], m[r])]
            pivots.append(c)
            r += 1
            if r == self.rows:
                break
        return QMatrix._wrap(tuple(map(tuple, m)), self.rows, self.cols), tuple(pivots)

    def rank(self) -> int:
        return len(self.rref()[1])

    def nullspace(self) -> list:
        """Basis of {x : M x = 0} as a list of column vectors (tuples)."""
        red, piv = self.rref()
        free = [c for c in range(self.cols) if c not in piv]
        basis = []
        for f in free:
            v = [ZERO] * self.cols
            v[f] = ONE
            for row, pc in enumerate(piv):
                v[pc] = -red.entries[row][f]
            basis.append(tuple(v))
        return basis

    def apply(self, vec: Sequence) -> tuple:
        vec = [fs(x) for x in vec]
        out = []
        for row in self.entries:
            acc = ZERO
            for a, b in zip(row, vec):
                if a and b:
                    acc = acc + a * b
            out.append(acc)
        return tuple(out)

    def to_numpy(self):
        import numpy as np
        return np.array([[a.to_complex() for a in r] for r in self.entries], dtype=complex)

    def _same_shape(self, other):
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")

    def __repr__(self):
        return "QMatrix([" + ", ".join("[" + ", ".join(str(a) for a in r) + "]" for r in self.entries) + "])"
