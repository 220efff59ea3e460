"""Polynomial functions on S^3 and matrices of them.

A ``SpherePoly`` is a polynomial in a1..a4 over Q(i, sqrt2) reduced modulo
a1^2 + a2^2 + a3^2 + a4^2 = 1. The normal form eliminates a4^2, so every
stored monomial has a4-exponent at most 1; two functions on S^3 agree iff
their normal forms are identical.
"""
from __future__ import annotations

from functools import lru_cache
from typing import Callable, Iterable, Mapping, Sequence

from .exact import ONE, ZERO, FieldScalar, QMatrix, fs

NVARS = 4
Exp = tuple  # (e1, e2, e3, e4)

_UNIT = (0, 0, 0, 0)


def _add_exp(e, f):
    return (e[0] + f[0], e[1] + f[1], e[2] + f[2], e[3] + f[3])


@lru_cache(maxsize=None)
def _sphere_power(q: int) -> tuple:
    """(1 - a1^2 - a2^2 - a3^2)^q as a tuple of (exponent, int coefficient)."""
    terms = {_UNIT: 1}
    base = {_UNIT: 1, (2, 0, 0, 0): -1, (0, 2, 0, 0): -1, (0, 0, 2, 0): -1}
    for _ in range(q):
        nxt = {}
        for e, c in terms.items():
            for f, d in base.items():
                g = _add_exp(e, f)
                nxt[g] = nxt.get(g, 0) + c * d
        terms = {e: c for e, c in nxt.items() if c}
    return tuple(sorted(terms.items()))


def _accumulate(out: dict, e: Exp, c: FieldScalar) -> None:
    if e[3] >= 2:
        q, r = divmod(e[3], 2)
        head = (e[0], e[1], e[2], r)
        for f, k in _sphere_power(q):
            g = _add_exp(head, f)
            v = out.get(g)
            v = c * k if v is None else v + c * k
            if v:
                out[g] = v
            else:
                out.pop(g, None)
        return
    v = out.get(e)
    v = c if v is None else v + c
    if v:
        out[e] = v
    else:
        out.pop(e, None)


class SpherePoly:
    __slots__ = ("terms", "_key")

    def __init__(self, terms: Mapping[Exp, object] | None = None):
        out: dict = {}
        if terms:
            for e, c in terms.items():
                c = fs(c)
                if c:
                    _accumulate(out, tuple(e), c)
        object.__setattr__(self, "terms", out)
        object.__setattr__(self, "_key", None)

    def __setattr__(self, name, value):
        raise AttributeError("SpherePoly is immutable")

    @classmethod
    def _normal(cls, terms: dict) -> "SpherePoly":
        obj = object.__new__(cls)
        object.__setattr__(obj, "terms", terms)
        object.__setattr__(obj, "_key", None)
        return obj

    @classmethod
    def const(cls, c) -> "SpherePoly":
        c = fs(c)
        return cls._normal({_UNIT: c} if c else {})

    @classmethod
    def var(cls, k: int) -> "SpherePoly":
        """The coordinate function a_k, k in 1..4."""
        e = [0, 0, 0, 0]
        e[k - 1] = 1
        return cls._normal({tuple(e): ONE})

    @classmethod
    def coerce(cls, x) -> "SpherePoly":
        return x if isinstance(x, SpherePoly) else cls.const(x)

    def key(self):
        if self._key is None:
            object.__setattr__(self, "_key", tuple(sorted(self.terms.items(), key=lambda t: t[0])))
        return self._key

    def __eq__(self, other):
        if not isinstance(other, SpherePoly):
            try:
                other = SpherePoly.const(other)
            except TypeError:
                return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(self.key())

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __add__(self, other):
        other = SpherePoly.coerce(other)
        if not other.terms:
            return self
        if not self.terms:
            return other
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e)
            v = c if v is None else v + c
            if v:
                out[e] = v
            else:
                del out[e]
        return SpherePoly._normal(out)

    __radd__ = __add__

    def __neg__(self):
        return SpherePoly._normal({e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-SpherePoly.coerce(other))

    def __rsub__(self, other):
        return SpherePoly.coerce(other) - self

    def scale(self, k) -> "SpherePoly":
        k = fs(k)
        if not k:
            return SpherePoly._normal({})
        return SpherePoly._normal({e: c * k for e, c in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, SpherePoly):
            try:
                return self.scale(other)
            except TypeError:
                return NotImplemented
        if not self.terms or not other.terms:
            return SpherePoly._normal({})
        out: dict = {}
        for e, c in self.terms.items():
            for f, d in other.terms.items():
                _accumulate(out, _add_exp(e, f), c * d)
        return SpherePoly._normal(out)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, n: int):
        out = SpherePoly.const(1)
        for _ in range(n):
            out = out * self
        return out

    def conj(self) -> "SpherePoly":
        """Coefficient conjugation; the variables are real and stay fixed."""
        return SpherePoly._normal({e: c.conj() for e, c in self.terms.items()})

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def descends_to_rp3(self) -> bool:
        """True iff every monomial has even total degree (invariant under a -> -a)."""
        return all(sum(e) % 2 == 0 for e in self.terms)

    def is_odd(self) -> bool:
        return all(sum(e) % 2 == 1 for e in self.terms)

    def subs_linear(self, M: QMatrix) -> "SpherePoly":
        """Pullback along a -> M a, i.e. a_k -> sum_l M[k, l] a_l."""
        forms = [SpherePoly._normal({tuple(int(t == l) for t in range(NVARS)): M[k, l]
                                     for l in range(NVARS) if M[k, l]}) for k in range(NVARS)]
        powers: dict = {}

        def pw(k, n):
            if (k, n) not in powers:
                powers[(k, n)] = SpherePoly.const(1) if n == 0 else pw(k, n - 1) * forms[k]
            return powers[(k, n)]

        out = SpherePoly._normal({})
        for e, c in self.terms.items():
            term = SpherePoly.const(c)
            for k in range(NVARS):
                if e[k]:
                    term = term * pw(k, e[k])
            out = out + term
        return out

    def evaluate(self, point: Sequence) -> FieldScalar:
        """Exact value at a point; meaningful on S^3 (the normal form used the sphere relation)."""
        pt = [fs(x) for x in point]
        acc = ZERO
        for e, c in self.terms.items():
            v = c
            for k in range(NVARS):
                if e[k]:
                    v = v * pt[k] ** e[k]
            acc = acc + v
        return acc

    def derivative(self, k: int) -> dict:
        """Partial derivative in a_k of the stored representative, as a raw term dict (not reduced)."""
        out = {}
        for e, c in self.terms.items():
            n = e[k - 1]
            if n:
                f = list(e)
                f[k - 1] -= 1
                out[tuple(f)] = c * n
        return out

    def __repr__(self):
        return f"SpherePoly({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in sorted(self.terms.items(), key=lambda t: (-sum(t[0]), tuple(-x for x in t[0]))):
            mono = "*".join(f"a{k + 1}" + (f"^{n}" if n > 1 else "") for k, n in enumerate(e) if n)
            cs = str(c)
            if not mono:
                parts.append(cs if c.is_rational() else f"({cs})")
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append((cs if c.is_rational() else f"({cs})") + "*" + mono)
        return " + ".join(parts).replace("+ -", "- ")


ZERO_POLY = SpherePoly.const(0)
ONE_POLY = SpherePoly.const(1)
A = tuple(SpherePoly.var(k) for k in range(1, 5))


def f_poly(i: int, j: int) -> SpherePoly:
    """The coordinate product a_i a_j (1-based)."""
    return A[i - 1] * A[j - 1]


class MatFun:
    """Matrix of SpherePoly values."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries: Iterable[Iterable]):
        grid = tuple(tuple(SpherePoly.coerce(x) for x in row) for row in entries)
        object.__setattr__(self, "entries", grid)
        object.__setattr__(self, "rows", len(grid))
        object.__setattr__(self, "cols", len(grid[0]) if grid else 0)

    def __setattr__(self, name, value):
        raise AttributeError("MatFun is immutable")

    @classmethod
    def _wrap(cls, grid):
        obj = object.__new__(cls)
        object.__setattr__(obj, "entries", grid)
        object.__setattr__(obj, "rows", len(grid))
        object.__setattr__(obj, "cols", len(grid[0]) if grid else 0)
        return obj

    @classmethod
    def from_qmatrix(cls, M: QMatrix) -> "MatFun":
        return cls._wrap(tuple(tuple(SpherePoly.const(x) for x in row) for row in M.entries))

    @classmethod
    def from_function(cls, n: int, fn: Callable[[int, int], SpherePoly], m: int | None = None) -> "MatFun":
        """Build from fn(i, j) with 1-based indices."""
        m = n if m is None else m
        return cls._wrap(tuple(tuple(SpherePoly.coerce(fn(i, j)) for j in range(1, m + 1)) for i in range(1, n + 1)))

    @classmethod
    def identity(cls, n: int) -> "MatFun":
        return cls.from_qmatrix(QMatrix.identity(n))

    @classmethod
    def zeros(cls, n: int, m: int | None = None) -> "MatFun":
        m = n if m is None else m
        return cls._wrap(tuple((ZERO_POLY,) * m for _ in range(n)))

    @classmethod
    def from_blocks(cls, blocks: Sequence[Sequence["MatFun"]]) -> "MatFun":
        out = []
        for brow in blocks:
            for i in range(brow[0].rows):
                out.append(tuple(x for b in brow for x in b.entries[i]))
        return cls._wrap(tuple(out))

    @classmethod
    def block_diag(cls, blocks: Sequence["MatFun"]) -> "MatFun":
        n = len(blocks)
        grid = [[blocks[i] if i == j else MatFun.zeros(blocks[i].rows, blocks[j].cols) for j in range(n)]
                for i in range(n)]
        return cls.from_blocks(grid)

    @staticmethod
    def lift(x) -> "MatFun":
        if isinstance(x, MatFun):
            return x
        if isinstance(x, QMatrix):
            return MatFun.from_qmatrix(x)
        raise TypeError(f"cannot lift {type(x).__name__} to MatFun")

    def __getitem__(self, idx):
        i, j = idx
        return self.entries[i][j]

    @property
    def shape(self):
        return (self.rows, self.cols)

    def __eq__(self, other):
        if isinstance(other, QMatrix):
            other = MatFun.from_qmatrix(other)
        if not isinstance(other, MatFun):
            return NotImplemented
        return self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __add__(self, other):
        other = MatFun.lift(other)
        return MatFun._wrap(tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.entries, other.entries)))

    def __sub__(self, other):
        other = MatFun.lift(other)
        return MatFun._wrap(tuple(tuple(a - b for a, b in zip(r, s)) for r, s in zip(self.entries, other.entries)))

    def __neg__(self):
        return MatFun._wrap(tuple(tuple(-a for a in r) for r in self.entries))

    def scale(self, k) -> "MatFun":
        if isinstance(k, SpherePoly):
            return MatFun._wrap(tuple(tuple(k * a for a in r) for r in self.entries))
        k = fs(k)
        return MatFun._wrap(tuple(tuple(a.scale(k) for a in r) for r in self.entries))

    def __rmul__(self, k):
        return self.scale(k)

    def __matmul__(self, other):
        other = MatFun.lift(other)
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        cols = list(zip(*other.entries))
        out = []
        for row in self.entries:
            nz = [(k, a) for k, a in enumerate(row) if a.terms]
            line = []
            for col in cols:
                acc: dict = {}
                for k, a in nz:
                    b = col[k]
                    if b.terms:
                        for e, c in a.terms.items():
                            for f, d in b.terms.items():
                                _accumulate(acc, _add_exp(e, f), c * d)
                line.append(SpherePoly._normal(acc))
            out.append(tuple(line))
        return MatFun._wrap(tuple(out))

    def __rmatmul__(self, other):
        return MatFun.lift(other) @ self

    def transpose(self) -> "MatFun":
        return MatFun._wrap(tuple(zip(*self.entries)))

    def adjoint(self) -> "MatFun":
        return MatFun._wrap(tuple(tuple(a.conj() for a in col) for col in zip(*self.entries)))

    def is_zero(self) -> bool:
        return not any(a.terms for r in self.entries for a in r)

    def is_identity(self) -> bool:
        return self.rows == self.cols and self == MatFun.identity(self.rows)

    def is_constant(self) -> bool:
        return all(set(a.terms) <= {_UNIT} for r in self.entries for a in r)

    def subs_linear(self, M: QMatrix) -> "MatFun":
        return MatFun._wrap(tuple(tuple(a.subs_linear(M) for a in r) for r in self.entries))

    def evaluate(self, point: Sequence) -> QMatrix:
        pt = [fs(x) for x in point]
        return QMatrix([[a.evaluate(pt) for a in r] for r in self.entries])

    def map(self, fn: Callable[[SpherePoly], SpherePoly]) -> "MatFun":
        return MatFun._wrap(tuple(tuple(fn(a) for a in r) for r in self.entries))

    def monomials(self) -> list:
        """Sorted list of all exponents appearing in any entry."""
        return sorted({e for r in self.entries for a in r for e in a.terms})

    def dump(self) -> str:
        """Human-readable text form: one line per entry, `i j: polynomial` (1-based)."""
        lines = [f"MatFun {self.rows}x{self.cols}"]
        for i, r in enumerate(self.entries, 1):
            for j, a in enumerate(r, 1):
                if a.terms:
                    lines.append(f"{i} {j}: {a}")
        return "\n".join(lines) + "\n"

    def __repr__(self):
        return self.dump()
