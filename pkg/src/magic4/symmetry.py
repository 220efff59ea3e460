"""S4, the Klein four-group, the sign cocycle, Pauli matrices and the unitaries U_{i,j}.

Permutations are written by their images (s(1) s(2) s(3) s(4)) and compose as
functions: (s * t)(j) = s(t(j)).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations, product

from .data import load_table
from .exact import ONE, ZERO, I, QMatrix
from .report import CheckResult

IDX = (1, 2, 3, 4)


@dataclass(frozen=True, order=True)
class Perm:
    images: tuple

    def __post_init__(self):
        imgs = tuple(int(x) for x in self.images)
        if sorted(imgs) != list(range(1, len(imgs) + 1)):
            raise ValueError(f"not a permutation: {self.images}")
        object.__setattr__(self, "images", imgs)

    @classmethod
    def parse(cls, text: str) -> "Perm":
        return cls(tuple(int(c) for c in text.strip("() ")))

    @classmethod
    def identity(cls, n: int = 4) -> "Perm":
        return cls(tuple(range(1, n + 1)))

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, j: int) -> int:
        return self.images[j - 1]

    def __mul__(self, other: "Perm") -> "Perm":
        return Perm(tuple(self(other(j)) for j in range(1, self.n + 1)))

    def inverse(self) -> "Perm":
        inv = [0] * self.n
        for j, v in enumerate(self.images, 1):
            inv[v - 1] = j
        return Perm(tuple(inv))

    def sign(self) -> int:
        seen, s = set(), 1
        for start in range(1, self.n + 1):
            if start in seen:
                continue
            length, j = 0, start
            while j not in seen:
                seen.add(j)
                j = self(j)
                length += 1
            if length % 2 == 0:
                s = -s
        return s

    def is_even(self) -> bool:
        return self.sign() == 1

    def label(self) -> str:
        return "".join(map(str, self.images))

    def __str__(self):
        return f"({self.label()})"


def all_perms(n: int = 4) -> list:
    """All permutations of {1..n} in lexicographic order of their image words."""
    return [Perm(p) for p in permutations(range(1, n + 1))]


S4 = tuple(all_perms(4))
OMEGA = Perm((1, 3, 4, 2))
KLEIN = {1: Perm((1, 2, 3, 4)), 2: Perm((2, 1, 4, 3)), 3: Perm((3, 4, 1, 2)), 4: Perm((4, 3, 2, 1))}


def t(i: int) -> Perm:
    return KLEIN[i]


def t_of(i: int, j: int) -> int:
    """t_i(j)."""
    return KLEIN[i](j)


def klein_index(p: Perm) -> int:
    for i, q in KLEIN.items():
        if q == p:
            return i
    raise KeyError(f"{p} is not in the Klein group")


def epsilon_rule(i: int, j: int) -> int:
    """1 if i = 1 or j = 1 or omega(i) = j, else -1."""
    return 1 if (i == 1 or j == 1 or OMEGA(i) == j) else -1


_EPS = tuple(tuple(epsilon_rule(i, j) for j in IDX) for i in IDX)


def eps(i: int, j: int) -> int:
    return _EPS[i - 1][j - 1]


@dataclass(frozen=True)
class KleinCocycle:
    epsilon: tuple
    klein: tuple

    @classmethod
    def from_rule(cls) -> "KleinCocycle":
        return cls(_EPS, tuple(KLEIN[i] for i in IDX))

    def eps(self, i: int, j: int) -> int:
        return self.epsilon[i - 1][j - 1]

    def t(self, i: int, j: int) -> int:
        return self.klein[i - 1](j)

    def mismatches(self, table) -> list:
        return [(i, j, table[i - 1][j - 1], self.eps(i, j))
                for i in IDX for j in IDX if table[i - 1][j - 1] != self.eps(i, j)]


def load_sign_table(name: str, directory=None) -> tuple:
    header, labels, body = load_table(name, directory)
    if header != ["1", "2", "3", "4"] or labels != ["1", "2", "3", "4"]:
        from .data import FixtureError
        raise FixtureError(f"{name}: expected 4x4 table indexed 1..4")
    return body.entries


# Pauli matrices

PAULI = {
    1: QMatrix([[1, 0], [0, 1]]),
    2: QMatrix([[I, ZERO], [ZERO, -I]]),
    3: QMatrix([[0, 1], [-1, 0]]),
    4: QMatrix([[ZERO, I], [I, ZERO]]),
}


def c(i: int) -> QMatrix:
    return PAULI[i]


# the unitaries U_{i,j}

U_DISPLAY = {
    (1, 1): [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]],
    (1, 2): [[0, 1, 0, 0], [-1, 0, 0, 0], [0, 0, 0, -1], [0, 0, 1, 0]],
    (1, 3): [[0, 0, 1, 0], [0, 0, 0, 1], [-1, 0, 0, 0], [0, -1, 0, 0]],
    (1, 4): [[0, 0, 0, 1], [0, 0, -1, 0], [0, 1, 0, 0], [-1, 0, 0, 0]],
    (2, 1): [[0, -1, 0, 0], [1, 0, 0, 0], [0, 0, 0, -1], [0, 0, 1, 0]],
    (2, 2): [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, -1, 0], [0, 0, 0, -1]],
    (2, 3): [[0, 0, 0, -1], [0, 0, 1, 0], [0, 1, 0, 0], [-1, 0, 0, 0]],
    (2, 4): [[0, 0, 1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, 1, 0, 0]],
    (3, 1): [[0, 0, -1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, -1, 0, 0]],
    (3, 2): [[0, 0, 0, 1], [0, 0, 1, 0], [0, 1, 0, 0], [1, 0, 0, 0]],
    (3, 3): [[1, 0, 0, 0], [0, -1, 0, 0], [0, 0, 1, 0], [0, 0, 0, -1]],
    (3, 4): [[0, -1, 0, 0], [-1, 0, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]],
    (4, 1): [[0, 0, 0, -1], [0, 0, -1, 0], [0, 1, 0, 0], [1, 0, 0, 0]],
    (4, 2): [[0, 0, -1, 0], [0, 0, 0, 1], [-1, 0, 0, 0], [0, 1, 0, 0]],
    (4, 3): [[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]],
    (4, 4): [[1, 0, 0, 0], [0, -1, 0, 0], [0, 0, -1, 0], [0, 0, 0, 1]],
}
PAIRS = tuple(product(IDX, IDX))


def unit(i: int, j: int, n: int = 4) -> QMatrix:
    """Matrix unit e_{i,j} with 1-based indices."""
    return QMatrix.unit(n, i - 1, j - 1)


def U_formula(i: int, j: int) -> QMatrix:
    """sum_k eps(i,k) eps(k,j) e_{t_i(k), t_j(k)}."""
    grid = [[0] * 4 for _ in range(4)]
    for k in IDX:
        grid[t_of(i, k) - 1][t_of(j, k) - 1] += eps(i, k) * eps(k, j)
    return QMatrix(grid)


def build_U() -> dict:
    return {p: U_formula(*p) for p in PAIRS}


U = build_U()


def check_epsilon_table(table=None, directory=None) -> CheckResult:
    """The defining rule agrees with the tabulated eps values."""
    res = CheckResult("epsilon_table")
    if table is None:
        table = load_sign_table("epsilon.csv", directory)
    for i, j in PAIRS:
        res.ok(table[i - 1][j - 1] == eps(i, j), f"eps({i},{j}): table {table[i - 1][j - 1]}, rule {eps(i, j)}")
    return res


def check_pauli_relation() -> CheckResult:
    res = CheckResult("pauli_relation")
    for i, j in PAIRS:
        lhs = PAULI[i] @ PAULI[j]
        rhs = PAULI[t_of(i, j)].scale(eps(i, j))
        res.ok(lhs == rhs, f"c{i} c{j} != {eps(i, j)} c{t_of(i, j)}")
    return res


def check_cocycle_identity() -> CheckResult:
    res = CheckResult("cocycle_identity")
    for i, j, k in product(IDX, IDX, IDX):
        lhs = eps(i, j) * eps(t_of(i, j), k)
        rhs = eps(i, t_of(j, k)) * eps(j, k)
        res.ok(lhs == rhs, f"(i,j,k)=({i},{j},{k}): {lhs} != {rhs}")
    return res


def symmetrized_epsilon() -> tuple:
    return tuple(tuple(eps(i, j) * eps(j, i) for j in IDX) for i in IDX)


def check_epsilon_symmetrization(table=None, directory=None) -> CheckResult:
    res = CheckResult("epsilon_symmetrization")
    if table is None:
        table = load_sign_table("epsilon_sym.csv", directory)
    sym = symmetrized_epsilon()
    for i, j in PAIRS:
        res.ok(sym[i - 1][j - 1] == table[i - 1][j - 1],
               f"({i},{j}): computed {sym[i - 1][j - 1]}, table {table[i - 1][j - 1]}")
    return res


def check_U_display() -> CheckResult:
    res = CheckResult("U_display")
    for p in PAIRS:
        built = U[p]
        shown = QMatrix(U_DISPLAY[p])
        if built == shown:
            res.ok(True)
            continue
        bad = next((r, s) for r in range(4) for s in range(4) if built[r, s] != shown[r, s])
        res.ok(False, f"U{p}: entry ({bad[0] + 1},{bad[1] + 1}) built {built[bad]} displayed {shown[bad]}")
    for p in PAIRS:
        m = U[p]
        res.ok(m.is_unitary() and m.is_real() and m.adjoint() == m.transpose(), f"U{p} not a real unitary")
        res.ok(all(x in (-1, 0, 1) for row in m.entries for x in row), f"U{p} has entries outside {{-1,0,1}}")
    res.ok(U[(1, 1)].is_identity(), "U(1,1) is not the identity")
    return res


def check_U_twist() -> CheckResult:
    res = CheckResult("U_twist")
    for (i, j), (k, l) in product(PAIRS, PAIRS):
        lhs = U[(i, j)] @ U[(k, l)]
        rhs = U[(t_of(i, k), t_of(j, l))].scale(eps(i, k) * eps(j, l))
        res.ok(lhs == rhs, f"U({i},{j}) U({k},{l})")
    return res


def check_U_squares() -> CheckResult:
    """U_{i,j}^2 = +1 for i, j >= 2 or (1,1); -1 when exactly one index is 1."""
    res = CheckResult("U_squares")
    ident = QMatrix.identity(4)
    for i, j in PAIRS:
        sq = U[(i, j)] @ U[(i, j)]
        want = ident if (i == 1) == (j == 1) else -ident
        res.ok(sq == want, f"U({i},{j})^2")
    return res


def check_intertwine() -> CheckResult:
    """With b = U_{i,j} a for symbolic a: sum b_k c_k = c_i (sum a_k c_k) c_j^*."""
    from .poly import A, MatFun

    res = CheckResult("intertwine")
    lin = [MatFun.from_qmatrix(PAULI[k]) for k in IDX]

    def combo(coeffs):
        out = MatFun.zeros(2)
        for x, ck in zip(coeffs, lin):
            out = out + ck.scale(x)
        return out

    wa = combo(A)
    for i, j in PAIRS:
        m = U[(i, j)]
        b = [sum((A[l] * m[k, l] for l in range(4) if m[k, l]), A[0] * 0) for k in range(4)]
        lhs = combo(b)
        rhs = MatFun.from_qmatrix(PAULI[i]) @ wa @ MatFun.from_qmatrix(PAULI[j].adjoint())
        res.ok(lhs == rhs, f"(i,j)=({i},{j})")
    return res


def scalar_inverse_value(i: int, j: int, l: int) -> Fraction:
    """(1/4) sum_k eps(i,k) eps(k,j) eps(t_i(k), t_k(l)) eps(t_k(l), t_j(k))."""
    tot = sum(eps(i, k) * eps(k, j) * eps(t_of(i, k), t_of(k, l)) * eps(t_of(k, l), t_of(j, k)) for k in IDX)
    return Fraction(tot, 4)


def scalar_inverse_identity() -> CheckResult:
    res = CheckResult("scalar_inverse_identity")
    for i, j, l in product(IDX, IDX, IDX):
        v = scalar_inverse_value(i, j, l)
        res.ok(v == (1 if l == 1 else 0), f"(i,j,l)=({i},{j},{l}) -> {v}")
    return res


def check_klein_group() -> CheckResult:
    """Closure, involutions, t_i t_j = t_{t_i(j)} and t_i(j) = t_j(i)."""
    res = CheckResult("klein_group")
    members = set(KLEIN.values())
    e = Perm.identity()
    for i, j in PAIRS:
        prod_ = KLEIN[i] * KLEIN[j]
        res.ok(prod_ in members, f"t{i} t{j} leaves K")
        res.ok(prod_ == KLEIN[t_of(i, j)], f"t{i} t{j} != t_(t{i}({j}))")
        res.ok(t_of(i, j) == t_of(j, i), f"t{i}({j}) != t{j}({i})")
    for i in IDX:
        res.ok(KLEIN[i] * KLEIN[i] == e, f"t{i}^2 != 1")
    return res


def check_sign_homomorphism() -> CheckResult:
    res = CheckResult("sign_homomorphism")
    for s, u in product(S4, S4):
        res.ok((s * u).sign() == s.sign() * u.sign(), f"{s} {u}")
    return res
