"""The matrix model over RP^3: projections P_{i,j}, the action beta, Phi images,
commutants of the U's, and the 16x16 factorization of the block unitary.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import permutations, product

import numpy as np

from .exact import INV_SQRT2, ONE, ZERO, I, FieldScalar, QMatrix, fs
from .poly import A, MatFun, SpherePoly, f_poly
from .report import CheckResult
from .symmetry import IDX, PAIRS, PAULI, S4, U, eps, t_of, unit

P11 = MatFun.from_function(4, f_poly)


def _parse_f_display(text: str) -> MatFun:
    rows = []
    for line in text.strip().splitlines():
        row = []
        for tok in line.split():
            sign = -1 if tok.startswith("-") else 1
            i, j = int(tok.lstrip("-")[1]), int(tok.lstrip("-")[2])
            row.append(f_poly(i, j).scale(sign))
        rows.append(row)
    return MatFun(rows)


P_DISPLAY_TEXT = {
    (1, 1): """f11 f12 f13 f14
               f21 f22 f23 f24
               f31 f32 f33 f34
               f41 f42 f43 f44""",
    (1, 2): """f22 -f21 -f24 f23
               -f12 f11 f14 -f13
               -f42 f41 f44 -f43
               f32 -f31 -f34 f33""",
    (2, 1): """f22 -f21 f24 -f23
               -f12 f11 -f14 f13
               f42 -f41 f44 -f43
               -f32 f31 -f34 f33""",
    (1, 3): """f33 f34 -f31 -f32
               f43 f44 -f41 -f42
               -f13 -f14 f11 f12
               -f23 -f24 f21 f22""",
    (3, 1): """f33 -f34 -f31 f32
               -f43 f44 f41 -f42
               -f13 f14 f11 -f12
               f23 -f24 -f21 f22""",
    (1, 4): """f44 -f43 f42 -f41
               -f34 f33 -f32 f31
               f24 -f23 f22 -f21
               -f14 f13 -f12 f11""",
    (4, 1): """f44 f43 -f42 -f41
               f34 f33 -f32 -f31
               -f24 -f23 f22 f21
               -f14 -f13 f12 f11""",
}


def P_display() -> dict:
    return {k: _parse_f_display(v) for k, v in P_DISPLAY_TEXT.items()}


def conj_by(Um: QMatrix, F: MatFun) -> MatFun:
    """Ad U applied pointwise: U F U^*."""
    return MatFun.lift(Um) @ F @ MatFun.lift(Um.adjoint())


@lru_cache(maxsize=1)
def build_P() -> dict:
    """P_{i,j} = U_{i,j} P_{1,1} U_{i,j}^*."""
    return {p: conj_by(U[p], P11) for p in PAIRS}


def check_P_display(P=None) -> CheckResult:
    P = build_P() if P is None else P
    res = CheckResult("P_display")
    for p, shown in P_display().items():
        got = P[p]
        for r, s in product(range(4), range(4)):
            res.ok(got[r, s] == shown[r, s], f"P{p} entry ({r + 1},{s + 1}): built {got[r, s]}, displayed {shown[r, s]}")
    return res


def check_f_relations() -> CheckResult:
    res = CheckResult("f_relations")
    for i, j in PAIRS:
        f = f_poly(i, j)
        res.ok(f == f.conj() and f == f_poly(j, i), f"f{i}{j} not self-adjoint/symmetric")
    for i, j, k, l in product(IDX, IDX, IDX, IDX):
        res.ok(f_poly(i, j) * f_poly(k, l) == f_poly(i, k) * f_poly(j, l), f"f{i}{j} f{k}{l} != f{i}{k} f{j}{l}")
    total = sum((f_poly(i, i) for i in IDX), SpherePoly.const(0))
    res.ok(total == 1, f"sum f_ii = {total}")
    return res


def check_P_relations(P=None) -> CheckResult:
    P = build_P() if P is None else P
    res = CheckResult("P_relations")
    ident = MatFun.identity(4)
    for p in PAIRS:
        m = P[p]
        res.ok(m @ m == m, f"P{p}^2 != P{p}")
        res.ok(m.adjoint() == m, f"P{p}^* != P{p}")
        res.ok(all(x.descends_to_rp3() for row in m.entries for x in row), f"P{p} has odd-degree entries")
    for (i, j), (k, l) in product(PAIRS, PAIRS):
        lhs = conj_by(U[(i, j)], P[(k, l)])
        res.ok(lhs == P[(t_of(i, k), t_of(j, l))], f"U({i},{j}) P({k},{l}) U* != P({t_of(i, k)},{t_of(j, l)})")
    for i in IDX:
        row = sum((P[(i, j)] for j in IDX[1:]), P[(i, 1)])
        col = sum((P[(j, i)] for j in IDX[1:]), P[(1, i)])
        res.ok(row == ident, f"row {i} sum != 1")
        res.ok(col == ident, f"column {i} sum != 1")
    return res


def _bridge_sides(P, s, m):
    """Both sides of p12 - p21 + p34 - p43 = -p14 + p23 - p32 + p41 with indices moved by (s, m)."""
    p = lambda i, j: P[(s(i), m(j))]
    lhs = p(1, 2) - p(2, 1) + p(3, 4) - p(4, 3)
    rhs = -p(1, 4) + p(2, 3) - p(3, 2) + p(4, 1)
    return lhs, rhs


def check_rf_bridge_identity(P=None, all_symmetries: bool = True) -> CheckResult:
    P = build_P() if P is None else P
    res = CheckResult("rf_bridge_identity")
    ident = S4[0]
    lhs, rhs = _bridge_sides(P, ident, ident)
    res.ok((lhs - rhs).is_zero(), "identity fails as a polynomial matrix")
    pt = (Fraction(3, 5), Fraction(4, 5), 0, 0)
    res.ok((lhs - rhs).evaluate(pt).is_zero(), "identity fails at (3/5,4/5,0,0)")
    if all_symmetries:
        for s, m in product(S4, S4):
            lhs, rhs = _bridge_sides(P, s, m)
            res.ok((lhs - rhs).is_zero(), f"fails after index substitution by ({s},{m})")
    return res


def phi_E(i: int, j: int) -> QMatrix:
    """(1/4) sum_k eps(i,k) eps(k,j) U_{t_i(k), t_j(k)}."""
    acc = QMatrix.zeros(4, 4)
    for k in IDX:
        acc = acc + U[(t_of(i, k), t_of(j, k))].scale(eps(i, k) * eps(k, j))
    return acc.scale(Fraction(1, 4))


def phi_F(i: int, j: int) -> MatFun:
    """sum_k e_{k,i} P_{1,1} e_{j,k}."""
    acc = MatFun.zeros(4)
    for k in IDX:
        acc = acc + MatFun.lift(unit(k, i)) @ P11 @ MatFun.lift(unit(j, k))
    return acc


def check_phi_psi() -> CheckResult:
    res = CheckResult("phi_psi")
    ident = QMatrix.identity(4)
    for i, j in PAIRS:
        res.ok(phi_E(i, j) == unit(i, j), f"Phi(E{i}{j}) != e{i}{j}")
        res.ok(phi_F(i, j) == MatFun.identity(4).scale(f_poly(i, j)), f"Phi(F{i}{j}) != f{i}{j} 1")
    tot = QMatrix.zeros(4, 4)
    for i in IDX:
        tot = tot + phi_E(i, i)
    res.ok(tot == ident, "sum Phi(E_ii) != 1")
    return res


def beta(i: int, j: int, F: MatFun) -> MatFun:
    """beta_{i,j}(F) = Ad U_{i,j} o F o sigma_{i,j}, sigma_{i,j}: a -> U_{i,j} a."""
    return conj_by(U[(i, j)], F.subs_linear(U[(i, j)]))


def beta_U_scalar(i: int, j: int, k: int, l: int) -> int:
    return eps(i, k) * eps(j, l) * eps(k, i) * eps(l, j)


def check_beta_equivariance(P=None) -> CheckResult:
    P = build_P() if P is None else P
    res = CheckResult("beta_equivariance")
    for (i, j), (k, l) in product(PAIRS, PAIRS):
        res.ok(beta(i, j, P[(k, l)]) == P[(k, l)], f"beta({i},{j}) moves P({k},{l})")
        want = MatFun.lift(U[(k, l)]).scale(beta_U_scalar(i, j, k, l))
        res.ok(beta(i, j, MatFun.lift(U[(k, l)])) == want, f"beta({i},{j})(U({k},{l}))")
    return res


# commutants

def _pattern(text: str):
    return [line.split() for line in text.strip().splitlines()]


D_PAIR_DISPLAY = {
    (2, 2): "a b 0 0\nc d 0 0\n0 0 e f\n0 0 g h",
    (2, 3): "a b c d\ne f g h\n-h g f -e\nd -c -b a",
    (2, 4): "a b c d\ne f g h\nc d a b\ng h e f",
    (3, 2): "a b c d\ne f g h\nh g f e\nd c b a",
    (3, 3): "a 0 b 0\n0 c 0 d\ne 0 f 0\n0 g 0 h",
    (3, 4): "a b c d\nb a -d -c\ne f g h\n-f -e h g",
    (4, 2): "a b c d\ne f g h\nc -d a -b\n-g h -e f",
    (4, 3): "a b c d\nb a d c\ne f g h\nf e h g",
    (4, 4): "a 0 0 b\n0 c d 0\n0 e f 0\ng 0 0 h",
}

D_TRIPLE_DISPLAY = {
    (2, 3, 4): "a 0 0 0\n0 b 0 0\n0 0 c 0\n0 0 0 d",
    (4, 2, 3): "a b c d\nb a -d -c\nc -d a -b\nd -c -b a",
    (3, 4, 2): "a b c d\nb a d c\nc d a b\nd c b a",
    (2, 4, 3): "a b 0 0\nb a 0 0\n0 0 c d\n0 0 d c",
    (4, 3, 2): "a 0 b 0\n0 c 0 d\nb 0 a 0\n0 d 0 c",
    (3, 2, 4): "a 0 0 d\n0 b c 0\n0 c b 0\nd 0 0 a",
}

TRIPLES = tuple(permutations((2, 3, 4)))


def pattern_basis(text: str) -> list:
    """Basis of the span described by a letter pattern: one 0/+-1 matrix per letter."""
    pat = _pattern(text)
    letters = sorted({tok.lstrip("-") for row in pat for tok in row if tok != "0"})
    out = []
    for let in letters:
        grid = [[0] * 4 for _ in range(4)]
        for r, s in product(range(4), range(4)):
            tok = pat[r][s]
            if tok.lstrip("-") == let:
                grid[r][s] = -1 if tok.startswith("-") else 1
        out.append(QMatrix(grid))
    return out


def pattern_support(text: str) -> frozenset:
    pat = _pattern(text)
    return frozenset((r, s) for r in range(4) for s in range(4) if pat[r][s] != "0")


def _vec(M: QMatrix) -> tuple:
    return tuple(x for row in M.entries for x in row)


def _unvec(v, n=4) -> QMatrix:
    return QMatrix([v[r * n:(r + 1) * n] for r in range(n)])


def commutant(generators) -> list:
    """Exact basis of {X : G X G^* = X for all G} over Q(i, sqrt2), via G X - X G = 0."""
    n = generators[0].rows
    eqs = []
    for G in generators:
        for r, s in product(range(n), range(n)):
            row = [ZERO] * (n * n)
            for k in range(n):
                if G[r, k]:
                    row[k * n + s] = row[k * n + s] + G[r, k]
                if G[k, s]:
                    row[r * n + k] = row[r * n + k] - G[k, s]
            eqs.append(row)
    return [_unvec(v, n) for v in QMatrix(eqs).nullspace()]


def span_rank(mats) -> int:
    if not mats:
        return 0
    return QMatrix([_vec(m) for m in mats]).rank()


def same_span(xs, ys) -> bool:
    rx, ry = span_rank(xs), span_rank(ys)
    return rx == ry == span_rank(list(xs) + list(ys))


def support(mats) -> frozenset:
    return frozenset((r, s) for m in mats for r in range(m.rows) for s in range(m.cols) if m[r, s])


def is_commutative(mats) -> bool:
    return all(a @ b == b @ a for a in mats for b in mats)


def triple_generators(triple) -> list:
    i2, i3, i4 = triple
    return [U[(i2, 2)], U[(i3, 3)], U[(i4, 4)]]


def minimal_idempotents(basis, attempts: int = 8) -> list:
    """Minimal idempotents of a commutative split semisimple matrix algebra.

    A generic element X is diagonalized numerically only to guess its
    eigenvalues; the guesses are snapped to rationals and the Lagrange
    idempotents built from them are then verified exactly.
    """
    n = basis[0].rows
    for attempt in range(attempts):
        coeffs = [(k + 1) ** (attempt + 1) + 3 * k for k in range(len(basis))]
        X = QMatrix.zeros(n, n)
        for cf, b in zip(coeffs, basis):
            X = X + b.scale(cf)
        ev = np.linalg.eigvals(X.to_numpy())
        guesses = []
        for z in ev:
            q = Fraction(float(z.real)).limit_denominator(10_000)
            if abs(z.imag) > 1e-9 or abs(float(q) - z.real) > 1e-9:
                break
            if q not in guesses:
                guesses.append(q)
        else:
            if len(guesses) != len(basis):
                continue
            ident = QMatrix.identity(n)
            idem = []
            for lam in guesses:
                E = ident
                for mu in guesses:
                    if mu != lam:
                        E = (E @ (X - ident.scale(mu))).scale(1 / (lam - mu))
                idem.append(E)
            if _idempotents_ok(idem, basis):
                return idem
    raise ArithmeticError("no exact minimal idempotents found")


def _idempotents_ok(idem, basis) -> bool:
    n = basis[0].rows
    ident = QMatrix.identity(n)
    tot = QMatrix.zeros(n, n)
    for a, E in enumerate(idem):
        if E.is_zero() or E @ E != E:
            return False
        if not same_span(list(basis), list(basis) + [E]):
            return False
        for b, F in enumerate(idem):
            if a != b and not (E @ F).is_zero():
                return False
        if span_rank([E @ B for B in basis]) != 1:
            return False
        tot = tot + E
    return tot == ident


def check_commutants() -> CheckResult:
    res = CheckResult("commutants")
    dims = {}
    for p, text in D_PAIR_DISPLAY.items():
        basis = commutant([U[p]])
        dims[f"D{p[0]}{p[1]}"] = len(basis)
        res.ok(len(basis) == 8, f"dim D{p} = {len(basis)}")
        res.ok(same_span(basis, pattern_basis(text)), f"D{p} differs from its displayed form")
        res.ok(support(basis) == pattern_support(text), f"D{p} support pattern differs")
    for tr in TRIPLES:
        gens = triple_generators(tr)
        name = "D(" + "".join(map(str, tr)) + ")"
        basis = commutant(gens)
        dims[name] = len(basis)
        res.ok(len(basis) == 4, f"dim {name} = {len(basis)}")
        for pair in ((0, 1), (0, 2), (1, 2)):
            sub = commutant([gens[pair[0]], gens[pair[1]]])
            res.ok(same_span(basis, sub), f"{name} differs from the intersection of {pair}")
        res.ok(same_span(basis, pattern_basis(D_TRIPLE_DISPLAY[tr])), f"{name} differs from its displayed form")
        res.ok(is_commutative(basis), f"{name} not commutative")
        try:
            idem = minimal_idempotents(basis)
            res.ok(len(idem) == 4, f"{name}: {len(idem)} minimal idempotents")
        except ArithmeticError as exc:
            res.fail(f"{name}: {exc}")
    res.data["dimensions"] = dims
    return res


# the xi / iota lemma and the 16x16 factorization

def xi(M: QMatrix) -> QMatrix:
    """1x4 row (1/sqrt2)(m11, m12, m21, m22)."""
    return QMatrix([[M[0, 0], M[0, 1], M[1, 0], M[1, 1]]]).scale(INV_SQRT2)


def _iota_grid(m, literal: bool):
    a11, a12, a21, a22 = m[0][0], m[0][1], m[1][0], m[1][1]
    z = m[0][0] * 0
    lower12 = a21 if literal else a12
    return [[a11, a12, z, z], [a21, a22, z, z], [z, z, a11, lower12], [z, z, a21, a22]]


def _iota_prime_grid(m):
    a11, a12, a21, a22 = m[0][0], m[0][1], m[1][0], m[1][1]
    z = m[0][0] * 0
    return [[a11, z, a12, z], [z, a11, z, a12], [a21, z, a22, z], [z, a21, z, a22]]


def iota(M, reading: str = "corrected"):
    """Block embedding M -> M (+) M'. ``literal`` repeats m21 in the lower block's upper-right slot."""
    if reading not in ("literal", "corrected"):
        raise ValueError(reading)
    if isinstance(M, MatFun):
        return MatFun(_iota_grid(M.entries, reading == "literal"))
    return QMatrix(_iota_grid(M.entries, reading == "literal"))


def iota_prime(M):
    if isinstance(M, MatFun):
        return MatFun(_iota_prime_grid(M.entries))
    return QMatrix(_iota_prime_grid(M.entries))


def _units2():
    return [QMatrix.unit(2, r, s) for r in range(2) for s in range(2)]


def xi_iota_failures(reading: str) -> list:
    out = []
    for M, N in product(_units2(), _units2()):
        if xi(M) @ iota(N, reading) != xi(M @ N):
            out.append(("xi-iota", M, N))
    return out


def xi_iota_prime_failures() -> list:
    out = []
    for M, N in product(_units2(), _units2()):
        if iota_prime(M) @ xi(N).transpose() != xi(M @ N).transpose():
            out.append(("iota'-xi", M, N))
    return out


def select_iota_reading() -> str | None:
    ok = [r for r in ("literal", "corrected") if not xi_iota_failures(r)]
    return ok[0] if len(ok) == 1 else None


def check_xi_iota_lemma() -> CheckResult:
    res = CheckResult("xi_iota_lemma")
    per = {}
    for reading in ("literal", "corrected"):
        fails = xi_iota_failures(reading)
        per[reading] = len(fails)
    primef = xi_iota_prime_failures()
    res.ok(not primef, f"iota' identity fails on {len(primef)} unit pairs")
    passing = [r for r, n in per.items() if n == 0]
    res.ok(len(passing) == 1, f"readings passing xi(M) iota(N) = xi(MN): {passing}")
    res.ok(iota(QMatrix.identity(2), passing[0] if passing else "corrected").is_identity(), "iota not unital")
    res.data["failures_by_reading"] = per
    res.data["iota_reading"] = passing[0] if len(passing) == 1 else None
    return res


W = QMatrix([[ONE, -I, ZERO, ZERO], [ZERO, ZERO, ONE, -I], [ZERO, ZERO, -ONE, -I], [ONE, I, ZERO, ZERO]]).scale(INV_SQRT2)


def w_matfun() -> MatFun:
    """w(a) = a1 c1 + a2 c2 + a3 c3 + a4 c4."""
    out = MatFun.zeros(2)
    for k in IDX:
        out = out + MatFun.lift(PAULI[k]).scale(A[k - 1])
    return out


def big_V() -> QMatrix:
    """Block matrix (xi(c_j^*)^T xi(c_i))_{i,j}."""
    return QMatrix.from_blocks([[xi(PAULI[j].adjoint()).transpose() @ xi(PAULI[i]) for j in IDX] for i in IDX])


def big_W(reading: str = "corrected") -> QMatrix:
    return QMatrix.block_diag([iota(PAULI[j].adjoint(), reading) @ W for j in IDX])


def big_W_prime() -> QMatrix:
    return QMatrix.block_diag([W.transpose() @ iota_prime(PAULI[i]) for i in IDX])


def iota4_w(reading: str = "corrected") -> MatFun:
    return MatFun.block_diag([iota(w_matfun(), reading)] * 4)


def iota_prime4_w() -> MatFun:
    return MatFun.block_diag([iota_prime(w_matfun())] * 4)


def U_bar(P=None) -> MatFun:
    """The 16x16 block matrix whose (i,j) block is P_{i,j}."""
    P = build_P() if P is None else P
    return MatFun.from_blocks([[P[(i, j)] for j in IDX] for i in IDX])


def factorization_rhs(reading: str = "corrected") -> MatFun:
    return (MatFun.lift(big_W_prime()) @ iota_prime4_w() @ MatFun.lift(big_V())
            @ iota4_w(reading) @ MatFun.lift(big_W(reading)))


def check_U_factorization(reading: str | None = None, P=None) -> CheckResult:
    res = CheckResult("U_factorization")
    if reading is None:
        reading = select_iota_reading()
        if reading is None:
            res.fail("no unique iota reading satisfies the xi lemma")
            return res
    res.data["iota_reading"] = reading
    for name, M in (("V", big_V()), ("W", big_W(reading)), ("W'", big_W_prime()), ("W4", W)):
        res.ok(M.is_unitary(), f"{name} not unitary")
    ub = U_bar(P)
    res.ok((ub @ ub.adjoint()).is_identity(), "U_bar U_bar^* != 1")
    res.ok((ub.adjoint() @ ub).is_identity(), "U_bar^* U_bar != 1")
    rhs = factorization_rhs(reading)
    diff = rhs - ub
    bad = [(r + 1, s + 1) for r in range(16) for s in range(16) if diff[r, s]]
    res.ok(not bad, f"factorization differs at {len(bad)} entries, first {bad[:3]}")
    return res
