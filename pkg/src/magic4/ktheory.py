"""Integer K-theory bookkeeping: the exponential map, the P-classes, and the map eta-tilde.

All groups are free abelian with the fixed bases below, except the target of
eta-tilde, which is Z^4 + Z/2. That one is lifted to Z^5, with the relation
2 e5 adjoined to the codomain lattice.
"""
from __future__ import annotations

from dataclasses import dataclass

from .data import load_table, reorder_columns, reorder_rows
from .exact import (
    IntMatrix,
    Lattice,
    cokernel_invariants,
    kernel_basis,
    smith_normal_form,
)
from .report import CheckResult
from .symmetry import OMEGA, PAIRS, S4, U, Perm, t

ORDER2 = tuple((i, j) for i in (2, 3, 4) for j in (2, 3, 4))


@dataclass(frozen=True)
class KBasis:
    """Enumeration order shared by every integer matrix in this module."""

    q: tuple = tuple(Perm.parse(s) for s in (
        "1234", "2143", "3412", "4321", "1342", "2431", "3124", "4213", "1423", "2314", "3241", "4132",
        "1243", "2134", "3421", "4312", "1432", "2341", "3214", "4123", "1324", "2413", "3142", "4231"))
    v_pairs: tuple = ((2, 2), (3, 3), (4, 4), (4, 3), (2, 4), (3, 2), (3, 4), (4, 2), (2, 3))
    w_pairs: tuple = ((2, 3), (3, 4), (4, 2), (3, 2), (4, 3), (2, 4))
    s: tuple = ("s1", "s2", "s3", "s4", "s5")
    p_pairs: tuple = PAIRS

    @property
    def q_labels(self) -> list:
        return [p.label() for p in self.q]

    @property
    def v_labels(self) -> list:
        return [f"v{i}{j}_{kind}" for i, j in self.v_pairs for kind in ("cap", "cup")]

    @property
    def w_labels(self) -> list:
        return [f"w{i}{j}" for i, j in self.w_pairs]

    @property
    def p_labels(self) -> list:
        return [f"P{i}{j}" for i, j in self.p_pairs]

    def q_index(self, p: Perm) -> int:
        return self.q.index(p)

    def v_index(self, i: int, j: int, kind: str) -> int:
        return 2 * self.v_pairs.index((i, j)) + (0 if kind == "cap" else 1)


BASIS = KBasis()


@dataclass(frozen=True)
class DeltaData:
    delta: IntMatrix       # 18 x 24, v <- q
    p_classes: IntMatrix   # 24 x 16, q <- P
    delta_dd: IntMatrix    # 6 x 18, w <- v
    eta_tilde: IntMatrix   # 5 x 18, s <- v, last row mod 2


def load_delta_data(directory=None, basis: KBasis = BASIS) -> DeltaData:
    """Read the four integer tables and bring them into the KBasis order."""
    header, labels, body = load_table("exp_map.csv", directory)
    delta = reorder_rows(labels, body, basis.q_labels)
    delta = reorder_columns(header, delta, basis.v_labels).T

    header, labels, body = load_table("p_classes.csv", directory)
    p_classes = reorder_columns(header, reorder_rows(labels, body, basis.q_labels), basis.p_labels)

    header, labels, body = load_table("index_map.csv", directory)
    delta_dd = reorder_columns(header, reorder_rows(labels, body, basis.w_labels), basis.v_labels)

    header, labels, body = load_table("eta.csv", directory)
    eta = reorder_columns(header, reorder_rows(labels, body, list(basis.s)), basis.v_labels)
    return DeltaData(delta, p_classes, delta_dd, eta)


def _even_odd(i: int, j: int):
    """The even and the odd permutation fixing 1 and sending j to i."""
    cands = [p for p in S4 if p(1) == 1 and p(j) == i]
    even = next(p for p in cands if p.is_even())
    odd = next(p for p in cands if not p.is_even())
    return even, odd


def generate_delta(basis: KBasis = BASIS) -> IntMatrix:
    """The exponential map rebuilt from the generation rule on q_sigma."""
    m = [[0] * len(basis.q) for _ in range(18)]
    w2 = OMEGA * OMEGA
    for i, j in ORDER2:
        even, odd = _even_odd(i, j)
        for base, sign in ((even, 1), (odd, -1)):
            cap = basis.v_index(i, j, "cap")
            cup = basis.v_index(i, j, "cup")
            for g in (t(1), t(j)):
                m[cap][basis.q_index(base * g)] += sign
            for g in (t(OMEGA(j)), t(w2(j))):
                m[cup][basis.q_index(base * g)] += sign
    return IntMatrix(m)


def generate_p_classes(basis: KBasis = BASIS) -> IntMatrix:
    """[P_{i,j}] = sum of q_sigma over sigma(j) = i."""
    return IntMatrix([[1 if p(j) == i else 0 for i, j in basis.p_pairs] for p in basis.q])


def _compare(res: CheckResult, got: IntMatrix, want: IntMatrix, rows, cols, what: str) -> None:
    if got.shape != want.shape:
        res.fail(f"{what}: shape {got.shape} vs {want.shape}")
        return
    for r in range(got.rows):
        for c in range(got.cols):
            res.ok(got[r, c] == want[r, c], f"{what}[{rows[r]}, {cols[c]}]: expected {want[r, c]}, got {got[r, c]}")


def check_delta_table(data: DeltaData | None = None) -> CheckResult:
    data = load_delta_data() if data is None else data
    res = CheckResult("delta_table")
    gen = generate_delta()
    _compare(res, gen, data.delta, BASIS.v_labels, BASIS.q_labels, "delta")
    for c in range(gen.cols):
        res.ok(sum(1 for x in gen.column(c) if x) == 3, f"column {BASIS.q_labels[c]} has not 3 nonzeros")
    return res


def check_p_class_table(data: DeltaData | None = None) -> CheckResult:
    data = load_delta_data() if data is None else data
    res = CheckResult("p_class_table")
    gen = generate_p_classes()
    _compare(res, gen, data.p_classes, BASIS.q_labels, BASIS.p_labels, "P-classes")
    for c in range(gen.cols):
        res.ok(sum(gen.column(c)) == 6, f"column {BASIS.p_labels[c]} does not sum to 6")
    col = {p: gen.column(k) for k, p in enumerate(BASIS.p_pairs)}
    total = tuple(1 for _ in BASIS.q)
    for k in (1, 2, 3, 4):
        rows = tuple(map(sum, zip(*(col[(i, k)] for i in (1, 2, 3, 4)))))
        cols = tuple(map(sum, zip(*(col[(k, j)] for j in (1, 2, 3, 4)))))
        res.ok(rows == total and cols == total, f"row/column {k} of P-classes does not partition S4")
    return res


def certify_kb(data: DeltaData | None = None) -> CheckResult:
    data = load_delta_data() if data is None else data
    res = CheckResult("certify_kb")
    delta, pc = data.delta, data.p_classes
    ker = kernel_basis(delta)
    res.ok(ker.cols == 10, f"rank ker delta = {ker.cols}")
    free, torsion = cokernel_invariants(delta)
    res.ok((free, torsion) == (4, [2]), f"coker delta = Z^{free} + {torsion}")
    diag = [d for d in smith_normal_form(delta).diag if d]
    res.ok(sorted(diag) == [1] * 13 + [2], f"invariant factors {diag}")
    for c in range(pc.cols):
        res.ok(not any(delta @ pc.column(c)), f"delta [P{BASIS.p_pairs[c]}] != 0")
    res.ok(Lattice(pc) == Lattice(ker), "P-class lattice differs from ker delta")
    res.data.update(kernel_rank=ker.cols, cokernel=[free, torsion], invariant_factors=diag)
    return res


S_MAP = {  # index-map generators to s1..s4
    (2, 3): (1, 0, 0, 0), (3, 4): (0, 1, 0, 0), (4, 2): (-1, -1, 0, 0),
    (3, 2): (0, 0, 1, 0), (4, 3): (0, 0, 0, 1), (2, 4): (0, 0, -1, -1),
}


def eta_relation_matrix(eta: IntMatrix) -> IntMatrix:
    """[eta | 2 e5]: eta lifted to Z^5 with the torsion relation adjoined."""
    rows = [list(r) + [2 if k == 4 else 0] for k, r in enumerate(eta.entries)]
    return IntMatrix(rows)


def eta_kernel(eta: IntMatrix) -> Lattice:
    """Kernel of Z^18 -> Z^4 + Z/2, as the projection of ker [eta | 2 e5] to the first 18 coordinates."""
    ker = kernel_basis(eta_relation_matrix(eta))
    return Lattice.from_vectors([c[: eta.cols] for c in ker.columns()], eta.cols)


def certify_eta(data: DeltaData | None = None) -> CheckResult:
    data = load_delta_data() if data is None else data
    res = CheckResult("certify_eta")
    delta, eta = data.delta, data.eta_tilde
    comp = eta @ delta
    for c in range(comp.cols):
        col = comp.column(c)
        res.ok(not any(col[:4]) and col[4] % 2 == 0, f"eta(delta q{BASIS.q_labels[c]}) = {col}")
    free, torsion = cokernel_invariants(eta_relation_matrix(eta))
    res.ok((free, torsion) == (0, []), f"eta not surjective: cokernel Z^{free} + {torsion}")
    ker = eta_kernel(eta)
    im = Lattice(delta)
    res.ok(ker.rank == im.rank == 14, f"rank ker eta = {ker.rank}, rank im delta = {im.rank}")
    res.ok(ker == im, "ker eta differs from im delta")
    smat = IntMatrix.from_columns([S_MAP[p] for p in BASIS.w_pairs], 4)
    top = IntMatrix(eta.entries[:4])
    res.ok(smat @ data.delta_dd == top, "eta rows 1-4 disagree with the index map")

    def eta_of(vec):
        out = eta @ tuple(vec)
        return tuple(out[:4]) + (out[4] % 2,)
    e = [0] * 18
    e[BASIS.v_index(2, 3, "cap")] = 1
    res.ok(eta_of(e) == (1, 0, 0, 0, 0), f"eta(w_cap 23) = {eta_of(e)}")
    e = [0] * 18
    for k in (2, 3, 4):
        e[BASIS.v_index(k, k, "cup")] = 1
    res.ok(eta_of(e) == (0, 0, 0, 0, 1), f"eta(w_cup 22 + 33 + 44) = {eta_of(e)}")
    res.data.update(kernel_rank=ker.rank, image_rank=im.rank)
    return res


def orientation_check() -> CheckResult:
    res = CheckResult("orientation_check")
    for p in PAIRS:
        for s in (1, -1):
            d = U[p].scale(s).det()
            res.ok(d == 1, f"det({'+' if s > 0 else '-'}U{p}) = {d}")
    return res
