"""Positive cone of K0(B.) inside ker delta, and the 3x3 positivity lemma.

A nonnegative kernel vector x is written x = sum n_{i,j} [P_{i,j}] with integer
n, then the negative entries of n are removed with the three exchange moves:

  (i)   column j0 minus row i1       (sum_i P_{i,j0} = sum_j P_{i1,j})
  (ii)  row i0 minus column j1
  (iii) two columns minus two rows

Each move raises the offending n_{i0,j0} by one and lowers only positive entries.
An independent route searches the row and column shifts n + a_i - b_j directly
for a nonnegative solution.
"""
from __future__ import annotations

from itertools import combinations, combinations_with_replacement, permutations, product
from math import comb

import numpy as np

from .exact import IntMatrix, Lattice, kernel_basis, smith_normal_form
from .kernels import BACKEND, cone_kernel_points
from .ktheory import BASIS, DeltaData, load_delta_data
from .report import CheckResult

IDX = (1, 2, 3, 4)


def integer_coefficients(pc: IntMatrix, x):
    """Some integer n with pc @ n = x, as a dict {(i,j): n}, or None if x is not in the lattice."""
    snf = smith_normal_form(pc)
    lx = snf.left @ tuple(x)
    y = []
    for k in range(pc.cols):
        d = snf.diag[k] if k < len(snf.diag) else 0
        if d:
            if lx[k] % d:
                return None
            y.append(lx[k] // d)
        else:
            y.append(0)
    if any(lx[k] for k in range(snf.rank, len(lx))):
        return None
    n = snf.right @ tuple(y)
    return {p: n[k] for k, p in enumerate(BASIS.p_pairs)}


def negative_mass(n: dict) -> int:
    return sum(-v for v in n.values() if v < 0)


def _pick_move(n: dict, i0: int, j0: int):
    """Apply one exchange move at the negative entry (i0, j0), or return None."""
    rows = [i for i in IDX if i != i0]
    cols = [j for j in IDX if j != j0]
    pos = lambda i, j: n[(i, j)] > 0
    out = dict(n)
    for i1 in rows:
        if all(pos(i1, j) for j in cols):
            for i in IDX:
                if i != i1:
                    out[(i, j0)] += 1
            for j in cols:
                out[(i1, j)] -= 1
            return out, "i"
    for j1 in cols:
        if all(pos(i, j1) for i in rows):
            for j in IDX:
                if j != j1:
                    out[(i0, j)] += 1
            for i in rows:
                out[(i, j1)] -= 1
            return out, "ii"
    for (i1, i2), (j1, j2) in product(combinations(rows, 2), combinations(cols, 2)):
        if all(pos(i, j) for i in (i1, i2) for j in (j1, j2)):
            for i in IDX:
                for j in IDX:
                    if i not in (i1, i2) and j not in (j1, j2):
                        out[(i, j)] += 1
                    elif i in (i1, i2) and j in (j1, j2):
                        out[(i, j)] -= 1
            return out, "iii"
    return None


def combination(pc: IntMatrix, n: dict) -> tuple:
    return pc @ tuple(n[p] for p in BASIS.p_pairs)


def reduce_by_moves(pc: IntMatrix, x, n: dict, max_steps: int = 10_000):
    """Drive the negative mass of n to zero. Returns (n, moves used) or (None, moves) if stuck."""
    target = tuple(x)
    moves = []
    for _ in range(max_steps):
        mass = negative_mass(n)
        if mass == 0:
            return n, moves
        i0, j0 = next(p for p in BASIS.p_pairs if n[p] < 0)
        step = _pick_move(n, i0, j0)
        if step is None:
            return None, moves
        new, kind = step
        if combination(pc, new) != target or negative_mass(new) >= mass:
            raise AssertionError(f"exchange move {kind} at {(i0, j0)} broke an invariant")
        n = new
        moves.append(kind)
    return None, moves


def dfs_membership(pc: IntMatrix, x):
    """Plain bounded search for n >= 0 with pc @ n = x."""
    cols = [pc.column(c) for c in range(pc.cols)]

    def rec(rest, start):
        if not any(rest):
            return []
        for c in range(start, len(cols)):
            if all(a >= b for a, b in zip(rest, cols[c])):
                sub = rec(tuple(a - b for a, b in zip(rest, cols[c])), c)
                if sub is not None:
                    return [c] + sub
        return None

    picks = rec(tuple(x), 0)
    if picks is None:
        return None
    n = {p: 0 for p in BASIS.p_pairs}
    for c in picks:
        n[BASIS.p_pairs[c]] += 1
    return n


def exchange_lattice() -> Lattice:
    """Span of the moves n -> n + (row i indicator) - (column j indicator) in Z^16."""
    gens = []
    for i, j in product(IDX, IDX):
        gens.append(tuple((1 if a == i else 0) - (1 if b == j else 0) for a, b in BASIS.p_pairs))
    return Lattice.from_vectors(gens, 16)


def potential_certificate(n: dict):
    """Independent route: a nonnegative solution m_{i,j} = n_{i,j} + a_i - b_j with sum(a) = sum(b).

    Every integer solution of pc @ m = x has that form (the relations among the P-classes are
    the exchange moves). For fixed a the best choice is b_j = min_i (n_{i,j} + a_i), lowered
    until sum(b) = sum(a), so m exists iff some a has sum_j min_i (n_{i,j} + a_i) >= sum(a).
    The left side minus sum(a) is concave, piecewise linear and invariant under a -> a + c;
    a maximizer with a_1 = 0 sits at breakpoints a_i - a_k = n_{k,j} - n_{i,j} joined along a
    path of at most three edges, so |a_i| <= 3 (max n - min n) bounds the search.
    Returns m as a dict, or None.
    """
    N = np.array([[n[(i, j)] for j in IDX] for i in IDX], dtype=np.int64)
    K = 3 * int(N.max() - N.min())
    rng = np.arange(-K, K + 1, dtype=np.int64)
    a = np.stack(np.meshgrid(rng, rng, rng, indexing="ij"), axis=-1).reshape(-1, 3)
    a = np.hstack([np.zeros((len(a), 1), dtype=np.int64), a])
    b = (N[None, :, :] + a[:, :, None]).min(axis=1)
    slack = b.sum(axis=1) - a.sum(axis=1)
    k = int(np.argmax(slack))
    if slack[k] < 0:
        return None
    a, b = a[k], b[k].copy()
    b[0] -= slack[k]
    m = N + a[:, None] - b[None, :]
    return {(i, j): int(m[i - 1, j - 1]) for i in IDX for j in IDX}


def brute_force_kernel_points(delta: IntMatrix, bound: int, limit: int = 2_000_000):
    """Every x >= 0 with sum(x) <= bound and delta x = 0, by full enumeration (None if too many)."""
    ncols = delta.cols
    total = comb(ncols + bound, bound)
    if total > limit:
        return None, total
    pts = np.zeros((1, 0), dtype=np.int8)
    for _ in range(ncols):
        used = pts.sum(axis=1) if pts.shape[1] else np.zeros(len(pts), dtype=np.int64)
        blocks = [np.hstack([pts[used <= bound - v], np.full(((used <= bound - v).sum(), 1), v, np.int8)])
                  for v in range(bound + 1)]
        pts = np.vstack(blocks)
    d = np.array(delta.entries, dtype=np.int64)
    hit = ~(pts.astype(np.int64) @ d.T).any(axis=1)
    found = sorted(tuple(int(v) for v in row) for row in pts[hit])
    return found, total


def positive_cone_check(height_bound: int = 6, data: DeltaData | None = None, oracle: bool = True) -> CheckResult:
    data = load_delta_data() if data is None else data
    res = CheckResult("positive_cone_check")
    delta, pc = data.delta, data.p_classes
    # the potential route needs every relation among the P-classes to be an exchange move
    res.ok(Lattice(kernel_basis(pc)) == exchange_lattice(), "relations among P-classes exceed the exchange moves")
    points, visited = cone_kernel_points(delta.entries, height_bound)
    stats = {"moves": 0, "fallback": 0}
    for x in points:
        n = integer_coefficients(pc, x)
        if n is None:
            res.fail(f"kernel vector {x} is not in the P-class lattice")
            continue
        reduced, moves = reduce_by_moves(pc, x, n)
        stats["moves"] += len(moves)
        if reduced is None:
            stats["fallback"] += 1
            reduced = dfs_membership(pc, x)
        ok = reduced is not None and min(reduced.values()) >= 0 and combination(pc, reduced) == tuple(x)
        res.ok(ok, f"unexpressed positive kernel vector {x}")
        cert = potential_certificate(n)
        cert_ok = cert is not None and min(cert.values()) >= 0 and combination(pc, cert) == tuple(x)
        res.ok(cert_ok == ok, f"membership routes disagree at {x}")
    # converse: nonnegative combinations within the bound are nonnegative kernel vectors
    found = set(points)
    cols = [pc.column(c) for c in range(pc.cols)]
    for k in range(height_bound // 6 + 1):
        for combo in combinations_with_replacement(range(len(cols)), k):
            x = tuple(sum(cols[c][r] for c in combo) for r in range(pc.rows))
            res.ok(x in found and not any(delta @ x), f"combination {combo} missing from the cone search")
    if oracle:
        brute, total = brute_force_kernel_points(delta, height_bound)
        if brute is not None:
            res.ok(brute == sorted(points), "pruned search and full enumeration disagree")
        res.data["enumerated"] = total
    res.data.update(height_bound=height_bound, kernel_points=len(points), visited=visited,
                    backend=BACKEND, **stats)
    return res


def lemma_3x3_holds(pos) -> bool:
    """pos: 3x3 nested booleans. True unless the hypothesis holds and all three conclusions fail."""
    hyp = all(any(pos[w[j]][j] for j in range(3)) for w in permutations(range(3)))
    if not hyp:
        return True
    if any(all(pos[i]) for i in range(3)):
        return True
    if any(all(pos[i][j] for i in range(3)) for j in range(3)):
        return True
    return any(pos[i1][j1] and pos[i1][j2] and pos[i2][j1] and pos[i2][j2]
               for i1, i2 in combinations(range(3), 2) for j1, j2 in combinations(range(3), 2))


def lemma_3x3_oracle() -> CheckResult:
    res = CheckResult("lemma_3x3_oracle")
    hyp_count = 0
    for bits in range(512):
        pos = [[bool(bits >> (3 * i + j) & 1) for j in range(3)] for i in range(3)]
        if all(any(pos[w[j]][j] for j in range(3)) for w in permutations(range(3))):
            hyp_count += 1
        res.ok(lemma_3x3_holds(pos), f"counterexample pattern {bits:09b}")
    res.data["patterns_meeting_hypothesis"] = hyp_count
    return res
