"""Pure-Python/numpy versions of the hot kernels. Same signatures as the compiled module."""
from __future__ import annotations

import numpy as np


def _reach_tables(cols):
    """For each start position k, the largest positive / negative entry per row among columns >= k."""
    n = len(cols)
    rows = len(cols[0]) if cols else 0
    pos = [[0] * rows for _ in range(n + 1)]
    neg = [[0] * rows for _ in range(n + 1)]
    l1 = [0] * (n + 1)
    for k in range(n - 1, -1, -1):
        for r in range(rows):
            v = cols[k][r]
            pos[k][r] = max(pos[k + 1][r], v if v > 0 else 0)
            neg[k][r] = max(neg[k + 1][r], -v if v < 0 else 0)
        l1[k] = max(l1[k + 1], sum(abs(v) for v in cols[k]))
    return pos, neg, l1


def cone_kernel_points(matrix, bound: int):
    """All x >= 0 with sum(x) <= bound and matrix @ x = 0, in lexicographic order.

    ``matrix`` is a sequence of integer rows. Returns (points, visited nodes).
    """
    rows = [list(map(int, r)) for r in matrix]
    nrows, ncols = len(rows), len(rows[0])
    cols = [[rows[r][c] for r in range(nrows)] for c in range(ncols)]
    pos, neg, l1 = _reach_tables(cols)
    out = []
    x = [0] * ncols
    res = [0] * nrows
    visited = 0

    def feasible(k, budget):
        tot = 0
        for r in range(nrows):
            v = res[r]
            if v > 0:
                if v > budget * neg[k][r]:
                    return False
                tot += v
            elif v < 0:
                if -v > budget * pos[k][r]:
                    return False
                tot -= v
        return tot <= budget * l1[k]

    def rec(k, budget):
        nonlocal visited
        visited += 1
        if k == ncols:
            if not any(res):
                out.append(tuple(x))
            return
        col = cols[k]
        for val in range(budget + 1):
            if val:
                for r in range(nrows):
                    res[r] += col[r]
            x[k] = val
            if feasible(k + 1, budget - val):
                rec(k + 1, budget - val)
        if budget:
            for r in range(nrows):
                res[r] -= budget * col[r]
        x[k] = 0

    rec(0, int(bound))
    return out, visited


def cartan_density(fr, fi, dr, di):
    """3 (tr(A1 A2 A3) - tr(A1 A3 A2)) with A_k = F^* dF_k, for a batch.

    F = fr + i fi has shape (N, n, n); dF = dr + i di has shape (3, N, n, n).
    """
    F = fr + 1j * fi
    dF = dr + 1j * di
    Fh = np.conj(np.swapaxes(F, -1, -2))
    a1 = Fh @ dF[0]
    a2 = Fh @ dF[1]
    a3 = Fh @ dF[2]
    comm = a2 @ a3 - a3 @ a2
    tr = np.einsum("nij,nji->n", a1, comm)
    return 3.0 * tr.real
