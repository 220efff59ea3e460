from dataclasses import replace
from itertools import product

import numpy as np
import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy.matrices.normalforms import invariant_factors

from magic4 import _pykernels, cone, kernels, ktheory
from magic4.exact import IntMatrix, Lattice, kernel_basis
from magic4.symmetry import S4, Perm

B = ktheory.BASIS


def _mutate(m: IntMatrix, r: int, c: int, value: int) -> IntMatrix:
    rows = [list(x) for x in m.entries]
    rows[r][c] = value
    return IntMatrix(rows)


def test_tables_match_generation(delta_data):
    d = ktheory.check_delta_table(delta_data)
    p = ktheory.check_p_class_table(delta_data)
    assert d.passed and p.passed, d.witnesses + p.witnesses
    assert ktheory.generate_delta() == delta_data.delta
    assert ktheory.generate_p_classes() == delta_data.p_classes


def test_delta_columns():
    delta = ktheory.generate_delta()
    col = delta.column(B.q_index(Perm.parse("1234")))
    caps = {B.v_index(k, k, "cap") for k in (2, 3, 4)}
    assert all(v == (1 if r in caps else 0) for r, v in enumerate(col))
    col = delta.column(B.q_index(Perm.parse("1243")))
    neg = {B.v_index(2, 2, "cap"), B.v_index(4, 3, "cap"), B.v_index(3, 4, "cap")}
    assert all(v == (-1 if r in neg else 0) for r, v in enumerate(col))
    for c in delta.columns():
        assert sum(1 for v in c if v) == 3


def test_p_class_columns():
    pc = ktheory.generate_p_classes()
    for c, (i, j) in enumerate(B.p_pairs):
        col = pc.column(c)
        assert sum(col) == 6
        assert all(v == (1 if B.q[r](j) == i else 0) for r, v in enumerate(col))
    rows_sum = np.array(pc.entries)[:, [B.p_pairs.index((i, 1)) for i in (1, 2, 3, 4)]].sum(axis=1)
    cols_sum = np.array(pc.entries)[:, [B.p_pairs.index((1, j)) for j in (1, 2, 3, 4)]].sum(axis=1)
    assert (rows_sum == 1).all() and (cols_sum == 1).all()


def test_generation_is_order_independent():
    # rebuild in a shuffled basis and map back: same matrix
    rng = np.random.default_rng(0)
    q = list(B.q)
    perm = rng.permutation(24)
    shuffled = replace(B, q=tuple(q[k] for k in perm))
    d2 = np.array(ktheory.generate_delta(shuffled).entries)
    back = np.empty_like(d2)
    back[:, perm] = d2
    assert (back == np.array(ktheory.generate_delta().entries)).all()


def test_certify_kb(delta_data):
    res = ktheory.certify_kb(delta_data)
    assert res.passed, res.witnesses
    assert res.data["kernel_rank"] == 10 and res.data["cokernel"] == [4, [2]]


def test_invariant_factors_against_sympy(delta_data):
    factors = invariant_factors(sympy.Matrix(delta_data.delta.entries), domain=sympy.ZZ)
    nonzero = [int(f) for f in factors if f != 0]
    assert sorted(nonzero) == [1] * 13 + [2]


def test_delta_kills_P_classes(delta_data):
    assert (delta_data.delta @ delta_data.p_classes).is_zero()


def test_certify_eta(delta_data):
    res = ktheory.certify_eta(delta_data)
    assert res.passed, res.witnesses
    assert res.data["kernel_rank"] == res.data["image_rank"] == 14


def test_orientation():
    from magic4.symmetry import U
    assert U[(1, 1)].det() == 1 and U[(2, 3)].det() == 1
    res = ktheory.orientation_check()
    assert res.passed and res.checked == 32


def test_mutated_delta_table_is_caught(delta_data):
    bad = replace(delta_data, delta=_mutate(delta_data.delta, 0, 0, 0))
    assert not ktheory.check_delta_table(bad).passed
    assert not ktheory.certify_kb(bad).passed


def test_mutated_eta_is_caught(delta_data):
    e = delta_data.eta_tilde
    bad = replace(delta_data, eta_tilde=_mutate(e, 0, 0, e[0, 0] + 1))
    assert not ktheory.certify_eta(bad).passed


# positive cone

def test_positive_cone(delta_data):
    res = cone.positive_cone_check(6, delta_data)
    assert res.passed, res.witnesses
    assert res.data["kernel_points"] == 17


def test_cone_examples(delta_data):
    pc = delta_data.p_classes
    x = pc.column(B.p_pairs.index((2, 3)))
    n = cone.dfs_membership(pc, x)
    assert n[(2, 3)] == 1 and sum(n.values()) == 1
    ones = (1,) * 24
    n = cone.integer_coefficients(pc, ones)
    reduced, _ = cone.reduce_by_moves(pc, ones, n)
    assert min(reduced.values()) >= 0 and cone.combination(pc, reduced) == ones


@settings(max_examples=20)
@given(st.lists(st.integers(0, 2), min_size=16, max_size=16), st.integers(0, 2 ** 32 - 1))
def test_moves_recover_nonnegative_combinations(coeffs, seed):
    # start from a scrambled integer solution and let the moves clean it up
    pc = ktheory.generate_p_classes()
    x = pc @ tuple(coeffs)
    n = cone.integer_coefficients(pc, x)
    rng = np.random.default_rng(seed)
    a, b = rng.integers(-3, 4, 4), rng.integers(-3, 4, 4)
    b[3] = a.sum() - b[:3].sum()
    n = {(i, j): v + int(a[i - 1]) - int(b[j - 1]) for (i, j), v in n.items()}
    assert cone.combination(pc, n) == x
    cert = cone.potential_certificate(n)
    assert cert is not None and min(cert.values()) >= 0 and cone.combination(pc, cert) == x
    reduced, _ = cone.reduce_by_moves(pc, x, n)
    assert reduced is not None and min(reduced.values()) >= 0
    assert cone.combination(pc, reduced) == x


def test_exchange_lattice_is_all_relations(delta_data):
    assert Lattice(kernel_basis(delta_data.p_classes)) == cone.exchange_lattice()


def test_potential_route_rejects_infeasible():
    # x = -[P_11] has a negative coordinate, so no nonnegative combination exists
    n = {(i, j): 0 for i in range(1, 5) for j in range(1, 5)}
    n[(1, 1)] = -1
    assert cone.potential_certificate(n) is None
    n[(1, 1)] = 1
    n[(2, 2)] = -1
    assert cone.potential_certificate(n) is None
    n[(2, 2)] = 0
    assert cone.potential_certificate(n) == n


def test_both_routes_on_a_scrambled_solution():
    # P_22 + P_33 written with row 2 added and column 1 removed: negative entries, same vector
    pc = ktheory.generate_p_classes()
    n = {(i, j): 0 for i in range(1, 5) for j in range(1, 5)}
    for p, v in (((2, 2), 2), ((2, 3), 1), ((2, 4), 1), ((3, 3), 1), ((1, 1), -1), ((3, 1), -1), ((4, 1), -1)):
        n[p] = v
    x = pc @ tuple(1 if p in ((2, 2), (3, 3)) else 0 for p in B.p_pairs)
    assert cone.combination(pc, n) == x
    cert = cone.potential_certificate(n)
    moved, kinds = cone.reduce_by_moves(pc, x, n)
    assert kinds
    assert min(cert.values()) >= 0 and min(moved.values()) >= 0
    assert cone.combination(pc, cert) == cone.combination(pc, moved) == x


def test_backends_agree_on_cone_search(delta_data):
    want = _pykernels.cone_kernel_points(delta_data.delta.entries, 6)
    got = kernels.cone_kernel_points(delta_data.delta.entries, 6)
    assert sorted(want[0]) == sorted(got[0]) and want[1] == got[1]


def test_brute_force_agrees_at_small_bound(delta_data):
    brute, total = cone.brute_force_kernel_points(delta_data.delta, 3)
    pts, _ = kernels.cone_kernel_points(delta_data.delta.entries, 3)
    assert brute == sorted(pts) == [(0,) * 24]


def test_lemma_3x3():
    res = cone.lemma_3x3_oracle()
    assert res.passed and res.checked == 512
    assert cone.lemma_3x3_holds([[True] * 3] * 3)
    one = [[False] * 3 for _ in range(3)]
    one[1][1] = True
    assert cone.lemma_3x3_holds(one)


def test_lemma_3x3_against_permanent():
    # Frobenius-Koenig: the zero pattern has zero permanent iff some positive block has s + t = 4
    for bits in range(512):
        pos = [[bool(bits >> (3 * i + j) & 1) for j in range(3)] for i in range(3)]
        zeros = sympy.Matrix(3, 3, lambda i, j: 0 if pos[i][j] else 1)
        hyp = zeros.per() == 0
        rect = any(all(pos[i][j] for i in rows for j in cols)
                   for rows in [r for k in (1, 2, 3) for r in _subsets(k)]
                   for cols in _subsets(4 - len(rows)))
        assert hyp == rect
        assert cone.lemma_3x3_holds(pos)


def _subsets(k):
    from itertools import combinations
    return list(combinations(range(3), k)) if 1 <= k <= 3 else []
