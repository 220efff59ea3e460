from fractions import Fraction
from itertools import product

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from magic4 import rp3
from magic4.exact import QMatrix
from magic4.poly import A, ONE_POLY, MatFun, SpherePoly, f_poly
from magic4.symmetry import IDX, PAIRS, U, eps, t_of

coords = st.fractions(min_value=-3, max_value=3, max_denominator=5)


@st.composite
def sphere_points(draw):
    """Rational points of S^3 by inverse stereographic projection."""
    x = [draw(coords) for _ in range(3)]
    n = sum(v * v for v in x)
    return tuple(2 * v / (n + 1) for v in x) + ((n - 1) / (n + 1),)


small_polys = st.lists(
    st.tuples(st.tuples(*[st.integers(0, 3)] * 4), st.integers(-3, 3)), max_size=5,
).map(lambda terms: SpherePoly({e: c for e, c in terms}))


def _np(M: QMatrix) -> np.ndarray:
    return np.array([[complex(x) for x in row] for row in M.entries])


def test_sphere_relation():
    total = sum((a * a for a in A), SpherePoly.const(0))
    assert total == 1
    assert A[3] * A[3] == 1 - A[0] * A[0] - A[1] * A[1] - A[2] * A[2]


@given(small_polys, small_polys)
def test_normal_form_is_canonical(p, q):
    assert (p + q) - q == p
    norm = sum((a * a for a in A), SpherePoly.const(0))
    assert norm * p == p
    assert all(e[3] <= 1 for e in (p * q).terms)


@given(small_polys, small_polys, sphere_points())
def test_evaluation_is_a_ring_homomorphism(p, q, pt):
    assert (p * q).evaluate(pt) == p.evaluate(pt) * q.evaluate(pt)
    assert (p + q).evaluate(pt) == p.evaluate(pt) + q.evaluate(pt)


@settings(max_examples=15)
@given(sphere_points(), st.sampled_from(PAIRS), st.sampled_from(PAIRS))
def test_matfun_evaluation_is_multiplicative(pt, p, q):
    P = rp3.build_P()
    F, G = P[p] + MatFun.lift(U[q]), P[q]
    assert (F @ G).evaluate(pt) == F.evaluate(pt) @ G.evaluate(pt)


def test_f_examples():
    assert f_poly(1, 2) == f_poly(2, 1)
    assert f_poly(1, 1) + f_poly(2, 2) + f_poly(3, 3) + f_poly(4, 4) == 1
    assert (f_poly(1, 2) * f_poly(3, 4) - f_poly(1, 3) * f_poly(2, 4)).is_zero()
    assert rp3.check_f_relations().passed


def test_P_display_examples(P):
    assert P[(1, 1)][0, 0] == f_poly(1, 1)
    assert P[(1, 2)][0, 0] == f_poly(2, 2)
    assert P[(4, 1)][0, 1] == f_poly(4, 3)
    assert rp3.check_P_display(P).passed


def test_P_relations(P):
    res = rp3.check_P_relations(P)
    assert res.passed, res.witnesses
    assert (P[(1, 1)] @ P[(1, 1)] - P[(1, 1)]).is_zero()
    assert sum((P[(1, j)] for j in IDX[1:]), P[(1, 1)]).is_identity()
    for k, l in PAIRS:
        assert rp3.conj_by(U[(1, 1)], P[(k, l)]) == P[(k, l)]


def test_parity_of_entries(P):
    for m in P.values():
        assert all(x.descends_to_rp3() for row in m.entries for x in row)
    w = rp3.w_matfun()
    assert all(x.is_odd() for row in w.entries for x in row if x)


@given(sphere_points())
def test_P_is_a_rank_one_projection_numerically(pt):
    P = rp3.build_P()
    a = np.array([float(x) for x in pt])
    for p in PAIRS:
        m = _np(P[p].evaluate(pt)).real
        u = _np(U[p]).real @ a
        assert np.allclose(m, np.outer(u, u))


def test_rf_bridge(P):
    res = rp3.check_rf_bridge_identity(P)
    assert res.passed and res.checked == 2 + 24 * 24


def test_phi_examples():
    assert rp3.phi_E(1, 1) == (U[(1, 1)] + U[(2, 2)] + U[(3, 3)] + U[(4, 4)]).scale(Fraction(1, 4))
    assert rp3.phi_E(1, 1) == QMatrix.unit(4, 0, 0)
    assert rp3.phi_F(1, 1) == MatFun.identity(4).scale(f_poly(1, 1))
    assert rp3.check_phi_psi().passed


def test_beta(P):
    F = P[(2, 3)] + MatFun.lift(U[(3, 4)])
    assert rp3.beta(1, 1, F) == F
    assert rp3.beta(2, 2, P[(1, 1)]) == P[(1, 1)]
    assert rp3.beta_U_scalar(2, 2, 3, 3) == eps(2, 3) * eps(3, 2) * eps(2, 3) * eps(3, 2) == 1
    assert rp3.check_beta_equivariance(P).passed


def test_beta_is_an_action(P):
    # beta_{i,j} o beta_{k,l} = beta_{t_i(k), t_j(l)} on every generator, and each beta is an involution
    for (i, j), (k, l) in product(PAIRS, PAIRS):
        for gen in (P[(1, 1)], P[(2, 3)]):
            assert rp3.beta(i, j, rp3.beta(k, l, gen)) == rp3.beta(t_of(i, k), t_of(j, l), gen)


def test_commutant_examples():
    ident = QMatrix.identity(4)
    assert len(rp3.commutant([ident])) == 16
    d22 = rp3.commutant([U[(2, 2)]])
    assert len(d22) == 8
    assert rp3.support(d22) == rp3.pattern_support(rp3.D_PAIR_DISPLAY[(2, 2)])
    d234 = rp3.commutant([U[(2, 2)], U[(3, 3)]])
    assert len(d234) == 4 and all(m == QMatrix.diag([m[k, k] for k in range(4)]) for m in d234)
    assert rp3.is_commutative(d234)
    assert rp3.check_commutants().passed


def test_xi_iota_reading():
    assert rp3.xi(QMatrix.identity(2)) @ rp3.iota(QMatrix.identity(2)) == rp3.xi(QMatrix.identity(2))
    e11, e12 = QMatrix.unit(2, 0, 0), QMatrix.unit(2, 0, 1)
    assert rp3.xi(e11) @ rp3.iota(e12) == rp3.xi(e12)
    assert rp3.xi_iota_failures("literal")
    assert not rp3.xi_iota_failures("corrected")
    res = rp3.check_xi_iota_lemma()
    assert res.passed and res.data["iota_reading"] == "corrected"


def test_factorization(P):
    res = rp3.check_U_factorization(P=P)
    assert res.passed, res.witnesses
    assert res.data["iota_reading"] == "corrected"


def test_literal_reading_breaks_factorization(P):
    # negative control: the rejected reading of iota must not satisfy the identity
    assert not rp3.check_U_factorization(reading="literal", P=P).passed


def test_factorization_numerically_at_random_points():
    rng = np.random.default_rng(3)
    rhs = rp3.factorization_rhs()
    ub = rp3.U_bar()
    for _ in range(3):
        x = rng.integers(-9, 10, size=3)
        n = int(x @ x)
        pt = tuple(Fraction(2 * int(v), n + 1) for v in x) + (Fraction(n - 1, n + 1),)
        assert np.allclose(_np(rhs.evaluate(pt)), _np(ub.evaluate(pt)))
        m = _np(ub.evaluate(pt))
        assert np.allclose(m @ m.conj().T, np.eye(16))


def test_dump_is_readable():
    text = rp3.w_matfun().dump()
    assert "a1" in text and len(text.splitlines()) >= 2
