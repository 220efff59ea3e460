import numpy as np
import pytest

from magic4 import _pykernels, degree, kernels, rp3
from magic4.exact import QMatrix
from magic4.poly import A, MatFun
from magic4.symmetry import U

SAMPLES = 20_000


def test_chart_is_positively_oriented():
    assert degree.chart_orientation() == 1
    rng = np.random.default_rng(0)
    x = rng.random((100, 3)) * degree.BOX
    a, jac = degree.chart(x)
    assert np.allclose(np.linalg.norm(a, axis=1), 1)
    # Jacobian against central differences
    h = 1e-6
    for k in range(3):
        dx = np.zeros(3)
        dx[k] = h
        fd = (degree.chart(x + dx)[0] - degree.chart(x - dx)[0]) / (2 * h)
        assert np.allclose(jac[:, :, k], fd, atol=1e-7)


def test_monomial_partials_against_finite_differences():
    F = rp3.iota_prime4_w() @ rp3.iota4_w()
    T = degree.MonomialTensor.from_matfun(F)
    rng = np.random.default_rng(1)
    pts = rng.standard_normal((20, 4))
    h = 1e-6
    for k in range(4):
        dk = np.zeros(4)
        dk[k] = h
        fd = (T.evaluate(pts + dk) - T.evaluate(pts - dk)) / (2 * h)
        assert np.allclose(T.partial(k).evaluate(pts), fd, atol=1e-6)


def test_backends_agree_on_density():
    rng = np.random.default_rng(2)
    for n in (2, 4, 16):
        fr, fi = rng.standard_normal((2, 50, n, n))
        dr, di = rng.standard_normal((2, 3, 50, n, n))
        assert np.allclose(kernels.cartan_density(fr, fi, dr, di), _pykernels.cartan_density(fr, fi, dr, di))


def test_density_is_zero_for_constant_maps():
    F = MatFun.lift(U[(2, 3)])
    assert degree.degree_of_unitary(F, SAMPLES).estimate == 0.0


def test_generator_has_degree_one():
    est = degree.degree_of_unitary(rp3.w_matfun(), SAMPLES, seed=1)
    assert est.snapped == 1 and abs(est.estimate - 1) < 0.05


def test_adjoint_and_products_are_additive():
    w = rp3.w_matfun()
    assert degree.degree_of_unitary(w.adjoint(), SAMPLES).snapped == -1
    assert degree.degree_of_unitary(w @ w, SAMPLES).snapped == 2
    assert degree.degree_of_unitary(MatFun.block_diag([w, w]), SAMPLES).snapped == 2
    assert degree.degree_of_unitary(MatFun.block_diag([w, w.adjoint()]), SAMPLES).snapped == 0


def test_orientation_reversing_substitution_flips_degree():
    w = rp3.w_matfun()
    flip = QMatrix.diag([1, 1, 1, -1])
    assert degree.degree_of_unitary(w.subs_linear(flip), SAMPLES).snapped == -1
    # the signed unitaries preserve orientation, so the degree is unchanged
    assert degree.degree_of_unitary(w.subs_linear(U[(2, 3)]), SAMPLES).snapped == 1


def test_non_unitary_input_is_refused():
    with pytest.raises(ValueError):
        degree.degree_of_unitary(MatFun.identity(2).scale(A[0]), 100)


def test_snap_refuses_wide_intervals():
    assert degree.snap(1.02, 0.01)[0] == 1
    assert degree.snap(1.5, 0.2)[0] is None
    assert degree.snap(0.5, 0.3)[0] is None


def test_estimates_are_seed_deterministic():
    w = rp3.w_matfun()
    a = degree.degree_of_unitary(w, SAMPLES, seed=7)
    b = degree.degree_of_unitary(w, SAMPLES, seed=7, jobs=2, batch=1000)
    c = degree.degree_of_unitary(w, SAMPLES, seed=7, batch=1000)
    assert b.to_dict() == c.to_dict()
    assert a.estimate == pytest.approx(b.estimate, abs=1e-3)
    assert degree.degree_of_unitary(w, SAMPLES, seed=8).estimate != a.estimate


def test_stratum_count():
    assert degree._strata(1_000_000) == 80
    est = degree.degree_of_unitary(rp3.w_matfun(), 2000)
    assert est.samples == 2 * degree._strata(2000) ** 3 >= 2000
