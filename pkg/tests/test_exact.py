from fractions import Fraction

import numpy as np
import pytest
import sympy
from hypothesis import assume, given
from hypothesis import strategies as st
from sympy.matrices.normalforms import smith_normal_form as sympy_snf

from magic4.exact import (
    I, INV_SQRT2, ONE, SQRT2, ZERO, FieldScalar, IntMatrix, Lattice, QMatrix, cokernel_invariants,
    kernel_basis, lattice_equal, rank, smith_normal_form,
)

small = st.fractions(min_value=-5, max_value=5, max_denominator=6)
scalars = st.builds(FieldScalar, small, small, small, small)


@given(scalars, scalars, scalars)
def test_field_ring_axioms(x, y, z):
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x * y == y * x
    assert (x * y).conj() == x.conj() * y.conj()
    assert (x + y) - y == x


@given(scalars)
def test_field_inverse(x):
    assume(not x.is_zero())
    assert x * x.inverse() == ONE
    assert x / x == ONE


@given(scalars, scalars)
def test_field_matches_complex_arithmetic(x, y):
    assert complex(x * y) == pytest.approx(complex(x) * complex(y), abs=1e-9)
    assert complex(x + y) == pytest.approx(complex(x) + complex(y), abs=1e-9)


def test_field_constants():
    assert SQRT2 * SQRT2 == FieldScalar(2)
    assert INV_SQRT2 * SQRT2 == ONE
    assert I * I == -ONE
    assert I.conj() == -I and SQRT2.conj() == SQRT2
    assert FieldScalar(Fraction(2, 4)).re_rat == Fraction(1, 2)


def test_division_by_zero_is_an_error():
    with pytest.raises(ZeroDivisionError):
        ZERO.inverse()


def test_field_is_immutable():
    with pytest.raises(AttributeError):
        ONE.re_rat = 3


def test_float_complex_is_rejected():
    with pytest.raises(TypeError):
        FieldScalar.coerce(1.5j)


gauss_mats = st.integers(1, 4).flatmap(
    lambda n: st.lists(st.lists(st.integers(-4, 4), min_size=n, max_size=n), min_size=n, max_size=n))


@given(gauss_mats)
def test_det_matches_numpy(rows):
    assert float(complex(QMatrix(rows).det()).real) == pytest.approx(np.linalg.det(np.array(rows, float)), abs=1e-6)


@given(gauss_mats, gauss_mats)
def test_adjoint_laws(a, b):
    n = min(len(a), len(b))
    A = QMatrix([[x + (y * I) for x, y in zip(r[:n], r[::-1][:n])] for r in a[:n]])
    B = QMatrix([r[:n] for r in b[:n]]).scale(SQRT2)
    assert A.adjoint().adjoint() == A
    assert (A @ B).adjoint() == B.adjoint() @ A.adjoint()


def test_unitarity_is_exact():
    H = QMatrix([[1, 1], [1, -1]]).scale(INV_SQRT2)
    assert H.is_unitary()
    assert not QMatrix([[1, 1], [1, -1]]).is_unitary()
    assert QMatrix([[0, I], [I, 0]]).is_unitary()


def test_nullspace():
    ns = QMatrix([[1, 2], [2, 4]]).nullspace()
    assert len(ns) == 1
    assert QMatrix([[1, 2], [2, 4]]).apply(ns[0]) == (ZERO, ZERO)


# Smith normal form

def _check_snf(A: IntMatrix):
    s = smith_normal_form(A)
    assert abs(s.left.det()) == 1 and abs(s.right.det()) == 1
    assert s.left @ A @ s.right == s.diagonal_matrix(A.rows, A.cols)
    assert all(d > 0 for d in s.diag)
    assert all(b % a == 0 for a, b in zip(s.diag, s.diag[1:]))
    return s


def test_snf_examples():
    assert _check_snf(IntMatrix.identity(3)).diag == (1, 1, 1)
    assert _check_snf(IntMatrix.zeros(2, 2)).diag == ()
    assert _check_snf(IntMatrix([[2, 4], [6, 8]])).diag == (2, 4)


int_mats = st.tuples(st.integers(1, 6), st.integers(1, 6)).flatmap(
    lambda d: st.lists(st.lists(st.integers(-5, 5), min_size=d[1], max_size=d[1]), min_size=d[0], max_size=d[0]))


@given(int_mats)
def test_snf_against_sympy(rows):
    A = IntMatrix(rows)
    s = _check_snf(A)
    M = sympy.Matrix(rows)
    ref = sympy_snf(M, domain=sympy.ZZ)
    ref_diag = [abs(ref[k, k]) for k in range(min(ref.shape)) if ref[k, k] != 0]
    assert list(s.diag) == ref_diag
    assert rank(A) == M.rank()


@given(int_mats)
def test_kernel_basis_is_saturated(rows):
    A = IntMatrix(rows)
    K = kernel_basis(A)
    assert K.cols == A.cols - rank(A)
    if K.cols:
        assert (A @ K).is_zero()
        # saturated: the gcd of the maximal minors is 1, i.e. the SNF of K is all ones
        assert set(smith_normal_form(K).diag) == {1}


def test_kernel_examples():
    assert kernel_basis(IntMatrix.identity(3)).cols == 0
    assert kernel_basis(IntMatrix.zeros(1, 2)).cols == 2


def test_cokernel_examples():
    assert cokernel_invariants(IntMatrix.identity(4)) == (0, [])
    assert cokernel_invariants(IntMatrix([[2]])) == (0, [2])
    assert cokernel_invariants(IntMatrix([[2, 0], [0, 3]])) == (0, [6])
    assert cokernel_invariants(IntMatrix([[1, 0], [0, 0], [0, 0]])) == (2, [])


def test_lattice_equality_examples():
    e = Lattice.from_vectors([(1, 0), (0, 1)], 2)
    assert lattice_equal(e, Lattice.from_vectors([(1, 1), (0, 1)], 2))
    assert not lattice_equal(Lattice.from_vectors([(2, 0)], 2), Lattice.from_vectors([(1, 0)], 2))
    assert Lattice.from_vectors([(2, 0)], 2).contains((4, 0))
    assert not Lattice.from_vectors([(2, 0)], 2).contains((1, 0))
    with pytest.raises(ValueError):
        lattice_equal(e, Lattice.from_vectors([(1, 0, 0)], 3))


@given(int_mats, st.lists(st.integers(-3, 3), min_size=36, max_size=36))
def test_lattice_equality_is_basis_independent(rows, coeffs):
    A = IntMatrix(rows)
    gens = A.columns()
    mixed = list(gens)
    # a sequence of elementary column operations keeps the lattice
    for k in range(len(mixed)):
        for m in range(len(mixed)):
            if m != k:
                mixed[k] = tuple(x + coeffs[(6 * k + m) % 36] * y for x, y in zip(mixed[k], mixed[m]))
    assert Lattice(A) == Lattice.from_vectors(mixed, A.rows)
