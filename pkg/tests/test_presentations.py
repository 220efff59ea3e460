from fractions import Fraction

import numpy as np
import pytest

from magic4 import presentations as pr
from magic4 import rp3
from magic4.symmetry import Perm, all_perms


@pytest.mark.parametrize("n,size", [(1, 1), (2, 2), (3, 6), (4, 24)])
def test_character_tables_are_identities(n, size):
    res = pr.character_table(n)
    assert res.passed and res.data["size"] == size
    assert res.checked == size + size * size


def test_characters_respect_relations():
    for n in range(1, 5):
        assert all(pr.Character(s).respects_relations() for s in all_perms(n))


def test_character_table_bounds():
    with pytest.raises(ValueError):
        pr.character_table(5)


def test_orthogonality_needs_degree_three():
    low = pr.orthogonality_check(3, D=2)
    assert not low.passed
    assert pr.orthogonality_check(3, D=3).passed


def test_orthogonality_example():
    space = pr.FreeWordSpace(3, 3, reduced=False)
    alg = space.alg
    assert space.contains(alg.mul(alg.gen(1, 1), alg.gen(1, 2)))[0]
    assert not space.contains(alg.mul(alg.gen(1, 1), alg.gen(2, 2)))[0]


def test_reduced_normal_form():
    alg = pr.WordAlgebra(3, reduced=True)
    assert alg.normal(((1, 1), (1, 1), (2, 2))) == ((1, 1), (2, 2))
    assert alg.normal(((1, 1), (1, 2))) is None
    assert alg.normal(((1, 1), (2, 1))) is None


def test_displayed_step():
    alg = pr.WordAlgebra(3, reduced=True)
    res = pr.CheckResult("steps")
    pr.verify_chain(alg, res, pr.proof_chain(alg), Perm.identity(3), Perm.identity(3))
    assert res.passed and res.checked == 4
    first, last = pr.proof_chain(alg)[0][1], pr.proof_chain(alg)[-1][2]
    assert first == alg.mul(alg.gen(1, 1), alg.gen(2, 2))
    assert last == alg.mul(alg.gen(3, 3), alg.gen(2, 2))


def test_broken_certificate_is_caught():
    alg = pr.WordAlgebra(3, reduced=True)
    steps = pr.proof_chain(alg)
    text, lhs, rhs, cert = steps[0]
    bad = [(text, lhs, rhs, [(1, (), ("col", 1), ((2, 2),))])]
    res = pr.CheckResult("steps")
    pr.verify_chain(alg, res, bad, Perm.identity(3), Perm.identity(3))
    assert not res.passed


def test_a3_commutativity():
    res = pr.a3_commutativity(4)
    assert res.passed, res.witnesses
    assert res.data["degree"] == 4


def test_a2_commutativity():
    assert pr.small_n_commutativity(2, 3).passed


def test_adjoint_is_word_reversal():
    alg = pr.WordAlgebra(3, reduced=True)
    x = pr.add(alg.mul(alg.gen(1, 1), alg.gen(2, 2)), alg.gen(3, 3), coeffs=[2, -1])
    assert pr.adjoint(pr.adjoint(x)) == x
    assert pr.adjoint(alg.mul(alg.gen(1, 1), alg.gen(2, 2))) == alg.mul(alg.gen(2, 2), alg.gen(1, 1))


def _represent(x: dict, mats: dict, size: int) -> np.ndarray:
    out = np.zeros((size, size))
    for w, c in x.items():
        m = np.eye(size)
        for letter in w:
            m = m @ mats[letter]
        out += float(c) * m
    return out


def test_ideal_generators_vanish_in_a_representation():
    # the evaluated P_{i,j} form a 4x4 magic unitary: every u r v maps to zero, the commutator does not
    pt = (Fraction(2, 7), Fraction(3, 7), Fraction(6, 7), 0)
    P = rp3.build_P()
    mats = {k: np.array([[float(x.re_rat) for x in row] for row in P[k].evaluate(pt).entries]) for k in P}
    space = pr.FreeWordSpace(4, 2, reduced=False)
    alg = space.alg
    for r in alg.relations().values():
        for u in alg.basis(1):
            assert np.allclose(_represent(alg.mul({u: Fraction(1)}, r), mats, 4), 0)
    comm = pr.add(alg.mul(alg.gen(1, 1), alg.gen(2, 2)), alg.mul(alg.gen(2, 2), alg.gen(1, 1)), coeffs=[1, -1])
    assert not np.allclose(_represent(comm, mats, 4), 0)
    assert not space.contains(comm)[0]
