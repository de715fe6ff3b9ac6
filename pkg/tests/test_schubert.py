import random

import pytest

from weylcalc import linalg, schubert, weyl
from weylcalc.polyring import Poly, random_homogeneous, ring
from weylcalc.rootsys import root_system
from weylcalc.schubert import HClass, IntegralityError

A2 = root_system("A2")


@pytest.fixture(scope="module")
def a2():
    return schubert.calculus(A2)


def test_a2_characteristic_map(a2):
    assert a2.c_map(Poly.parse("x1", 2)).to_string(A2) == "2*z[s1] - z[s2]"
    assert a2.c_map(Poly.parse("x1^2", 2)).to_string(A2) == "-3*z[s1s2]"
    assert a2.c_map(Poly.constant(2, 5)).to_string(A2) == "5*z[e]"


def test_a2_products(a2):
    z1, z2 = a2.z((1,)), a2.z((2,))
    assert a2.multiply(z1, z1) == a2.z((2, 1))
    assert a2.multiply(z1, z2) == a2.z((1, 2)) + a2.z((2, 1))
    assert a2.multiply(z1, a2.z((1, 2))) == a2.z((1, 2, 1))
    # z_{s1}^3 vanishes because varpi_1^3 lies in the ideal of invariants
    assert a2.multiply(z1, a2.z((2, 1))).is_zero()


def test_a2_dual_polynomials(a2):
    from fractions import Fraction
    assert a2.dual_poly(a2.z((1,))) == Poly(2, {(1, 0): Fraction(2, 3), (0, 1): Fraction(1, 3)})
    assert a2.dual_poly(a2.z((2,))) == Poly(2, {(1, 0): Fraction(1, 3), (0, 1): Fraction(2, 3)})


@pytest.mark.parametrize("label", ["A2", "A3"])
def test_dual_basis_is_dual(label):
    sys_ = root_system(label)
    calc = schubert.calculus(sys_)
    for n in range(sys_.num_positive_roots + 1):
        for w in calc.basis(n):
            z = HClass.basis_element(w)
            assert calc.c_map(calc.dual_poly(z)) == z


def test_chevalley_rule(a2):
    z1 = a2.z((1,))
    x2 = Poly.parse("x2", 2)
    assert a2.chevalley_multiply(x2, z1) == 2 * a2.z((1, 2)) + a2.z((2, 1))
    assert a2.chevalley_multiply(x2, z1) == a2.multiply(a2.c_map(x2), z1)


def test_pairing_unimodular_a2(a2):
    for i in range(4):
        assert abs(linalg.determinant(a2.pairing_matrix(i))) == 1


def test_w_action(a2):
    s1 = weyl.from_word((1,), A2)
    assert a2.w_action(s1, a2.z((1,))) == a2.z((2,)) - a2.z((1,))
    assert a2.w_action(s1, a2.z((2,))) == a2.z((2,))
    assert [h.to_string(A2) for h in a2.theta_invariants((2,), 1)] == ["z[s1]"]


def test_equivariance_d4():
    sys_ = root_system("D4")
    calc, rg = schubert.calculus(sys_), ring(sys_)
    rng = random.Random(5)
    elems = weyl.enumerate_by_length(sys_, 4)
    for _ in range(10):
        w = rng.choice([x for lvl in elems.values() for x in lvl])
        p = random_homogeneous(rng, 4, rng.randint(0, 4))
        assert calc.c_map(rg.act(w, p)) == calc.w_action(w, calc.c_map(p))


def test_hclass_validation():
    w = weyl.from_word((1,), A2)
    with pytest.raises(ValueError):
        HClass({w: 1}, 2)
    with pytest.raises(IntegralityError):
        HClass({w: 0.5}, 1)
    assert HClass({w: 0}, 1).is_zero()
    assert (HClass.basis_element(w) - HClass.basis_element(w)) == HClass.zero(1)


def test_word_names():
    assert schubert.word_name(()) == "e"
    assert schubert.word_name((1, 2)) == "s1s2"
