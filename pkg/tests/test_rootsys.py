from fractions import Fraction

import pytest

from weylcalc import linalg
from weylcalc.rootsys import (DynkinType, additive_closure, brute_force_gram_isomorphisms, cartan_matrix,
                              closed_form_root_count, e10_complement_check, fundamental_degrees,
                              gram_isomorphisms, highest_root, pairing, root_system)

ALL_TYPES = ([f"A{n}" for n in range(1, 9)] + [f"D{n}" for n in range(4, 9)] + ["E6", "E7", "E8"])

# frozen: |Phi+| for A_n = n(n+1)/2, D_n = n(n-1), E = 36, 63, 120
POSITIVE_ROOTS = {"A1": 1, "A2": 3, "A5": 15, "A8": 36, "D4": 12, "D5": 20, "D8": 56,
                  "E6": 36, "E7": 63, "E8": 120}


@pytest.mark.parametrize("label", ALL_TYPES)
def test_root_counts_and_weights(label):
    sys_ = root_system(label)
    assert sys_.num_positive_roots == closed_form_root_count(sys_.type)
    if label in POSITIVE_ROOTS:
        assert sys_.num_positive_roots == POSITIVE_ROOTS[label]
    # (varpi_i, beta_j) = delta_ij
    for i, w in enumerate(sys_.fundamental_weights):
        for j in range(sys_.rank):
            assert pairing(w, sys_.simple_root(j + 1), sys_) == (1 if i == j else 0)
    assert sorted(fundamental_degrees(sys_))[-1] - 1 == sum(highest_root(sys_))


def test_labeling():
    d4 = cartan_matrix(DynkinType("D", 4))
    assert [sum(1 for x in row if x == -1) for row in d4] == [1, 3, 1, 1]
    e8 = cartan_matrix(DynkinType("E", 8))
    assert e8[1][3] == -1 and e8[0][2] == -1 and e8[2][3] == -1
    assert sum(1 for x in e8[3] if x == -1) == 3
    assert highest_root(root_system("E8")) == (2, 3, 4, 6, 5, 4, 3, 2)
    assert root_system("D4").fundamental_weights[1] == (1, 2, 1, 1)
    assert root_system("A2").fundamental_weights[0] == (Fraction(2, 3), Fraction(1, 3))


@pytest.mark.parametrize("label,degrees", [
    ("A5", [2, 3, 4, 5, 6]), ("D4", [2, 4, 4, 6]), ("D5", [2, 4, 5, 6, 8]),
    ("E6", [2, 5, 6, 8, 9, 12]), ("E7", [2, 6, 8, 10, 12, 14, 18]),
    ("E8", [2, 8, 12, 14, 18, 20, 24, 30]),
])
def test_fundamental_degrees(label, degrees):
    assert sorted(fundamental_degrees(root_system(label))) == degrees


def test_parse():
    assert DynkinType.parse("e_8") == DynkinType("E", 8)
    assert DynkinType.parse(" D4 ").label == "D4"
    for bad in ("X9", "E9", "D3", "A0", "A"):
        with pytest.raises(ValueError):
            DynkinType.parse(bad)


def test_pairing_length_mismatch():
    with pytest.raises(ValueError):
        pairing((1, 0), (1, 0, 0), root_system("A2"))


def test_additive_closure_matches_count():
    c = cartan_matrix(DynkinType("E", 6))
    assert len(additive_closure(c)) == 36


@pytest.mark.parametrize("label", ["A3", "A4", "D4", "D5"])
def test_gram_isomorphisms_against_brute_force(label):
    c = [list(r) for r in cartan_matrix(DynkinType.parse(label))]
    assert sorted(gram_isomorphisms(c, c)) == sorted(brute_force_gram_isomorphisms(c, c))


def test_e10_complement():
    rep = e10_complement_check()
    assert rep["determinant"] == -1
    assert rep["signature"] == [9, 1]
    assert rep["w1"] == [-4, -7, -9, -14, -12, -10, -8, -6, -4, -2]
    assert rep["complement_basis"] == [f"beta{k}" for k in range(2, 11)]
    assert all(ok for _, ok, _ in rep["checks"])
    # the complement of varpi_1 is unimodular up to the D9 discriminant 4
    sub = [[cartan_matrix(DynkinType("D", 9))[i][j] for j in range(9)] for i in range(9)]
    assert linalg.determinant(sub) == 4
