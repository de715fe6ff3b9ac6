import pytest

from weylcalc import parabolic
from weylcalc.rootsys import root_system


def test_parse_theta():
    a3 = root_system("A3")
    assert parabolic.parse_theta("1,3", a3) == (1, 3)
    assert parabolic.parse_theta("", a3) == ()
    assert parabolic.parse_theta([3, 1, 3], a3) == (1, 3)
    with pytest.raises(ValueError):
        parabolic.parse_theta("5", a3)
    with pytest.raises(ValueError):
        parabolic.parse_theta("a", a3)


@pytest.mark.parametrize("label,theta,ranks", [
    ("A2", (2,), [1, 1, 1]),
    ("A3", (1, 3), [1, 1, 2, 1, 1]),
    ("A4", (2,), [1, 3, 6, 9, 11, 11, 9, 6, 3, 1]),
    ("A3", (), [1, 3, 5, 6, 5, 3, 1]),
])
def test_gp_ranks(label, theta, ranks):
    rep = parabolic.gp_report(root_system(label), theta, products=label != "A4")
    assert rep.ranks == ranks
    assert parabolic.quotient_poincare(root_system(label), theta) == ranks
    assert rep.ok
    assert all(rep.schubert_basis_agreement().values())


def test_d4_gp_products_close():
    rep = parabolic.gp_report(root_system("D4"), (1, 3, 4))
    assert rep.ok
    assert sum(rep.ranks) == 24


def test_grassmannian():
    chk = parabolic.grassmannian_crosscheck()
    assert chk.ok
    assert chk.square == [1, 1]
    assert chk.pairing_dets == [1, 1, 1, 1, 1]
