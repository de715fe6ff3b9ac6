import json
from fractions import Fraction

import pytest

from weylcalc import arrangement, weyl
from weylcalc.rootsys import root_system


def test_cone_membership():
    cone = arrangement.Cone(((1, 0), (0, 1)))
    assert cone.membership((1, 1)) == "interior"
    assert cone.membership((1, 0)) == "boundary"
    assert cone.membership((0, 0)) == "boundary"
    assert cone.membership((-1, 1)) == "outside"
    assert cone.membership((Fraction(1, 3), Fraction(2, 7))) == "interior"
    with pytest.raises(ValueError):
        arrangement.Cone(((1, 0), (2, 0))).membership((1, 1))


@pytest.mark.parametrize("label", ["A2", "A3", "D4"])
def test_separating_walls(label):
    sys_ = root_system(label)
    elems = weyl.all_elements(sys_)
    e = weyl.identity(sys_)
    for w in elems:
        assert len(arrangement.separating_walls(e, w, sys_)) == w.length
        assert arrangement.separating_walls(w, w, sys_) == frozenset()
    u, v = elems[3], elems[-2]
    assert arrangement.separating_walls(u, v, sys_) == arrangement.separating_walls(v, u, sys_)


def test_a2_hexagon():
    g = arrangement.glueing_graph(root_system("A2"))
    assert len(g.vertices) == 6 and len(g.edges) == 6
    assert set(g.degrees()) == {2}
    assert g.is_connected()
    dot = g.to_dot()
    assert dot.startswith("graph A2 {") and '"e" -- "1" [label="(1,0)"];' in dot
    data = json.loads(g.to_json())
    assert len(data["edges"]) == 6


@pytest.mark.parametrize("label,v,e,deg", [("A3", 24, 36, 3), ("D4", 192, 384, 4)])
def test_cayley_graph(label, v, e, deg):
    g = arrangement.glueing_graph(root_system(label))
    assert (len(g.vertices), len(g.edges), set(g.degrees())) == (v, e, {deg})
    assert all(ok for _, ok, _ in g.checks)


def test_glueing_graph_cap():
    with pytest.raises(weyl.EnumerationCapError):
        arrangement.glueing_graph(root_system("E6"), cap=100)


def test_d4_tiling_small():
    rep = arrangement.d4_tiling_check(500, 7)
    assert rep.ok and rep.orbit_size == 6
    assert rep.uncovered == 0 and rep.multi_interior == 0
