from fractions import Fraction as F

import pytest

from quivermoduli.chambers import (
    BadEpsilonError,
    HassettPolytope,
    PnWall,
    PnWeight,
    QnWall,
    QnWeight,
    StabPolytope,
    canonical_qn_wall,
    chamber_adjacency,
    chart_weight_pn,
    chart_weight_qn,
    classify_weight,
    cover_check,
    enumerate_chambers,
    enumerate_walls,
    interiors_intersect,
    polytope_contains,
    stability_polytope,
    wall_relative_interior_point,
)
from quivermoduli.quiverwt import TooLargeError


def test_weight_invariants():
    with pytest.raises(ValueError):
        QnWeight((F(1), F(1), F(1), F(-1)))
    with pytest.raises(ValueError):
        QnWeight((F(1, 2),) * 3)
    with pytest.raises(ValueError):
        PnWeight(F(-1, 2), F(-1, 2), (F(1, 2), F(1, 4)))


def test_wall_counts():
    assert [tuple(w.j) for w in enumerate_walls("qn", 4)] == [(0, 1), (0, 2), (0, 3)]
    assert len(enumerate_walls("qn", 5)) == 10
    assert len(enumerate_walls("pn", 3)) == 6
    assert len(enumerate_walls("qn", 6)) == 25


def test_wall_canonicalization():
    assert canonical_qn_wall(5, (2, 3, 4)) == QnWall(5, (0, 1))
    # the stored side is the lexicographically smaller one, regardless of size
    assert canonical_qn_wall(5, (1, 2)) == QnWall(5, (0, 3, 4))
    assert canonical_qn_wall(6, (0, 2)) == QnWall(6, (0, 2))


def test_classify_center_on_all_walls():
    c = classify_weight(QnWeight((F(1, 2),) * 4))
    assert not c.generic and len(c.inner) == 3 and not c.outer


def test_classify_generic():
    c = classify_weight(QnWeight((F(5, 8), F(5, 8), F(5, 8), F(1, 8))))
    assert c.generic and c.signs is not None


def test_classify_outer():
    c = classify_weight(QnWeight((F(1), F(1, 3), F(1, 3), F(1, 3))))
    assert ("theta_one", 0) in c.outer
    c = classify_weight(PnWeight(F(0), F(-1), (F(1, 3), F(2, 3))))
    assert ("eta_zero", 0) in c.outer


def test_wall_relative_interior_points():
    for mode, n in (("qn", 4), ("qn", 5), ("pn", 3)):
        for w in enumerate_walls(mode, n):
            pt = wall_relative_interior_point(mode, n, w)
            cls = classify_weight(pt)
            assert cls.inner == (w,) and not cls.outer


def test_chamber_counts_small():
    assert len(enumerate_chambers("qn", 4)) == 8
    assert len(enumerate_chambers("pn", 2)) == 4


def test_chamber_witnesses_generic():
    for mode, n in (("qn", 4), ("pn", 3)):
        for c in enumerate_chambers(mode, n):
            cls = classify_weight(c.witness)
            assert cls.generic and cls.signs == c.signs


def test_adjacency_no_self_loops_and_connected():
    chs = enumerate_chambers("qn", 4)
    edges = chamber_adjacency("qn", 4, chs)
    assert all(i != k for i, k in edges)
    reach = {0}
    frontier = [0]
    adj = {}
    for i, k in edges:
        adj.setdefault(i, []).append(k)
        adj.setdefault(k, []).append(i)
    while frontier:
        c = frontier.pop()
        for d in adj.get(c, ()):
            if d not in reach:
                reach.add(d)
                frontier.append(d)
    assert reach == set(range(len(chs)))


def test_chamber_bound():
    with pytest.raises(TooLargeError):
        enumerate_chambers("qn", 8)


def test_chart_weight_qn_examples():
    w = chart_weight_qn(5, (0, 1, 2), F(1, 25))
    assert w.theta == (F(16, 25), F(16, 25), F(16, 25), F(1, 25), F(1, 25))
    assert sum(w.theta) == 2
    assert classify_weight(chart_weight_qn(5, (0, 1, 2))).generic
    w4 = chart_weight_qn(4, (0, 1, 2), F(1, 16))
    assert w4.theta[3] == 2 * F(1, 16)
    with pytest.raises(BadEpsilonError):
        chart_weight_qn(6, (0, 1, 2), F(-1, 4))


def test_chart_weight_pn_examples():
    w = chart_weight_pn(3, 0, F(1, 9))
    assert (w.eta1, w.eta2) == (F(-1, 2), F(-1, 2))
    assert w.theta == (F(8, 9), F(1, 18), F(1, 18))
    assert classify_weight(chart_weight_pn(3, 0)).generic
    assert chart_weight_pn(1, 0).theta == (F(1),)


def test_stability_polytope_vertices_qn():
    p = StabPolytope("qn", 4, partition=((0, 1), (2,), (3,)))
    verts, facets = stability_polytope(p)
    got = {tuple(i for i, v in enumerate(w.theta) if v == 1) for w in verts}
    assert got == {(0, 2), (0, 3), (1, 2), (1, 3), (2, 3)}
    assert facets == [QnWall(4, (0, 1))]


def test_stability_polytope_all_singletons_full():
    p = StabPolytope("qn", 4, partition=((0,), (1,), (2,), (3,)))
    verts, facets = stability_polytope(p)
    assert len(verts) == 6 and facets == []


def test_stability_polytope_two_classes_is_wall():
    p = StabPolytope("qn", 5, partition=((0, 1), (2, 3, 4)))
    verts, facets = stability_polytope(p)
    assert facets == [QnWall(5, (0, 1))]
    w = wall_relative_interior_point("qn", 5, QnWall(5, (0, 1)))
    assert polytope_contains(p, w) == "boundary"
    assert not interiors_intersect(p, p)


def test_stability_polytope_pn():
    p = StabPolytope("pn", 3, j0=(0,), jinf=(1,))
    verts, facets = stability_polytope(p)
    assert PnWall(3, (1,)) in facets and PnWall(3, (1, 2)) in facets
    # vertex with eta=(-1,0) at a j0 index is excluded
    for w in verts:
        if w.eta1 == -1 and w.theta[0] == 1:
            pytest.fail("vertex at the zero anchor class should be excluded")


def test_polytope_contains_examples():
    n = 4
    bary = QnWeight((F(1, 2),) * n)
    full = StabPolytope("qn", n, partition=tuple((i,) for i in range(n)))
    assert polytope_contains(full, bary) == "interior"
    p = StabPolytope("qn", n, partition=((0, 1), (2,), (3,)))
    onwall = wall_relative_interior_point("qn", n, QnWall(n, (0, 1)))
    assert polytope_contains(p, onwall) == "boundary"
    unstable_side = QnWeight((F(7, 8), F(7, 8), F(1, 8), F(1, 8)))
    assert polytope_contains(p, unstable_side) == "outside"


def test_hassett_polytope():
    with pytest.raises(ValueError):
        HassettPolytope((F(1, 2), F(1, 2), F(1, 2)))
    ha = HassettPolytope((F(1),) * 4)
    assert polytope_contains(ha, QnWeight((F(1, 2),) * 4)) == "interior"
    hb = HassettPolytope((F(1), F(1), F(1), F(1, 3)))
    assert polytope_contains(hb, QnWeight((F(2, 3), F(2, 3), F(1, 3), F(1, 3)))) == "boundary"
    assert polytope_contains(hb, QnWeight((F(1, 2), F(1, 2), F(1, 2), F(1, 2)))) == "outside"


def test_interiors_intersect_examples():
    a = StabPolytope("qn", 4, partition=((0, 1), (2,), (3,)))
    b = StabPolytope("qn", 4, partition=((2, 3), (0,), (1,)))
    assert interiors_intersect(a, a)
    # the two polytopes are the closed sides of one wall: interiors disjoint
    assert not interiors_intersect(a, b)
    wallp = StabPolytope("qn", 4, partition=((0, 1), (2, 3)))
    assert not interiors_intersect(wallp, a)
    # in the larger polytope two different walls genuinely overlap
    c = StabPolytope("qn", 5, partition=((0, 1), (2,), (3,), (4,)))
    d = StabPolytope("qn", 5, partition=((2, 3), (0,), (1,), (4,)))
    assert interiors_intersect(c, d)


def test_cover_check_chart_polytopes():
    # the three boundary charts of a generic 4-point configuration
    polys = [
        StabPolytope("qn", 4, partition=tuple((i,) for i in range(4)))
    ]
    covered, _ = cover_check(polys, "qn", 4)
    assert covered
    # a single wall polytope never covers
    polys = [StabPolytope("qn", 4, partition=((0, 1), (2, 3)))]
    covered, witness = cover_check(polys, "qn", 4)
    assert not covered and witness is not None


def test_cover_check_weighted_target():
    # the single active chart of a configuration with marks 2, 3 merged
    # covers the weighted target but not the whole polytope
    a = (F(1), F(1), F(1, 2), F(1, 2), F(1))
    polys = [StabPolytope("qn", 5, partition=((2, 3), (0,), (1,), (4,)))]
    covered, _ = cover_check(polys, "qn", 5, a)
    assert covered
    covered_all, witness = cover_check(polys, "qn", 5)
    assert not covered_all and witness is not None
