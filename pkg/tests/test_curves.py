import itertools
import random
from fractions import Fraction as F

import pytest

from quivermoduli.configs import QnConfig
from quivermoduli.curves import (
    Chain,
    GK,
    HASSETT,
    InconsistentFamilyError,
    LimitFamily,
    PointedTree,
    TreeEdge,
    UnstableInputError,
    chain_canonical,
    chain_from_tree,
    chain_isomorphic,
    charts_cover_hypersimplex,
    contract_gamma,
    contract_to_chart,
    family_passes,
    hassett_chart_degree,
    is_a_stable,
    is_gk_stable,
    is_lm_stable,
    lm_moduli_coordinates,
    lm_specialization_weights,
    mark_images,
    moduli_coordinates,
    reconstruct_tree,
    tree_from_chain,
    tree_isomorphic,
    validate_tree,
    verify_functor_conditions,
)
from quivermoduli.generate import (
    enumerate_split_systems,
    random_gk_tree,
    tree_from_splits,
)
from quivermoduli.projline import INF_POINT, ONE_POINT, ZERO_POINT, affine


def single(n=4, last=F(5, 2)):
    pts = [ZERO_POINT, INF_POINT, ONE_POINT, affine(last), affine(7), affine(-3), affine(F(1, 3))]
    return PointedTree(("c0",), (), tuple((k, "c0", pts[k]) for k in range(n)))


def two_comp():
    return PointedTree(
        ("a", "b"),
        (TreeEdge(("a", "b"), (affine(9), affine(-4))),),
        (
            (0, "a", affine(0)),
            (1, "a", affine(1)),
            (2, "b", affine(2)),
            (3, "b", INF_POINT),
        ),
    )


def test_validate_tree_rejects_mark_on_node():
    with pytest.raises(ValueError):
        validate_tree(
            PointedTree(
                ("a", "b"),
                (TreeEdge(("a", "b"), (affine(9), affine(-4))),),
                ((0, "a", affine(9)), (1, "a", affine(1)), (2, "b", affine(2)), (3, "b", affine(3))),
            )
        )


def test_validate_tree_rejects_cycles_and_disconnection():
    with pytest.raises(ValueError):
        validate_tree(
            PointedTree(("a", "b"), (), ((0, "a", affine(1)), (1, "b", affine(2)), (2, "a", affine(3))))
        )


def test_gk_stability():
    assert is_gk_stable(single(3))
    assert is_gk_stable(two_comp())
    # second component with two special points only
    bad = PointedTree(
        ("a", "b"),
        (TreeEdge(("a", "b"), (affine(9), affine(-4))),),
        ((0, "a", affine(0)), (1, "a", affine(1)), (2, "a", affine(2)), (3, "b", affine(3))),
    )
    assert not is_gk_stable(bad)
    # coincident marks are not classically stable
    dup = PointedTree(("c0",), (), ((0, "c0", affine(1)), (1, "c0", affine(1)), (2, "c0", affine(2))))
    assert not is_gk_stable(dup)


def test_a_stability_examples():
    one = F(1)
    t = PointedTree(
        ("c",), (),
        ((0, "c", affine(0)), (1, "c", affine(0)), (2, "c", affine(1)), (3, "c", INF_POINT)),
    )
    assert is_a_stable(t, (F(1, 2), F(1, 2), one, one))
    assert not is_a_stable(t, (F(3, 4), F(3, 4), one, one))
    assert is_a_stable(single(4), (one,) * 4) == is_gk_stable(single(4))


def test_lm_stability():
    ch = Chain((((0, affine(2)),),))
    assert is_lm_stable(ch)
    ch2 = Chain((((0, affine(2)), (1, affine(3))), ()))
    assert not is_lm_stable(ch2)


def test_mark_images_two_components():
    imgs = mark_images(two_comp())
    assert imgs["a"][2] == affine(9) and imgs["a"][3] == affine(9)
    assert imgs["b"][0] == affine(-4) and imgs["b"][1] == affine(-4)


def test_contract_gamma_identity_and_example():
    t = two_comp()
    assert contract_gamma(t, [0, 1, 2, 3]).n == 4
    g = contract_gamma(t, [0, 2, 3])
    assert len(g.components) == 1
    # the dropped component's mark lands on the attachment point
    imgs = {lb: p for lb, _, p in g.marks}
    assert imgs[0] == affine(-4)


def test_contract_gamma_functorial():
    rng = random.Random(3)
    for _ in range(20):
        t = random_gk_tree(rng, 6)
        inner = contract_gamma(t, [0, 1, 2, 3, 4])
        assert tree_isomorphic(contract_gamma(inner, [0, 1, 2, 3]), contract_gamma(t, [0, 1, 2, 3]))


def test_contract_to_chart():
    t = two_comp()
    chart = contract_to_chart(t, (0, 2, 3))
    assert chart is not None
    assert chart[0] == ZERO_POINT and chart[2] == INF_POINT and chart[3] == ONE_POINT
    # marks 0 and 1 collapse together on the far component
    assert chart[1] == chart[0]
    # a triple undefined when two of its marks merge everywhere
    dup = PointedTree(
        ("c",), (),
        ((0, "c", affine(0)), (1, "c", affine(0)), (2, "c", affine(1)), (3, "c", INF_POINT)),
    )
    assert contract_to_chart(dup, (0, 1, 2)) is None


def test_contraction_compatibility_with_charts():
    rng = random.Random(9)
    for _ in range(15):
        t = random_gk_tree(rng, 6)
        keep = sorted(rng.sample(range(6), 4))
        g = contract_gamma(t, keep)
        for trip in itertools.combinations(keep, 3):
            c1 = contract_to_chart(t, trip)
            c2 = contract_to_chart(g, trip)
            for k in keep:
                assert c1[k] == c2[k]


def test_moduli_coordinates_single_component():
    lam = F(5, 2)
    fam = moduli_coordinates(single(4, lam), GK)
    assert fam.charts[(0, 1, 2)][3] == affine(lam)
    assert len(fam.charts) == 24
    assert family_passes(verify_functor_conditions(fam))


def test_moduli_rejects_unstable():
    dup = PointedTree(("c0",), (), ((0, "c0", affine(1)), (1, "c0", affine(1)), (2, "c0", affine(2))))
    with pytest.raises(UnstableInputError):
        moduli_coordinates(dup, GK)


def test_reconstruct_boundary_family():
    # chart family of the two-component tree: mark 3 meets mark 0 in the
    # chart of the component carrying marks 1, 2
    fam = moduli_coordinates(two_comp(), GK)
    t = reconstruct_tree(fam)
    assert len(t.components) == 2
    sides = {
        frozenset(lb for lb, c, _ in t.marks if c == comp) for comp in t.components
    }
    assert sides == {frozenset({0, 1}), frozenset({2, 3})}


def test_reconstruct_detects_mutation():
    fam = moduli_coordinates(single(5), GK)
    charts = dict(fam.charts)
    row = list(charts[(0, 1, 2)])
    row[4] = affine(F(99))
    charts[(0, 1, 2)] = tuple(row)
    broken = LimitFamily(GK, 5, charts)
    with pytest.raises(InconsistentFamilyError):
        reconstruct_tree(broken)


def test_roundtrip_exhaustive_n4():
    for splits in enumerate_split_systems(4):
        t = tree_from_splits(4, splits)
        fam = moduli_coordinates(t, GK)
        t2 = reconstruct_tree(fam)
        assert tree_isomorphic(t, t2)
        assert moduli_coordinates(t2, GK) == fam


def test_tree_isomorphic_rejects_different_coordinates():
    t1 = single(4, F(5, 2))
    t2 = single(4, F(7, 2))
    assert not tree_isomorphic(t1, t2)
    m = two_comp()
    assert tree_isomorphic(m, m)


def test_lm_coordinates_and_identities():
    ch = Chain((
        ((0, affine(2)),),
        ((1, affine(1)), (2, affine(F(1, 3)))),
    ))
    fam = lm_moduli_coordinates(ch)
    for i in range(3):
        assert fam.charts[i][i] == ONE_POINT
    assert family_passes(verify_functor_conditions(fam))
    back = reconstruct_tree(fam)
    assert chain_isomorphic(ch, back)


def test_chain_canonical():
    ch = Chain((((0, affine(6)), (1, affine(3))),))
    canon = chain_canonical(ch)
    assert dict(canon.components[0])[0] == ONE_POINT
    assert dict(canon.components[0])[1] == affine(F(1, 2))


def test_hassett_chart_degree():
    a = (F(3, 5),) * 5
    blocks = [(0, 1), (2,), (3,), (4,)]
    assert hassett_chart_degree(blocks, a) == 1 + 3 * F(3, 5)
    assert hassett_chart_degree([(0, 1, 2, 3, 4)], a) == 1


def test_heavy_tree_chain_correspondence():
    n = 5
    a = lm_specialization_weights(n)
    ch = Chain((
        ((2, affine(2)),),
        ((3, affine(1)), (4, affine(F(1, 3)))),
    ))
    t = tree_from_chain(ch, n)
    assert is_a_stable(t, a)
    assert chain_isomorphic(chain_from_tree(t), ch)
    fam = moduli_coordinates(t, HASSETT, a)
    t2 = reconstruct_tree(fam)
    assert tree_isomorphic(t, t2)


def test_covering_combinatorial():
    fam = moduli_coordinates(two_comp(), GK)
    covered, _ = charts_cover_hypersimplex(fam)
    assert covered
    # drop the charts of one component: the rest cannot cover
    partial = {
        lbl: row
        for lbl, row in fam.charts.items()
        if QnConfig(tuple(row)).sections[0] != QnConfig(tuple(row)).sections[1]
    }
    broken = LimitFamily(GK, 4, partial)
    covered, witness = charts_cover_hypersimplex(broken)
    assert not covered and witness is not None


def test_hassett_inactive_charts():
    a = (F(1), F(1), F(1, 2), F(1, 2))
    dup = PointedTree(
        ("c",), (),
        ((0, "c", affine(0)), (1, "c", INF_POINT), (2, "c", affine(1)), (3, "c", affine(1))),
    )
    assert is_a_stable(dup, a)
    fam = moduli_coordinates(dup, HASSETT, a)
    assert tuple(sorted((2, 3))) not in [t for t in fam.active_sets() if 2 in t and 3 in t]
    assert all(not (2 in t and 3 in t) for t in fam.active_sets())
    assert family_passes(verify_functor_conditions(fam))
    t2 = reconstruct_tree(fam)
    assert tree_isomorphic(dup, t2)
