"""The verification suites: every acceptance property as a runnable check.

Each suite is a pure function of (seed, bounds) returning a report dict with
a pass flag, a check count, and the first counterexample if any.  All
randomness is drawn from seeded generators, so reports are reproducible
byte for byte.
"""
from __future__ import annotations

import itertools
import random
import zlib
from fractions import Fraction
from typing import Callable, Optional

from . import chambers, configs, curves, generate
from .chambers import (
    PN,
    QN,
    PnWeight,
    QnWeight,
    chamber_adjacency,
    chamber_second_witness,
    chart_weight_pn,
    chart_weight_qn,
    classify_weight,
    cover_check,
    enumerate_chambers,
    enumerate_walls,
    project_weight_to_pn,
    wall_relative_interior_point,
)
from .configs import (
    PnConfig,
    QnConfig,
    brute_force_semistable,
    check_limit_equations,
    glue_fiber,
    is_semistable,
    map_config_qn2_pn,
    moebius_equivalent,
    normalize_chart_qn,
    theta_polytope,
)
from .curves import (
    GK,
    HASSETT,
    LimitFamily,
    chain_from_tree,
    chain_isomorphic,
    charts_cover_hypersimplex,
    family_passes,
    is_a_stable,
    is_gk_stable,
    lm_moduli_coordinates,
    lm_specialization_weights,
    moduli_coordinates,
    reconstruct_tree,
    tree_from_chain,
    tree_isomorphic,
    verify_functor_conditions,
)
from .generate import (
    chain_from_shape,
    config_points_for_partition,
    enumerate_chain_shapes,
    enumerate_split_systems,
    heavy_tree_shapes,
    pn_decorations,
    random_a_stable_tree,
    random_chain,
    random_gk_tree,
    random_hassett_weight,
    random_points,
    random_vertex_cone_weight,
    set_partitions,
    tree_from_splits,
)

DEFAULT_SEED = 20260810


def _rng(seed: int, tag: str) -> random.Random:
    return random.Random(seed ^ zlib.crc32(tag.encode()))


class _Report:
    def __init__(self, suite: str):
        self.suite = suite
        self.checks = 0
        self.counterexample = None

    def ok(self, count: int = 1):
        self.checks += count

    def fail(self, witness) -> bool:
        if self.counterexample is None:
            self.counterexample = witness
        return False

    def expect(self, condition: bool, witness: Callable[[], object]) -> bool:
        self.checks += 1
        if not condition:
            return self.fail(witness())
        return True

    def result(self) -> dict:
        return {
            "suite": self.suite,
            "passed": self.counterexample is None,
            "checks": self.checks,
            "counterexample": self.counterexample,
        }


def _qn_partition_configs(n: int):
    for part in set_partitions(range(n)):
        blocks = [tuple(sorted(b)) for b in part]
        pts = config_points_for_partition(blocks, n)
        yield blocks, QnConfig(tuple(pts))


def _pn_partition_configs(n: int):
    for part in set_partitions(range(n)):
        blocks = [tuple(sorted(b)) for b in part]
        for j0, jinf in pn_decorations(blocks):
            pts = config_points_for_partition(blocks, n, j0, jinf)
            yield blocks, j0, jinf, PnConfig(tuple(pts))


def _random_config(rng: random.Random, mode: str, n: int):
    pts = random_points(rng, max(2, rng.randint(2, n)))
    secs = []
    for _ in range(n):
        if rng.random() < 0.06:
            secs.append(None)
        else:
            secs.append(rng.choice(pts))
    return QnConfig(tuple(secs)) if mode == QN else PnConfig(tuple(secs))


def _random_weight(rng: random.Random, mode: str, n: int):
    if mode == QN:
        if rng.random() < 0.15:
            i, j = rng.sample(range(n), 2)
            theta = [Fraction(0)] * n
            theta[i] = theta[j] = Fraction(1)
            return QnWeight(tuple(theta))
        while True:
            raw = [Fraction(rng.randint(0, 8)) for _ in range(n)]
            s = sum(raw)
            if s == 0:
                continue
            th = [2 * v / s for v in raw]
            if all(v <= 1 for v in th):
                return QnWeight(tuple(th))
    while True:
        raw = [Fraction(rng.randint(0, 8)) for _ in range(n)]
        s = sum(raw)
        if s == 0:
            continue
        th = tuple(v / s for v in raw)
        break
    e1 = -Fraction(rng.randint(0, 8), 8)
    return PnWeight(e1, -1 - e1, th)


def suite_stability_oracle(seed: int, bounds: dict) -> dict:
    rep = _Report("stability-oracle")
    exhaustive = bounds.get("exhaustive_n", (3, 4, 5))
    for n in exhaustive:
        weights_qn = [c.witness for c in enumerate_chambers(QN, n)]
        weights_qn += [wall_relative_interior_point(QN, n, w) for w in enumerate_walls(QN, n)]
        for blocks, cfg in _qn_partition_configs(n):
            for w in weights_qn:
                va = is_semistable(cfg, w)
                vb = brute_force_semistable(cfg, w)
                if not rep.expect(
                    va.kind == vb.kind,
                    lambda: {"mode": QN, "n": n, "partition": blocks, "weight": repr(w.theta), "fast": va.kind, "oracle": vb.kind},
                ):
                    return rep.result()
        weights_pn = [c.witness for c in enumerate_chambers(PN, n)]
        weights_pn += [wall_relative_interior_point(PN, n, w) for w in enumerate_walls(PN, n)]
        for blocks, j0, jinf, cfg in _pn_partition_configs(n):
            for w in weights_pn:
                va = is_semistable(cfg, w)
                vb = brute_force_semistable(cfg, w)
                if not rep.expect(
                    va.kind == vb.kind,
                    lambda: {"mode": PN, "n": n, "partition": blocks, "j0": j0, "jinf": jinf, "fast": va.kind, "oracle": vb.kind},
                ):
                    return rep.result()
    rng = _rng(seed, "stability-oracle")
    total = bounds.get("random_instances", 2000)
    random_n = bounds.get("random_n", (6, 7))
    cases = [(m, n) for m in (QN, PN) for n in random_n]
    per = total // len(cases)
    for mode, n in cases:
        for _ in range(per):
            cfg = _random_config(rng, mode, n)
            w = _random_weight(rng, mode, n)
            va = is_semistable(cfg, w)
            vb = brute_force_semistable(cfg, w)
            if not rep.expect(
                va.kind == vb.kind,
                lambda: {"mode": mode, "n": n, "config": repr(cfg), "weight": repr(w), "fast": va.kind, "oracle": vb.kind},
            ):
                return rep.result()
    return rep.result()


def suite_theta_polytope(seed: int, bounds: dict) -> dict:
    rep = _Report("theta-polytope")
    for n in bounds.get("ns", (4, 5, 6)):
        vertex_weights = {}
        for i, j in itertools.combinations(range(n), 2):
            theta = [Fraction(0)] * n
            theta[i] = theta[j] = Fraction(1)
            vertex_weights[(i, j)] = QnWeight(tuple(theta))
        for blocks, cfg in _qn_partition_configs(n):
            poly = theta_polytope(cfg)
            verts, _ = chambers.stability_polytope(poly)
            got = {
                tuple(k for k, v in enumerate(w.theta) if v == 1) for w in verts
            }
            want = {
                pair
                for pair, w in vertex_weights.items()
                if is_semistable(cfg, w).semistable
            }
            if not rep.expect(
                got == want,
                lambda: {"n": n, "partition": blocks, "vertices": sorted(got), "semistable_vertices": sorted(want)},
            ):
                return rep.result()
    return rep.result()


def _qn_grid(n: int, den: int):
    for combo in itertools.product(range(1, den), repeat=n - 1):
        last = 2 * den - sum(combo)
        if not 0 < last < den:
            continue
        yield combo + (last,)


def _pn_grid(n: int, den: int):
    for h in range(1, den):
        for combo in itertools.product(range(1, den), repeat=n - 1):
            last = den - sum(combo)
            if not 0 < last < den:
                continue
            yield h, combo + (last,)


def _qn_signs(point: tuple[int, ...], walls, den: int):
    out = []
    for w in walls:
        v = sum(point[i] for i in w.j) - den
        if v == 0:
            return None
        out.append(1 if v > 0 else -1)
    return tuple(out)


def _pn_signs(h: int, point: tuple[int, ...], walls):
    out = []
    for w in walls:
        v = sum(point[i] for i in w.j) - h
        if v == 0:
            return None
        out.append(1 if v > 0 else -1)
    return tuple(out)


def _distinguishing_partition(mode: str, n: int, wall):
    if mode == QN:
        blocks = [tuple(sorted(wall.j))] + [(i,) for i in range(n) if i not in wall.j]
        pts = config_points_for_partition(blocks, n)
        return blocks, QnConfig(tuple(pts))
    blocks = [tuple(sorted(wall.j))] + [(i,) for i in range(n) if i not in wall.j]
    pts = config_points_for_partition(blocks, n, j0=(), jinf=tuple(sorted(wall.j)))
    return blocks, PnConfig(tuple(pts))


def suite_chambers_vs_grid(seed: int, bounds: dict) -> dict:
    rep = _Report("chambers-vs-grid")
    plans = bounds.get(
        "plans", ((QN, 4, 8), (QN, 5, 12), (PN, 2, 8), (PN, 3, 8))
    )
    for mode, n, den in plans:
        walls = enumerate_walls(mode, n)
        chs = enumerate_chambers(mode, n)
        sign_set = {c.signs for c in chs}
        buckets: dict[tuple[int, ...], tuple] = {}
        if mode == QN:
            for pt in _qn_grid(n, den):
                sg = _qn_signs(pt, walls, den)
                if sg is not None:
                    buckets.setdefault(sg, pt)
        else:
            for h, pt in _pn_grid(n, den):
                sg = _pn_signs(h, pt, walls)
                if sg is not None:
                    buckets.setdefault(sg, (h, pt))
        if not rep.expect(
            set(buckets) == sign_set,
            lambda: {
                "mode": mode,
                "n": n,
                "grid_only": sorted(set(buckets) - sign_set)[:3],
                "enumerated_only": sorted(sign_set - set(buckets))[:3],
            },
        ):
            return rep.result()
        # adjacency: grid steps crossing exactly one wall versus the exact test
        adj = {
            frozenset((chs[i].signs, chs[k].signs))
            for i, k in chamber_adjacency(mode, n, chs)
        }
        # wall sums move by at most one grid unit per unit step, so a unit
        # step always lands on the wall it meets; steps of two units jump
        # across, and a jump changing exactly one sign crosses exactly that
        # wall in its relative interior (two walls at once would change two)
        grid_adj = set()
        if mode == QN:
            lookup = {}
            for pt in _qn_grid(n, den):
                sg = _qn_signs(pt, walls, den)
                if sg is not None:
                    lookup[pt] = sg
            for pt, sg in lookup.items():
                for i, j in itertools.permutations(range(n), 2):
                    q = list(pt)
                    q[i] += 2
                    q[j] -= 2
                    sg2 = lookup.get(tuple(q))
                    if sg2 is not None and sg2 != sg:
                        if sum(1 for a, b in zip(sg, sg2) if a != b) == 1:
                            grid_adj.add(frozenset((sg, sg2)))
        else:
            lookup = {}
            for h, pt in _pn_grid(n, den):
                sg = _pn_signs(h, pt, walls)
                if sg is not None:
                    lookup[(h, pt)] = sg
            for (h, pt), sg in lookup.items():
                moves = [(h + 2, pt), (h - 2, pt)]
                for i, j in itertools.permutations(range(n), 2):
                    q = list(pt)
                    q[i] += 2
                    q[j] -= 2
                    moves.append((h, tuple(q)))
                    q = list(pt)
                    q[i] += 1
                    q[j] -= 1
                    moves.append((h + 1, tuple(q)))
                    moves.append((h - 1, tuple(q)))
                for key in moves:
                    sg2 = lookup.get(key)
                    if sg2 is not None and sg2 != sg:
                        if sum(1 for a, b in zip(sg, sg2) if a != b) == 1:
                            grid_adj.add(frozenset((sg, sg2)))
        if not rep.expect(
            grid_adj == adj,
            lambda: {"mode": mode, "n": n, "grid_edges": len(grid_adj), "exact_edges": len(adj)},
        ):
            return rep.result()
        # witness equivalence within a chamber, difference across chambers
        if mode == QN:
            partition_data = [
                (blocks, cfg) for blocks, cfg in _qn_partition_configs(n)
            ]
        else:
            partition_data = [
                (blocks + [("j0", j0), ("jinf", jinf)], cfg)
                for blocks, j0, jinf, cfg in _pn_partition_configs(n)
            ]
        for c in chs:
            w2 = chamber_second_witness(mode, n, c)
            if not rep.expect(
                classify_weight(w2).generic and classify_weight(w2).signs == c.signs,
                lambda: {"mode": mode, "n": n, "signs": c.signs, "issue": "second witness leaves the chamber"},
            ):
                return rep.result()
            for blocks, cfg in partition_data:
                if not rep.expect(
                    is_semistable(cfg, c.witness).kind == is_semistable(cfg, w2).kind,
                    lambda: {"mode": mode, "n": n, "signs": c.signs, "partition": blocks},
                ):
                    return rep.result()
        for ci, ck in itertools.combinations(range(len(chs)), 2):
            diffs = [
                t for t in range(len(walls)) if chs[ci].signs[t] != chs[ck].signs[t]
            ]
            wall = walls[diffs[0]]
            _, cfg = _distinguishing_partition(mode, n, wall)
            va = is_semistable(cfg, chs[ci].witness).kind
            vb = is_semistable(cfg, chs[ck].witness).kind
            if not rep.expect(
                va != vb,
                lambda: {"mode": mode, "n": n, "pair": (ci, ck), "wall": list(wall.j)},
            ):
                return rep.result()
    return rep.result()


def suite_chart_stability(seed: int, bounds: dict) -> dict:
    rep = _Report("chart-stability")
    max_n = bounds.get("max_n", 6)
    for n in range(3, max_n + 1):
        for blocks, cfg in _qn_partition_configs(n):
            block_of = {}
            for bi, b in enumerate(blocks):
                for i in b:
                    block_of[i] = bi
            for t in itertools.combinations(range(n), 3):
                w = chart_weight_qn(n, t)
                stable = is_semistable(cfg, w).kind == configs.STABLE
                distinct = len({block_of[i] for i in t}) == 3
                if not rep.expect(
                    stable == distinct,
                    lambda: {"n": n, "partition": blocks, "triple": t, "stable": stable},
                ):
                    return rep.result()
    for n in range(1, max_n + 1):
        seen: dict[tuple, dict[int, str]] = {}
        for blocks, j0, jinf, cfg in _pn_partition_configs(n):
            key = (j0, jinf)
            verdicts = {}
            for i in range(n):
                w = chart_weight_pn(n, i)
                v = is_semistable(cfg, w)
                verdicts[i] = v.kind
                h1, h2 = -w.eta1, -w.eta2
                expected = (
                    configs.UNSTABLE
                    if sum(w.theta[k] for k in jinf) > h1 or sum(w.theta[k] for k in j0) > h2
                    else configs.STABLE
                    if sum(w.theta[k] for k in jinf) < h1 and sum(w.theta[k] for k in j0) < h2
                    else configs.STRICTLY_SEMISTABLE
                )
                if not rep.expect(
                    v.kind == expected,
                    lambda: {"n": n, "j0": j0, "jinf": jinf, "chart": i, "got": v.kind, "want": expected},
                ):
                    return rep.result()
                if not rep.expect(
                    not (v.kind == configs.STABLE and i in set(j0) | set(jinf)),
                    lambda: {"n": n, "issue": "chart stable although its section sits at an anchor", "chart": i},
                ):
                    return rep.result()
            if key in seen:
                if not rep.expect(
                    seen[key] == verdicts,
                    lambda: {"n": n, "key": key, "issue": "verdict depends on more than the anchor classes"},
                ):
                    return rep.result()
            else:
                seen[key] = verdicts
    return rep.result()


def _gk_corpus(seed: int, bounds: dict):
    """Deterministic catalogue of stable trees: exhaustive shapes for small n
    with seeded coordinates, plus random larger trees."""
    rng = _rng(seed, "gk-corpus")
    per_shape = bounds.get("per_shape", 200)
    for n in bounds.get("exhaustive_n", (3, 4, 5)):
        for splits in enumerate_split_systems(n):
            for k in range(per_shape):
                if k == 0:
                    yield tree_from_splits(n, splits)
                else:
                    yield tree_from_splits(n, splits, rng)
    for n, count in sorted(bounds.get("random", {6: 300, 7: 200}).items()):
        for _ in range(count):
            yield random_gk_tree(rng, int(n))


def suite_roundtrip_gk(seed: int, bounds: dict) -> dict:
    rep = _Report("roundtrip-gk")
    for tree in _gk_corpus(seed, bounds):
        fam = moduli_coordinates(tree, GK)
        rebuilt = reconstruct_tree(fam)
        if not rep.expect(
            tree_isomorphic(tree, rebuilt),
            lambda: {"n": tree.n, "tree": repr(tree)},
        ):
            return rep.result()
        if not rep.expect(
            moduli_coordinates(rebuilt, GK) == fam,
            lambda: {"n": tree.n, "issue": "family not reproduced", "tree": repr(tree)},
        ):
            return rep.result()
    return rep.result()


def suite_roundtrip_lm(seed: int, bounds: dict) -> dict:
    rep = _Report("roundtrip-lm")
    rng = _rng(seed, "lm-corpus")
    per_shape = bounds.get("per_shape", 3)
    for n in bounds.get("exhaustive_n", (1, 2, 3, 4, 5)):
        for shape in enumerate_chain_shapes(list(range(n))):
            for k in range(per_shape):
                chain = chain_from_shape(shape, rng if k else None, coincide=k == 2)
                fam = lm_moduli_coordinates(chain)
                reports = verify_functor_conditions(fam)
                if not rep.expect(
                    family_passes(reports),
                    lambda: {"n": n, "shape": shape, "failed": [r.name for r in reports if not r.passed]},
                ):
                    return rep.result()
                rebuilt = reconstruct_tree(fam)
                if not rep.expect(
                    chain_isomorphic(chain, rebuilt) and lm_moduli_coordinates(rebuilt) == fam,
                    lambda: {"n": n, "shape": shape},
                ):
                    return rep.result()
    for _ in range(bounds.get("random_n6", 300)):
        chain = random_chain(rng, list(range(6)))
        fam = lm_moduli_coordinates(chain)
        rebuilt = reconstruct_tree(fam)
        if not rep.expect(
            chain_isomorphic(chain, rebuilt),
            lambda: {"n": 6, "chain": repr(chain)},
        ):
            return rep.result()
    return rep.result()


def _hassett_corpus(seed: int, bounds: dict):
    rng = _rng(seed, "hassett-corpus")
    for n in bounds.get("ns", (3, 4, 5)):
        for _ in range(bounds.get("weights_per_n", 20)):
            a = random_hassett_weight(rng, n)
            for _ in range(bounds.get("trees_per_weight", 3)):
                yield a, random_a_stable_tree(rng, n, a)


def suite_roundtrip_hassett(seed: int, bounds: dict) -> dict:
    rep = _Report("roundtrip-hassett")
    rng = _rng(seed, "hassett-mutations")
    for a, tree in _hassett_corpus(seed, bounds):
        fam = moduli_coordinates(tree, HASSETT, a)
        reports = verify_functor_conditions(fam)
        if not rep.expect(
            family_passes(reports),
            lambda: {"a": [str(v) for v in a], "failed": [r.name for r in reports if not r.passed]},
        ):
            return rep.result()
        rebuilt = reconstruct_tree(fam)
        if not rep.expect(
            tree_isomorphic(tree, rebuilt) and moduli_coordinates(rebuilt, HASSETT, a) == fam,
            lambda: {"a": [str(v) for v in a], "tree": repr(tree)},
        ):
            return rep.result()
        # deleting one active chart set must be detected
        tset = rng.choice(fam.active_sets())
        pruned = {
            lbl: row for lbl, row in fam.charts.items() if tuple(sorted(lbl)) != tset
        }
        broken = LimitFamily(HASSETT, fam.n, pruned, fam.a)
        if not rep.expect(
            not family_passes(verify_functor_conditions(broken)),
            lambda: {"a": [str(v) for v in a], "dropped": tset, "issue": "deletion not detected"},
        ):
            return rep.result()
        # perturbing one section must be detected
        label = rng.choice(sorted(fam.charts))
        row = list(fam.charts[label])
        idx = rng.choice([k for k in range(fam.n)])
        old = row[idx]
        row[idx] = generate.affine(Fraction(31, 7)) if old != generate.affine(Fraction(31, 7)) else generate.affine(Fraction(32, 7))
        charts2 = dict(fam.charts)
        charts2[label] = tuple(row)
        mutated = LimitFamily(HASSETT, fam.n, charts2, fam.a)
        if not rep.expect(
            not family_passes(verify_functor_conditions(mutated)),
            lambda: {"a": [str(v) for v in a], "label": label, "index": idx, "issue": "perturbation not detected"},
        ):
            return rep.result()
    return rep.result()


def suite_hassett_special(seed: int, bounds: dict) -> dict:
    rep = _Report("hassett-special")
    rng = _rng(seed, "hassett-special")
    per_shape = bounds.get("per_shape", 5)
    for n in bounds.get("ns", (3, 4, 5)):
        ones = (Fraction(1),) * n
        for splits in enumerate_split_systems(n):
            for k in range(per_shape):
                tree = tree_from_splits(n, splits, rng if k else None)
                if not rep.expect(
                    is_a_stable(tree, ones) == is_gk_stable(tree),
                    lambda: {"n": n, "splits": splits},
                ):
                    return rep.result()
        # coincident marks: never stable for unit weights, never classically
        pts = random_points(rng, n - 1)
        secs = [(0, "c0", pts[0]), (1, "c0", pts[0])] + [
            (k, "c0", pts[k - 1]) for k in range(2, n)
        ]
        tree = curves.PointedTree(("c0",), (), tuple(secs))
        if not rep.expect(
            is_a_stable(tree, ones) == is_gk_stable(tree) == False,
            lambda: {"n": n, "issue": "coincident marks accepted"},
        ):
            return rep.result()
        # chains versus weighted trees with two heavy marks
        a_lm = lm_specialization_weights(n)
        for shape in heavy_tree_shapes(n):
            for k in range(per_shape):
                chain = chain_from_shape(shape, rng if k else None, coincide=k == 2)
                tree = tree_from_chain(chain, n)
                if not rep.expect(
                    is_a_stable(tree, a_lm),
                    lambda: {"n": n, "shape": shape, "issue": "heavy tree unstable"},
                ):
                    return rep.result()
                back = chain_from_tree(tree)
                if not rep.expect(
                    chain_isomorphic(chain, back),
                    lambda: {"n": n, "shape": shape, "issue": "chain not recovered"},
                ):
                    return rep.result()
        for _ in range(10):
            tree = random_a_stable_tree(rng, n, a_lm)
            chain = chain_from_tree(tree)
            again = tree_from_chain(chain, n)
            if not rep.expect(
                tree_isomorphic(tree, again),
                lambda: {"n": n, "tree": repr(tree)},
            ):
                return rep.result()
    return rep.result()


def suite_qn2_pn(seed: int, bounds: dict) -> dict:
    rep = _Report("qn2-pn")
    rng = _rng(seed, "qn2-pn")
    for _ in range(bounds.get("instances", 500)):
        n = rng.randint(1, bounds.get("pn_max", 5))
        n2 = n + 2
        a, b = rng.sample(range(n2), 2)
        w = random_vertex_cone_weight(rng, n2, a, b)
        cfg = _random_config(rng, QN, n2)
        vq = is_semistable(cfg, w)
        sa, sb = cfg.sections[a], cfg.sections[b]
        degenerate = sa is None or sb is None or (sa == sb)
        if degenerate:
            if not rep.expect(
                vq.kind == configs.UNSTABLE,
                lambda: {"n": n, "issue": "degenerate anchors but not unstable", "verdict": vq.kind},
            ):
                return rep.result()
            continue
        w2 = project_weight_to_pn(w, a, b)
        cfg2 = map_config_qn2_pn(cfg, a, b)
        vp = is_semistable(cfg2, w2)
        if not rep.expect(
            vq.kind == vp.kind,
            lambda: {"n": n, "a": a, "b": b, "qn": vq.kind, "pn": vp.kind, "config": repr(cfg)},
        ):
            return rep.result()
        vqo = brute_force_semistable(cfg, w)
        vpo = brute_force_semistable(cfg2, w2)
        if not rep.expect(
            vqo.kind == vq.kind and vpo.kind == vp.kind,
            lambda: {"n": n, "issue": "oracle disagrees", "config": repr(cfg)},
        ):
            return rep.result()
    # wall correspondence: relative interior points map onto the matching wall
    for n in range(1, bounds.get("pn_max", 5) + 1):
        n2 = n + 2
        a, b = 0, 1
        idx = {k: i for i, k in enumerate([k for k in range(n2) if k not in (a, b)])}
        for wall in enumerate_walls(PN, n):
            wpt = wall_relative_interior_point(PN, n, wall)
            for mu_num in (1, 2):
                mu = Fraction(mu_num, 3)
                theta = [Fraction(0)] * n2
                theta[a] = mu * (wpt.eta1 + 1) + (1 - mu)
                theta[b] = mu * (wpt.eta2 + 1) + (1 - mu)
                for k in range(n2):
                    if k not in (a, b):
                        theta[k] = mu * wpt.theta[idx[k]]
                qw = QnWeight(tuple(theta))
                cls = classify_weight(qw)
                expect_wall = chambers.canonical_qn_wall(
                    n2, tuple(sorted({a} | {k for k in range(n2) if k not in (a, b) and idx[k] in wall.j}))
                )
                if not rep.expect(
                    cls.inner == (expect_wall,) and not cls.outer,
                    lambda: {"n": n, "wall": list(wall.j), "lifted": repr(qw.theta), "classified": repr(cls)},
                ):
                    return rep.result()
                back = project_weight_to_pn(qw, a, b)
                if not rep.expect(
                    classify_weight(back).inner == (wall,),
                    lambda: {"n": n, "wall": list(wall.j), "issue": "projection leaves the wall"},
                ):
                    return rep.result()
    return rep.result()


def _admissible_anchor_pairs(cfg_a: QnConfig, cfg_b: QnConfig):
    n = cfg_a.n
    for i, j in itertools.combinations(range(n), 2):
        if (
            cfg_a.sections[i] != cfg_a.sections[j]
            and cfg_b.sections[i] != cfg_b.sections[j]
        ):
            yield i, j


def suite_limit_equations(seed: int, bounds: dict) -> dict:
    rep = _Report("limit-equations")
    corpus_bounds = bounds.get("corpus", {"exhaustive_n": (3, 4, 5), "per_shape": 200, "random": {6: 300, 7: 200}})
    for tree in _gk_corpus(seed, corpus_bounds):
        fam = moduli_coordinates(tree, GK)
        active = fam.active_sets()
        cfgs = {t: QnConfig(tuple(fam.charts[tuple(t)])) for t in active}
        splits = {
            frozenset(lb for lb, comp, _ in tree.marks if comp in side)
            for side in _edge_sides(tree)
        }
        for ta, tb in itertools.combinations(active, 2):
            ca, cb = cfgs[ta], cfgs[tb]
            pairs = list(_admissible_anchor_pairs(ca, cb))
            if not rep.expect(bool(pairs), lambda: {"n": tree.n, "pair": (ta, tb), "issue": "no admissible anchors"}):
                return rep.result()
            for i, j in pairs:
                if not rep.expect(
                    check_limit_equations(ca, cb, i, j),
                    lambda: {"n": tree.n, "charts": (ta, tb), "anchors": (i, j)},
                ):
                    return rep.result()
            i, j = pairs[0]
            fiber = glue_fiber(ca, cb, i, j)
            equivalent = moebius_equivalent(ca, cb)
            if not rep.expect(
                (fiber.kind == configs.IRREDUCIBLE) == equivalent,
                lambda: {"n": tree.n, "charts": (ta, tb), "kind": fiber.kind, "equivalent": equivalent},
            ):
                return rep.result()
            if fiber.kind == configs.TWO_COMPONENTS:
                full = frozenset(range(tree.n))
                for side in (fiber.marks_on_b, fiber.marks_on_a):
                    ok = side in splits or full - side in splits
                    if not rep.expect(
                        ok,
                        lambda: {"n": tree.n, "charts": (ta, tb), "side": sorted(side), "issue": "collapse side is not a tree split"},
                    ):
                        return rep.result()
    return rep.result()


def _edge_sides(tree):
    adj = {c: [] for c in tree.components}
    for e in tree.edges:
        adj[e.ends[0]].append(e)
        adj[e.ends[1]].append(e)
    for e in tree.edges:
        side = {e.ends[0]}
        stack = [e.ends[0]]
        while stack:
            c = stack.pop()
            for f in adj[c]:
                if f is e:
                    continue
                d = f.other(c)
                if d not in side:
                    side.add(d)
                    stack.append(d)
        yield side


def suite_five_term(seed: int, bounds: dict) -> dict:
    rep = _Report("five-term")
    rng = _rng(seed, "five-term")
    for _ in range(bounds.get("instances", 1000)):
        pts = random_points(rng, 5)
        cfg = QnConfig(tuple(pts))
        charts = {}
        for order in itertools.permutations(range(5), 3):
            charts[order] = normalize_chart_qn(cfg, order).sections
        fam = LimitFamily(GK, 5, charts)
        reports = verify_functor_conditions(fam)
        if not rep.expect(
            family_passes(reports),
            lambda: {"points": repr(pts), "failed": [r.name for r in reports if not r.passed]},
        ):
            return rep.result()
    return rep.result()


def suite_covering(seed: int, bounds: dict) -> dict:
    rep = _Report("covering")
    corpus_bounds = bounds.get("corpus", {"exhaustive_n": (3, 4, 5), "per_shape": 200, "random": {6: 300, 7: 200}})
    for tree in _gk_corpus(seed, corpus_bounds):
        fam = moduli_coordinates(tree, GK)
        covered, witness = charts_cover_hypersimplex(fam)
        if not rep.expect(covered, lambda: {"n": tree.n, "uncovered_triple": witness}):
            return rep.result()
    # exact arrangement decision on the small exhaustive shapes
    for n in bounds.get("lp_ns", (3, 4, 5)):
        for splits in enumerate_split_systems(n):
            tree = tree_from_splits(n, splits)
            fam = moduli_coordinates(tree, GK)
            polys = [
                theta_polytope(QnConfig(tuple(fam.charts[tuple(t)])))
                for t in fam.active_sets()
            ]
            covered, witness = cover_check(polys, QN, n)
            if not rep.expect(
                covered,
                lambda: {"n": n, "splits": splits, "witness": repr(witness)},
            ):
                return rep.result()
    # weighted targets
    for a, tree in _hassett_corpus(seed, bounds.get("hassett", {"ns": (3, 4, 5), "weights_per_n": 20, "trees_per_weight": 3})):
        fam = moduli_coordinates(tree, HASSETT, a)
        polys = [
            theta_polytope(QnConfig(tuple(fam.charts[tuple(t)])))
            for t in fam.active_sets()
        ]
        covered, witness = cover_check(polys, QN, tree.n, a)
        if not rep.expect(
            covered,
            lambda: {"n": tree.n, "a": [str(v) for v in a], "witness": repr(witness)},
        ):
            return rep.result()
        # the weighted polytopes need not cover the whole hypersimplex: a
        # two-component tree never does
        if len(tree.components) > 1:
            covered_all, _ = cover_check(polys, QN, tree.n)
            coverable, _ = charts_cover_hypersimplex(fam)
            if not rep.expect(
                covered_all == coverable,
                lambda: {"n": tree.n, "issue": "combinatorial and arrangement covering disagree"},
            ):
                return rep.result()
    return rep.result()


SUITES = {
    "stability-oracle": suite_stability_oracle,
    "theta-polytope": suite_theta_polytope,
    "chambers-vs-grid": suite_chambers_vs_grid,
    "chart-stability": suite_chart_stability,
    "roundtrip-gk": suite_roundtrip_gk,
    "roundtrip-lm": suite_roundtrip_lm,
    "roundtrip-hassett": suite_roundtrip_hassett,
    "five-term": suite_five_term,
    "hassett-special": suite_hassett_special,
    "qn2-pn": suite_qn2_pn,
    "covering": suite_covering,
    "limit-equations": suite_limit_equations,
}


def run_suite(name: str, seed: int = DEFAULT_SEED, bounds: Optional[dict] = None) -> dict:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {sorted(SUITES)}")
    return SUITES[name](seed, bounds or {})


def run_all(seed: int = DEFAULT_SEED, bounds: Optional[dict] = None) -> list[dict]:
    bounds = bounds or {}
    return [SUITES[name](seed, bounds.get(name, {})) for name in sorted(SUITES)]
