"""Stable pointed trees and chains of projective lines.

A pointed tree is a tree of components, each a projective line: edges carry
one node point per incident component, marks are labelled points.  Three
stability notions act on these objects: the classical one (every component
has at least three special points, marks pairwise distinct), the weighted
one (coinciding marks may carry total weight at most 1 and every component
needs node count plus resident weight above 2), and the chain version
(path-shaped trees glued 0-to-infinity with at least one mark per
component).

Every stable object is encoded by its chart coordinates: contract the tree
onto the unique component where three chosen marks stay distinct and
normalize those marks to (0:1), (1:0), (1:1).  The resulting family of
normalized configurations satisfies exact polynomial identities, and the
tree can be rebuilt from the family alone; `reconstruct_tree` inverts
`moduli_coordinates` exactly.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Sequence, Union

from .chambers import QN, HassettPolytope, cover_check
from .configs import (
    QnConfig,
    coincidence_partition,
    moebius_equivalent,
    theta_polytope,
)
from .projline import (
    INF_POINT,
    ONE_POINT,
    ZERO_POINT,
    Moebius,
    ProjPoint,
    moebius_from_triple,
    moebius_two_point,
)


class UnstableInputError(ValueError):
    """The tree or chain is not stable in the requested mode."""


class InconsistentFamilyError(ValueError):
    """A chart family violating the functor conditions."""

    def __init__(self, condition: str, witness=None):
        super().__init__(f"family fails condition {condition!r}")
        self.condition = condition
        self.witness = witness


@dataclass(frozen=True)
class TreeEdge:
    ends: tuple[str, str]
    nodes: tuple[ProjPoint, ProjPoint]

    def node_at(self, comp: str) -> ProjPoint:
        return self.nodes[self.ends.index(comp)]

    def other(self, comp: str) -> str:
        a, b = self.ends
        return b if comp == a else a


@dataclass(frozen=True)
class PointedTree:
    """Components, edges with node coordinates, and labelled marks."""

    components: tuple[str, ...]
    edges: tuple[TreeEdge, ...]
    marks: tuple[tuple[int, str, ProjPoint], ...]  # (label, component, point)

    def __post_init__(self):
        object.__setattr__(
            self, "marks", tuple(sorted(self.marks, key=lambda m: m[0]))
        )

    @property
    def labels(self) -> tuple[int, ...]:
        return tuple(m[0] for m in self.marks)

    @property
    def n(self) -> int:
        return len(self.marks)


def validate_tree(tree: PointedTree) -> None:
    comps = list(tree.components)
    if len(set(comps)) != len(comps) or not comps:
        raise ValueError("components must be nonempty and distinct")
    cset = set(comps)
    labels = [m[0] for m in tree.marks]
    if len(set(labels)) != len(labels):
        raise ValueError("mark labels must be distinct")
    adj: dict[str, list[str]] = {c: [] for c in comps}
    for e in tree.edges:
        a, b = e.ends
        if a not in cset or b not in cset or a == b:
            raise ValueError(f"bad edge {e.ends}")
        adj[a].append(b)
        adj[b].append(a)
    if len(tree.edges) != len(comps) - 1:
        raise ValueError("edge count must be component count minus one")
    seen = {comps[0]}
    stack = [comps[0]]
    while stack:
        c = stack.pop()
        for d in adj[c]:
            if d not in seen:
                seen.add(d)
                stack.append(d)
    if seen != cset:
        raise ValueError("component graph must be connected")
    for _, comp, _ in tree.marks:
        if comp not in cset:
            raise ValueError("mark on an undeclared component")
    for c in comps:
        nodes = [e.node_at(c) for e in tree.edges if c in e.ends]
        if len({p.ihom for p in nodes}) != len(nodes):
            raise ValueError(f"node points on component {c} must be pairwise distinct")
        node_set = {p.ihom for p in nodes}
        for label, comp, p in tree.marks:
            if comp == c and p.ihom in node_set:
                raise ValueError(f"mark {label} sits on a node of component {c}")


def _mark_point(tree: PointedTree, label: int) -> tuple[str, ProjPoint]:
    for lb, comp, p in tree.marks:
        if lb == label:
            return comp, p
    raise KeyError(label)


def _adjacency(tree: PointedTree) -> dict[str, list[TreeEdge]]:
    adj: dict[str, list[TreeEdge]] = {c: [] for c in tree.components}
    for e in tree.edges:
        adj[e.ends[0]].append(e)
        adj[e.ends[1]].append(e)
    return adj


def mark_images(tree: PointedTree) -> dict[str, dict[int, ProjPoint]]:
    """For each component, the image of every mark under contraction onto
    that component: resident marks keep their point, marks in a neighboring
    subtree land on the node point in that direction."""
    adj = _adjacency(tree)
    # component -> component -> first edge on the path
    first_edge: dict[str, dict[str, TreeEdge]] = {}
    for c in tree.components:
        fe: dict[str, TreeEdge] = {}
        stack = [(c, None)]
        order = [(c, None)]
        seen = {c}
        while stack:
            cur, via = stack.pop()
            for e in adj[cur]:
                d = e.other(cur)
                if d not in seen:
                    seen.add(d)
                    entry = via if via is not None else e
                    fe[d] = entry
                    stack.append((d, entry))
        first_edge[c] = fe
    images: dict[str, dict[int, ProjPoint]] = {}
    for c in tree.components:
        table: dict[int, ProjPoint] = {}
        for label, comp, p in tree.marks:
            if comp == c:
                table[label] = p
            else:
                table[label] = first_edge[c][comp].node_at(c)
        images[c] = table
    return images


# ---------------------------------------------------------------------------
# Stability notions.


def is_gk_stable(tree: PointedTree) -> bool:
    """Marks pairwise distinct and every component with >= 3 special points."""
    validate_tree(tree)
    spots = set()
    for label, comp, p in tree.marks:
        key = (comp, p.ihom)
        if key in spots:
            return False
        spots.add(key)
    adj = _adjacency(tree)
    for c in tree.components:
        marks_here = sum(1 for _, comp, _ in tree.marks if comp == c)
        if marks_here + len(adj[c]) < 3:
            return False
    return True


def check_hassett_weight(a: Sequence[Fraction]) -> tuple[Fraction, ...]:
    return HassettPolytope(tuple(a)).a


def is_a_stable(tree: PointedTree, a: Sequence[Fraction]) -> bool:
    """Weighted stability: coinciding marks carry total weight at most 1 and
    each component has node count plus resident weight above 2."""
    validate_tree(tree)
    aw = check_hassett_weight(a)
    if len(aw) != tree.n or tree.labels != tuple(range(tree.n)):
        raise ValueError("weight vector must match the mark labels 0..n-1")
    clusters: dict[tuple[str, tuple[int, int]], Fraction] = {}
    for label, comp, p in tree.marks:
        key = (comp, p.ihom)
        clusters[key] = clusters.get(key, Fraction(0)) + aw[label]
    if any(total > 1 for total in clusters.values()):
        return False
    adj = _adjacency(tree)
    for c in tree.components:
        resident = sum(aw[label] for label, comp, _ in tree.marks if comp == c)
        if len(adj[c]) + resident <= 2:
            return False
    return True


@dataclass(frozen=True)
class Chain:
    """Path of projective lines glued 0-to-infinity, ordered from the free
    zero anchor to the free infinity anchor; marks avoid 0 and infinity on
    their component.  Distinct marks may share a point."""

    components: tuple[tuple[tuple[int, ProjPoint], ...], ...]

    def __post_init__(self):
        comps = tuple(
            tuple(sorted(c, key=lambda m: m[0])) for c in self.components
        )
        object.__setattr__(self, "components", comps)

    @property
    def labels(self) -> tuple[int, ...]:
        return tuple(sorted(lb for c in self.components for lb, _ in c))

    @property
    def n(self) -> int:
        return len(self.labels)


def validate_chain(chain: Chain) -> None:
    if not chain.components:
        raise ValueError("a chain needs at least one component")
    labels = [lb for c in chain.components for lb, _ in c]
    if len(set(labels)) != len(labels):
        raise ValueError("mark labels must be distinct")
    for c in chain.components:
        for lb, p in c:
            if p == ZERO_POINT or p == INF_POINT:
                raise ValueError(f"mark {lb} sits on an anchor or node point")


def is_lm_stable(chain: Chain) -> bool:
    """Every component carries at least one mark."""
    validate_chain(chain)
    return all(len(c) >= 1 for c in chain.components)


# ---------------------------------------------------------------------------
# Contractions and chart coordinates.


def contract_gamma(tree: PointedTree, keep: Iterable[int]) -> PointedTree:
    """Forget the marks outside `keep`, then contract components that drop
    below three special points; a contracted leaf deposits its residual mark
    on the attachment point of its neighbor."""
    keep_set = sorted(set(keep))
    if len(keep_set) < 3:
        raise ValueError("at least three marks must be kept")
    if not set(keep_set) <= set(tree.labels):
        raise ValueError("unknown mark labels")
    comps = list(tree.components)
    edges = [(e.ends[0], e.ends[1], e.nodes[0], e.nodes[1]) for e in tree.edges]
    marks = {lb: (comp, p) for lb, comp, p in tree.marks if lb in set(keep_set)}
    while True:
        deg = {c: 0 for c in comps}
        nmarks = {c: 0 for c in comps}
        for a, b, _, _ in edges:
            deg[a] += 1
            deg[b] += 1
        for comp, _ in marks.values():
            nmarks[comp] += 1
        weak = sorted(c for c in comps if deg[c] + nmarks[c] < 3)
        if not weak or len(comps) == 1:
            break
        c = weak[0]
        incident = [(k, e) for k, e in enumerate(edges) if c in (e[0], e[1])]
        if len(incident) == 1:
            k, (a, b, pa, pb) = incident[0]
            d, pd = (b, pb) if a == c else (a, pa)
            for lb in [lb for lb, (comp, _) in marks.items() if comp == c]:
                marks[lb] = (d, pd)
            edges.pop(k)
            comps.remove(c)
        elif len(incident) == 2:
            (k1, e1), (k2, e2) = incident
            d1, p1 = (e1[1], e1[3]) if e1[0] == c else (e1[0], e1[2])
            d2, p2 = (e2[1], e2[3]) if e2[0] == c else (e2[0], e2[2])
            for k in sorted((k1, k2), reverse=True):
                edges.pop(k)
            edges.append((d1, d2, p1, p2))
            comps.remove(c)
        else:
            raise AssertionError("a component below three special points has degree <= 2")
    return PointedTree(
        tuple(comps),
        tuple(TreeEdge((a, b), (pa, pb)) for a, b, pa, pb in edges),
        tuple((lb, comp, p) for lb, (comp, p) in sorted(marks.items())),
    )


def contract_to_chart(
    tree: PointedTree, triple: Sequence[int]
) -> Optional[dict[int, ProjPoint]]:
    """Contract onto the component where the three chosen marks separate and
    normalize them to (0:1), (1:0), (1:1); None when no component separates
    them (the chart is undefined at this tree)."""
    i1, i2, i3 = triple
    images = mark_images(tree)
    hits = []
    for c in tree.components:
        img = images[c]
        if len({img[i1].ihom, img[i2].ihom, img[i3].ihom}) == 3:
            hits.append(c)
    if not hits:
        return None
    assert len(hits) == 1, "three marks separate on at most one component"
    img = images[hits[0]]
    m = moebius_from_triple(img[i1], img[i2], img[i3])
    return {lb: m.apply(p) for lb, p in img.items()}


@dataclass
class LimitFamily:
    """Chart-indexed normalized configurations.

    For tree modes the keys are ordered triples of distinct labels and the
    values are full section tuples in label order; the active charts are
    exactly the keys.  For chains the keys are single labels.
    """

    mode: str  # "gk" | "hassett" | "lm"
    n: int
    charts: dict
    a: Optional[tuple[Fraction, ...]] = None

    def active_sets(self) -> list[tuple[int, ...]]:
        if self.mode == "lm":
            return sorted((k,) for k in self.charts)
        return sorted({tuple(sorted(k)) for k in self.charts})

    def __eq__(self, other):
        return (
            isinstance(other, LimitFamily)
            and self.mode == other.mode
            and self.n == other.n
            and self.a == other.a
            and self.charts == other.charts
        )


GK = "gk"
HASSETT = "hassett"
LM = "lm"


def moduli_coordinates(
    tree: PointedTree, mode: str = GK, a: Optional[Sequence[Fraction]] = None
) -> LimitFamily:
    """All chart coordinates of a stable pointed tree."""
    if tree.labels != tuple(range(tree.n)):
        raise ValueError("chart families require mark labels 0..n-1")
    if mode == GK:
        if not is_gk_stable(tree):
            raise UnstableInputError("tree is not stable")
        aw = None
    elif mode == HASSETT:
        if a is None:
            raise ValueError("weighted mode needs a weight vector")
        aw = check_hassett_weight(a)
        if not is_a_stable(tree, aw):
            raise UnstableInputError("tree is not stable for the given weights")
    else:
        raise ValueError("tree charts exist in modes 'gk' and 'hassett'")
    n = tree.n
    images = mark_images(tree)
    charts: dict[tuple[int, int, int], tuple[ProjPoint, ...]] = {}
    for tset in itertools.combinations(range(n), 3):
        comp = None
        for c in tree.components:
            img = images[c]
            if len({img[tset[0]].ihom, img[tset[1]].ihom, img[tset[2]].ihom}) == 3:
                assert comp is None
                comp = c
        if comp is None:
            if mode == GK:
                raise AssertionError("charts of a stable tree are total")
            continue
        img = images[comp]
        for order in itertools.permutations(tset):
            m = moebius_from_triple(img[order[0]], img[order[1]], img[order[2]])
            charts[order] = tuple(m.apply(img[k]) for k in range(n))
    return LimitFamily(mode, n, charts, aw)


def lm_moduli_coordinates(chain: Chain) -> LimitFamily:
    """Chart coordinates of a stable chain: contract onto the component of
    each mark, collapsing earlier components to (0:1) and later ones to
    (1:0), rescaled so the chart's own mark sits at (1:1)."""
    if not is_lm_stable(chain):
        raise UnstableInputError("chain is not stable")
    if chain.labels != tuple(range(chain.n)):
        raise ValueError("chart families require mark labels 0..n-1")
    n = chain.n
    comp_of = {}
    point_of = {}
    for ci, comp in enumerate(chain.components):
        for lb, p in comp:
            comp_of[lb] = ci
            point_of[lb] = p
    charts: dict[int, tuple[ProjPoint, ...]] = {}
    for i in range(n):
        ci = comp_of[i]
        s = point_of[i]
        scale = Moebius(s.c1, Fraction(0), Fraction(0), s.c0)
        row = []
        for j in range(n):
            cj = comp_of[j]
            if cj < ci:
                row.append(ZERO_POINT)
            elif cj > ci:
                row.append(INF_POINT)
            else:
                row.append(scale.apply(point_of[j]))
        charts[i] = tuple(row)
    return LimitFamily(LM, n, charts)


def hassett_chart_degree(blocks: Iterable[Iterable[int]], a: Sequence[Fraction]) -> Fraction:
    """Total weighted degree of a chart partition: each coincidence class
    contributes the smaller of 1 and its weight sum."""
    total = Fraction(0)
    for block in blocks:
        s = sum(a[i] for i in block)
        total += min(Fraction(1), s)
    return total


# ---------------------------------------------------------------------------
# Functor conditions.


@dataclass(frozen=True)
class ConditionReport:
    name: str
    passed: bool
    witness: object = None


def _ih(p: ProjPoint) -> tuple[int, int]:
    return p.ihom


def _check_anchor_rows(family: LimitFamily):
    for label, row in family.charts.items():
        i1, i2, i3 = label
        if row[i1] != ZERO_POINT or row[i2] != INF_POINT or row[i3] != ONE_POINT:
            return (label,)
    return None


def _check_permutation_identities(family: LimitFamily):
    charts = family.charts
    for (i1, i2, i3), row in charts.items():
        swapped = charts.get((i2, i1, i3))
        flipped = charts.get((i3, i2, i1))
        for i4 in range(family.n):
            if i4 in (i1, i2, i3):
                continue
            x0, x1 = _ih(row[i4])
            if swapped is not None:
                y0, y1 = _ih(swapped[i4])
                if y0 * x0 != y1 * x1:
                    return ((i1, i2, i3), i4, "swap01")
            if flipped is not None:
                z0, z1 = _ih(flipped[i4])
                if z0 * x1 != z1 * (x1 - x0):
                    return ((i1, i2, i3), i4, "swap0last")
    return None


def _check_exchange_identity(family: LimitFamily):
    charts = family.charts
    for (i1, i2, i3), row in charts.items():
        for i4 in range(family.n):
            if i4 in (i1, i2, i3):
                continue
            other = charts.get((i1, i2, i4))
            if other is None:
                continue
            x0, x1 = _ih(row[i4])
            y0, y1 = _ih(other[i3])
            if x0 * y0 != x1 * y1:
                return ((i1, i2, i3), i4)
    return None


def _check_five_term(family: LimitFamily):
    charts = family.charts
    for (i1, i2, i3), row in charts.items():
        for i4 in range(family.n):
            if i4 in (i1, i2, i3):
                continue
            other = charts.get((i1, i2, i4))
            if other is None:
                continue
            a0, a1 = _ih(row[i4])
            for i5 in range(family.n):
                if i5 in (i1, i2, i3, i4):
                    continue
                b0, b1 = _ih(row[i5])
                c0, c1 = _ih(other[i5])
                if a0 * b1 * c0 != a1 * b0 * c1:
                    return ((i1, i2, i3), i4, i5)
    return None


def _chart_blocks(row: Sequence[ProjPoint]) -> tuple[tuple[int, ...], ...]:
    return coincidence_partition(QnConfig(tuple(row))).blocks


def verify_functor_conditions(family: LimitFamily) -> list[ConditionReport]:
    """Check the defining identities of a chart family, with a concrete
    witness for each failed condition."""
    reports: list[ConditionReport] = []

    def add(name, witness):
        reports.append(ConditionReport(name, witness is None, witness))

    if family.mode == LM:
        w = None
        if sorted(family.charts) != list(range(family.n)):
            w = ("missing charts",)
        add("charts-complete", w)
        if w is not None:
            return reports
        w = None
        for i in range(family.n):
            if family.charts[i][i] != ONE_POINT:
                w = (i,)
                break
        add("diagonal-normalization", w)
        w = None
        for i in range(family.n):
            ci = family.charts[i]
            for j in range(family.n):
                cj = family.charts[j]
                for k in range(family.n):
                    a0, a1 = _ih(cj[i])
                    b0, b1 = _ih(ci[k])
                    c0, c1 = _ih(cj[k])
                    if a0 * b0 * c1 != a1 * b1 * c0:
                        w = (i, j, k)
                        break
                if w:
                    break
            if w:
                break
        add("triple-identity", w)
        return reports

    n = family.n
    all_labels = set(itertools.permutations(range(n), 3))
    if family.mode == GK:
        w = None if set(family.charts) == all_labels else ("missing or malformed chart labels",)
        add("charts-complete", w)
        if w is not None:
            return reports
    else:
        w = None
        if not set(family.charts) <= all_labels:
            w = ("malformed chart labels",)
        else:
            for tset in family.active_sets():
                for order in itertools.permutations(tset):
                    if order not in family.charts:
                        w = (tset, order)
                        break
                if w:
                    break
        add("ordering-closure", w)
        if w is not None:
            return reports
    bad_row = None
    for label, row in family.charts.items():
        if len(row) != n:
            bad_row = (label,)
            break
    add("row-shape", bad_row)
    if bad_row is not None:
        return reports
    add("anchor-normalization", _check_anchor_rows(family))
    add("permutation-identities", _check_permutation_identities(family))
    add("exchange-identity", _check_exchange_identity(family))
    add("five-term-identity", _check_five_term(family))

    if family.mode == HASSETT:
        if family.a is None:
            add("weight-data", ("missing weight vector",))
            return reports
        aw = family.a
        w = None
        for tset in family.active_sets():
            row = family.charts[tuple(tset)]
            if hassett_chart_degree(_chart_blocks(row), aw) <= 2:
                w = (tset,)
                break
        add("chart-degree", w)
        w = None
        active = family.active_sets()
        polys = [theta_polytope(QnConfig(tuple(family.charts[tuple(t)]))) for t in active]
        covered, uncovered = cover_check(polys, QN, n, aw)
        add("covering", None if covered else (uncovered,))
        w = None
        for tset in active:
            row = family.charts[tuple(tset)]
            for other in itertools.combinations(range(n), 3):
                if len({row[other[0]].ihom, row[other[1]].ihom, row[other[2]].ihom}) == 3:
                    if tuple(other) not in {tuple(s) for s in active}:
                        w = (tset, other)
                        break
            if w:
                break
        add("active-promotion", w)
    return reports


def family_passes(reports: Sequence[ConditionReport]) -> bool:
    return all(r.passed for r in reports)


# ---------------------------------------------------------------------------
# Reconstruction.


def _chart_config(family: LimitFamily, tset: Sequence[int]) -> QnConfig:
    return QnConfig(tuple(family.charts[tuple(sorted(tset))]))


def reconstruct_tree(family: LimitFamily) -> Union[PointedTree, Chain]:
    """Rebuild the stable object from its chart family.

    Charts are grouped by Moebius equivalence of their configurations (one
    group per component), adjacency is read off complementary coincidence
    blocks, and node coordinates are the block positions.  The result
    reproduces the family exactly.
    """
    reports = verify_functor_conditions(family)
    for r in reports:
        if not r.passed:
            raise InconsistentFamilyError(r.name, r.witness)
    if family.mode == LM:
        return _reconstruct_chain(family)
    n = family.n
    active = family.active_sets()
    configs = {t: _chart_config(family, t) for t in active}
    groups: list[list[tuple[int, ...]]] = []
    for t in active:
        for g in groups:
            if moebius_equivalent(configs[g[0]], configs[t]):
                g.append(t)
                break
        else:
            groups.append([t])
    comp_names = tuple(f"c{k}" for k in range(len(groups)))
    rep_cfg = [configs[g[0]] for g in groups]
    parts = [coincidence_partition(cfg).blocks for cfg in rep_cfg]
    full = frozenset(range(n))
    edges = []
    direction_blocks: dict[int, set[tuple[int, ...]]] = {k: set() for k in range(len(groups))}
    for gi, gj in itertools.combinations(range(len(groups)), 2):
        pairs = [
            (p, r)
            for p in parts[gi]
            for r in parts[gj]
            if not (set(p) & set(r)) and set(p) | set(r) == full
        ]
        if not pairs:
            continue
        if len(pairs) != 1:
            raise InconsistentFamilyError("component-adjacency", (gi, gj))
        p, r = pairs[0]
        node_i = rep_cfg[gi].sections[p[0]]
        node_j = rep_cfg[gj].sections[r[0]]
        edges.append(TreeEdge((comp_names[gi], comp_names[gj]), (node_i, node_j)))
        direction_blocks[gi].add(p)
        direction_blocks[gj].add(r)
    marks = []
    for k in range(n):
        homes = []
        for gi in range(len(groups)):
            block = next(b for b in parts[gi] if k in b)
            if block not in direction_blocks[gi]:
                homes.append(gi)
        if len(homes) != 1:
            raise InconsistentFamilyError("mark-residence", (k, homes))
        gi = homes[0]
        marks.append((k, comp_names[gi], rep_cfg[gi].sections[k]))
    tree = PointedTree(comp_names, tuple(edges), tuple(marks))
    try:
        validate_tree(tree)
    except ValueError as exc:
        raise InconsistentFamilyError("tree-shape", str(exc))
    if family.mode == GK:
        if not is_gk_stable(tree):
            raise InconsistentFamilyError("stability", None)
        rebuilt = moduli_coordinates(tree, GK)
    else:
        if not is_a_stable(tree, family.a):
            raise InconsistentFamilyError("stability", None)
        rebuilt = moduli_coordinates(tree, HASSETT, family.a)
    if rebuilt != family:
        raise InconsistentFamilyError("round-trip", None)
    return tree


def _diag_rescale(row: Sequence[ProjPoint], index: int) -> Optional[tuple[ProjPoint, ...]]:
    s = row[index]
    if s == ZERO_POINT or s == INF_POINT:
        return None
    m = Moebius(s.c1, Fraction(0), Fraction(0), s.c0)
    return tuple(m.apply(p) for p in row)


def _reconstruct_chain(family: LimitFamily) -> Chain:
    n = family.n
    groups: list[list[int]] = []
    for i in range(n):
        placed = False
        for g in groups:
            rescaled = _diag_rescale(family.charts[g[0]], i)
            if rescaled is not None and rescaled == family.charts[i]:
                g.append(i)
                placed = True
                break
        if not placed:
            groups.append([i])
    # order groups from the zero end: a group earlier than this one shows up
    # at (0:1) in this group's chart
    before_counts = []
    for gi in range(len(groups)):
        cnt = 0
        for gj in range(len(groups)):
            if gi != gj and family.charts[groups[gi][0]][groups[gj][0]] == ZERO_POINT:
                cnt += 1
        before_counts.append(cnt)
    if sorted(before_counts) != list(range(len(groups))):
        raise InconsistentFamilyError("chain-order", tuple(before_counts))
    order = sorted(range(len(groups)), key=lambda gi: before_counts[gi])
    comps = []
    for gi in order:
        g = sorted(groups[gi])
        rep = family.charts[g[0]]
        comps.append(tuple((lb, rep[lb]) for lb in g))
    chain = Chain(tuple(comps))
    try:
        validate_chain(chain)
    except ValueError as exc:
        raise InconsistentFamilyError("chain-shape", str(exc))
    if not is_lm_stable(chain):
        raise InconsistentFamilyError("stability", None)
    if lm_moduli_coordinates(chain) != family:
        raise InconsistentFamilyError("round-trip", None)
    return chain


# ---------------------------------------------------------------------------
# Isomorphism tests and weighted/chain correspondences.


def _image_partition(images: Mapping[int, ProjPoint]) -> tuple[tuple[int, ...], ...]:
    groups: dict[tuple[int, int], list[int]] = {}
    for lb, p in images.items():
        groups.setdefault(p.ihom, []).append(lb)
    return tuple(sorted(tuple(sorted(v)) for v in groups.values()))


def tree_isomorphic(t1: PointedTree, t2: PointedTree) -> bool:
    """Equality of marked trees up to relabelling components and a Moebius
    map on each component; marks must match exactly."""
    if t1.labels != t2.labels:
        return False
    img1 = mark_images(t1)
    img2 = mark_images(t2)
    part1 = {c: _image_partition(img1[c]) for c in t1.components}
    part2 = {c: _image_partition(img2[c]) for c in t2.components}
    if len(set(part1.values())) != len(part1) or len(set(part2.values())) != len(part2):
        raise ValueError("components of a stable tree have distinct image partitions")
    by_part = {p: c for c, p in part2.items()}
    match = {}
    for c, p in part1.items():
        if p not in by_part:
            return False
        match[c] = by_part[p]
    if len(t1.edges) != len(t2.edges):
        return False
    e2 = {frozenset(e.ends) for e in t2.edges}
    for e in t1.edges:
        if frozenset(match[x] for x in e.ends) not in e2:
            return False
    for c in t1.components:
        blocks = part1[c]
        if len(blocks) < 3:
            return False
        reps = [b[0] for b in blocks[:3]]
        m1 = moebius_from_triple(*(img1[c][r] for r in reps))
        m2 = moebius_from_triple(*(img2[match[c]][r] for r in reps))
        for lb in t1.labels:
            if m1.apply(img1[c][lb]) != m2.apply(img2[match[c]][lb]):
                return False
    return True


def chain_canonical(chain: Chain) -> Chain:
    """Rescale each component so its least mark sits at (1:1)."""
    comps = []
    for comp in chain.components:
        row = [p for _, p in comp]
        lead = row[0]
        m = Moebius(lead.c1, Fraction(0), Fraction(0), lead.c0)
        comps.append(tuple((lb, m.apply(p)) for lb, p in comp))
    return Chain(tuple(comps))


def chain_isomorphic(c1: Chain, c2: Chain) -> bool:
    return chain_canonical(c1) == chain_canonical(c2)


def lm_specialization_weights(n: int) -> tuple[Fraction, ...]:
    """Weight vector (1, 1, eps, ..., eps) with eps = 1/(10n)."""
    eps = Fraction(1, 10 * n)
    return (Fraction(1), Fraction(1)) + (eps,) * (n - 2)


def tree_from_chain(chain: Chain, n: int) -> PointedTree:
    """The weighted tree with heavy marks 0 and 1 at the chain anchors and
    the chain marks (labels 2..n-1) kept in place."""
    if chain.labels != tuple(range(2, n)):
        raise ValueError("chain marks must be labelled 2..n-1")
    m = len(chain.components)
    comps = tuple(f"c{k}" for k in range(m))
    edges = []
    for k in range(m - 1):
        edges.append(TreeEdge((comps[k], comps[k + 1]), (INF_POINT, ZERO_POINT)))
    marks = [(0, comps[0], ZERO_POINT), (1, comps[m - 1], INF_POINT)]
    for k, comp in enumerate(chain.components):
        for lb, p in comp:
            marks.append((lb, comps[k], p))
    return PointedTree(comps, tuple(edges), tuple(sorted(marks)))


def chain_from_tree(tree: PointedTree) -> Chain:
    """Inverse of `tree_from_chain` up to isomorphism: orient the path from
    the component of mark 0, send the two special points of each component
    to the anchors, and drop the heavy marks."""
    validate_tree(tree)
    if not {0, 1} <= set(tree.labels):
        raise ValueError("marks 0 and 1 must be present")
    adj = _adjacency(tree)
    if any(len(adj[c]) > 2 for c in tree.components):
        raise ValueError("tree is not a path")
    c0, p0 = _mark_point(tree, 0)
    c1, p1 = _mark_point(tree, 1)
    if len(tree.components) > 1:
        if c0 == c1 or len(adj[c0]) != 1 or len(adj[c1]) != 1:
            raise ValueError("marks 0 and 1 must sit on the two end components")
    order = [c0]
    prev = None
    while True:
        nxt = [e.other(order[-1]) for e in adj[order[-1]] if e.other(order[-1]) != prev]
        if not nxt:
            break
        prev = order[-1]
        order.append(nxt[0])
    if order[-1] != c1 or len(order) != len(tree.components):
        raise ValueError("marks 0 and 1 must sit on the two end components of a path")
    comps = []
    for k, c in enumerate(order):
        if k == 0:
            toward0 = p0
        else:
            e = next(e for e in adj[c] if e.other(c) == order[k - 1])
            toward0 = e.node_at(c)
        if k == len(order) - 1:
            toward1 = p1
        else:
            e = next(e for e in adj[c] if e.other(c) == order[k + 1])
            toward1 = e.node_at(c)
        m = moebius_two_point(toward0, toward1)
        row = []
        for lb, comp, p in tree.marks:
            if comp == c and lb not in (0, 1):
                row.append((lb, m.apply(p)))
        comps.append(tuple(row))
    return Chain(tuple(comps))


def charts_cover_hypersimplex(family: LimitFamily) -> tuple[bool, Optional[tuple[int, ...]]]:
    """Whether the stability polytopes of the active charts cover the whole
    weight polytope.

    For chart families this reduces to a finite combinatorial test: the
    polytopes of distinct components meet only along walls, and any
    full-dimensional uncovered region would contain the chart weight of some
    triple, so covering holds iff for every 3-subset some active chart keeps
    it separated (at most one index per coincidence class).
    """
    n = family.n
    active = family.active_sets()
    blockmaps = []
    for t in active:
        blocks = _chart_blocks(family.charts[tuple(t)])
        bm = {}
        for b in blocks:
            for i in b:
                bm[i] = b
        blockmaps.append(bm)
    for trip in itertools.combinations(range(n), 3):
        ok = False
        for bm in blockmaps:
            if len({bm[trip[0]], bm[trip[1]], bm[trip[2]]}) == 3:
                ok = True
                break
        if not ok:
            return False, trip
    return True, None
