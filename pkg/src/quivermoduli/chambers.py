"""Normalized weight polytopes and their wall-and-chamber decompositions.

Two ambient polytopes appear.  For the star quiver the normalized weights
form the hypersimplex (all coordinates in [0,1], total 2); its inner walls
are the loci where a subset of coordinates sums to 1, one wall per unordered
partition {J, complement}.  For the double-star quiver the weights form a
product of simplices (eta1 + eta2 = -1 <= 0, theta >= 0 summing to 1) and
the inner walls are the loci where a subset of thetas sums to -eta1, one
ordered wall per proper nonempty subset.

Chambers are enumerated exactly: a sign vector over the walls is realized
iff the corresponding open system admits a rational point, decided by the
max-slack LP in `lp`.  Small wall sets are tested exhaustively (with cheap
subset-implication prefilters), larger ones by a breadth-first walk over
single-sign flips, which reaches every chamber because adjacent chambers
differ in exactly one wall.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

from .lp import strict_interior_point
from .quiverwt import TooLargeError, max_work, weight_map_qn2_pn

QN = "qn"
PN = "pn"

INTERIOR = "interior"
BOUNDARY = "boundary"
OUTSIDE = "outside"


class BadEpsilonError(ValueError):
    """The requested chart weight is not generic."""


def _rat(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


@dataclass(frozen=True)
class QnWeight:
    """A point of the hypersimplex: 0 <= theta_i <= 1, sum theta_i = 2."""

    theta: tuple[Fraction, ...]

    def __post_init__(self):
        th = tuple(_rat(v) for v in self.theta)
        object.__setattr__(self, "theta", th)
        if len(th) < 3:
            raise ValueError("hypersimplex weights need n >= 3")
        if any(v < 0 or v > 1 for v in th):
            raise ValueError("coordinates must lie in [0, 1]")
        if sum(th) != 2:
            raise ValueError("coordinates must sum to 2")

    @property
    def n(self) -> int:
        return len(self.theta)


@dataclass(frozen=True)
class PnWeight:
    """A point of the product of simplices: eta <= 0 with eta1 + eta2 = -1,
    theta >= 0 with sum theta_i = 1."""

    eta1: Fraction
    eta2: Fraction
    theta: tuple[Fraction, ...]

    def __post_init__(self):
        e1, e2 = _rat(self.eta1), _rat(self.eta2)
        th = tuple(_rat(v) for v in self.theta)
        object.__setattr__(self, "eta1", e1)
        object.__setattr__(self, "eta2", e2)
        object.__setattr__(self, "theta", th)
        if len(th) < 1:
            raise ValueError("double-star weights need n >= 1")
        if e1 > 0 or e2 > 0:
            raise ValueError("eta coordinates must be <= 0")
        if e1 + e2 != -1:
            raise ValueError("eta coordinates must sum to -1")
        if any(v < 0 for v in th):
            raise ValueError("theta coordinates must be >= 0")
        if sum(th) != 1:
            raise ValueError("theta coordinates must sum to 1")

    @property
    def n(self) -> int:
        return len(self.theta)


Weight = Union[QnWeight, PnWeight]


@dataclass(frozen=True, order=True)
class QnWall:
    """Inner wall of the hypersimplex: the locus sum_{i in j} theta_i = 1.

    Stored side is the lexicographically smaller of {J, complement}; the two
    sides define the same wall.
    """

    n: int
    j: tuple[int, ...]


@dataclass(frozen=True, order=True)
class PnWall:
    """Inner wall of the product of simplices: sum_{i in j} theta_i = -eta1.

    The stored subset is the infinity side and is not identified with its
    complement (whose equation involves -eta2 instead).
    """

    n: int
    j: tuple[int, ...]


Wall = Union[QnWall, PnWall]


def canonical_qn_wall(n: int, j) -> QnWall:
    side = tuple(sorted(j))
    comp = tuple(i for i in range(n) if i not in set(side))
    if not (2 <= len(side) <= n - 2):
        raise ValueError(f"inner walls need 2 <= |J| <= n-2, got {side}")
    return QnWall(n, min(side, comp))


def enumerate_walls(mode: str, n: int) -> list[Wall]:
    """All inner walls, each exactly once, in sorted order."""
    if n > 12:
        raise TooLargeError("wall enumeration capped at n <= 12")
    if mode == QN:
        seen = set()
        for k in range(2, n - 1):
            for j in itertools.combinations(range(n), k):
                seen.add(canonical_qn_wall(n, j))
        return sorted(seen)
    if mode == PN:
        walls = []
        for k in range(1, n):
            for j in itertools.combinations(range(n), k):
                walls.append(PnWall(n, j))
        return sorted(walls)
    raise ValueError(f"unknown mode {mode!r}")


def wall_value(weight: Weight, wall: Wall) -> Fraction:
    """Signed distance surrogate: positive on the + side of the wall."""
    if isinstance(wall, QnWall):
        return sum(weight.theta[i] for i in wall.j) - 1
    return sum(weight.theta[i] for i in wall.j) + weight.eta1


@dataclass(frozen=True)
class WeightClass:
    """Result of classifying a weight against the wall structure."""

    generic: bool
    signs: Optional[tuple[int, ...]]
    inner: tuple[Wall, ...]
    outer: tuple[tuple[str, int], ...]


def classify_weight(weight: Weight) -> WeightClass:
    """Exact wall membership; generic iff interior and on no inner wall."""
    outer = []
    if isinstance(weight, QnWeight):
        mode = QN
        for i, v in enumerate(weight.theta):
            if v == 0:
                outer.append(("theta_zero", i))
            elif v == 1:
                outer.append(("theta_one", i))
    else:
        mode = PN
        for i, v in enumerate(weight.theta):
            if v == 0:
                outer.append(("theta_zero", i))
        if weight.eta1 == 0:
            outer.append(("eta_zero", 0))
        if weight.eta2 == 0:
            outer.append(("eta_zero", 1))
    walls = enumerate_walls(mode, weight.n)
    inner = []
    signs = []
    for w in walls:
        v = wall_value(weight, w)
        if v == 0:
            inner.append(w)
            signs.append(0)
        else:
            signs.append(1 if v > 0 else -1)
    if inner or outer:
        return WeightClass(False, None, tuple(inner), tuple(outer))
    return WeightClass(True, tuple(signs), (), ())


# ---------------------------------------------------------------------------
# LP encodings.  Variable vectors are theta for the hypersimplex and
# (h1, h2, theta) with h_j = -eta_j for the product of simplices; all
# variables are nonnegative by construction.


def _space(mode: str, n: int):
    if mode == QN:
        nvars = n
        eqs = [((Fraction(1),) * n, Fraction(2))]

        def box():
            rows = []
            for i in range(n):
                e = [Fraction(0)] * n
                e[i] = Fraction(1)
                rows.append((tuple(e), Fraction(0)))  # theta_i > 0
                f = [Fraction(0)] * n
                f[i] = Fraction(-1)
                rows.append((tuple(f), Fraction(-1)))  # theta_i < 1
            return rows

        def decode(x):
            return QnWeight(tuple(x))

    elif mode == PN:
        nvars = n + 2
        one = Fraction(1)
        eqs = [
            ((one, one) + (Fraction(0),) * n, Fraction(1)),
            ((Fraction(0), Fraction(0)) + (one,) * n, Fraction(1)),
        ]

        def box():
            rows = []
            for i in range(nvars):
                e = [Fraction(0)] * nvars
                e[i] = Fraction(1)
                rows.append((tuple(e), Fraction(0)))  # h_j > 0, theta_i > 0
            return rows

        def decode(x):
            return PnWeight(-x[0], -x[1], tuple(x[2:]))

    else:
        raise ValueError(f"unknown mode {mode!r}")
    return nvars, eqs, box(), decode


def _wall_row(mode: str, n: int, wall: Wall) -> tuple[tuple[Fraction, ...], Fraction]:
    """(coeffs, rhs) with coeffs . x - rhs = wall_value."""
    if mode == QN:
        coeffs = [Fraction(0)] * n
        for i in wall.j:
            coeffs[i] = Fraction(1)
        return tuple(coeffs), Fraction(1)
    coeffs = [Fraction(0)] * (n + 2)
    coeffs[0] = Fraction(-1)  # -h1 = eta1
    for i in wall.j:
        coeffs[2 + i] = Fraction(1)
    return tuple(coeffs), Fraction(0)


@dataclass(frozen=True)
class Chamber:
    """A realized sign vector together with an interior witness weight."""

    signs: tuple[int, ...]
    witness: Weight

    def sign_map(self, walls: Sequence[Wall]) -> dict[Wall, int]:
        return dict(zip(walls, self.signs))


def _signed_rows(hyps, signs):
    rows = []
    for (coeffs, rhs), s in zip(hyps, signs):
        if s > 0:
            rows.append((coeffs, rhs))
        else:
            rows.append((tuple(-c for c in coeffs), -rhs))
    return rows


def _region_witness(nvars, eqs, box_rows, hyps, signs, imps=(), tweak=None):
    # rows dominated by another active row (subset side, same threshold
    # form) are redundant in the strict system and dropped before the LP
    dominated = set()
    for i, si, j, sj in imps:
        if signs[i] == si and signs[j] == sj:
            dominated.add(j)
    keep = [k for k in range(len(hyps)) if k not in dominated]
    rows = _signed_rows([hyps[k] for k in keep], [signs[k] for k in keep])
    return strict_interior_point(nvars, box_rows + rows, eqs, tweak=tweak)


def _subset_implications(walls: Sequence[Wall], n: int):
    """Ordered-sign implications (i, si, j, sj): sign i == si forces sign j == sj.

    Each orientation of a wall is of the form "sum over a side subset exceeds
    a threshold"; within a family sharing the threshold, a smaller side
    implies a larger one.  Hypersimplex walls contribute both orientations to
    one family (threshold 1); double-star walls contribute the positive
    orientation to the h1 family and the negated one, rewritten over the
    complement, to the h2 family.
    """
    universe = set(range(n))
    oriented = []
    for idx, w in enumerate(walls):
        if isinstance(w, QnWall):
            side = set(w.j)
            oriented.append((idx, 1, side, "one"))
            oriented.append((idx, -1, universe - side, "one"))
        else:
            side = set(w.j)
            oriented.append((idx, 1, side, "h1"))
            oriented.append((idx, -1, universe - side, "h2"))
    imps = []
    for (i, si, a, fa) in oriented:
        for (j, sj, b, fb) in oriented:
            if i != j and fa == fb and a < b:
                imps.append((i, si, j, sj))
    return imps


def _generic_seed(nvars, eqs, box_rows, hyps):
    """A point off every hyperplane, found by greedily pinning signs."""
    pinned: list[tuple[int, int]] = []
    x = strict_interior_point(nvars, list(box_rows), eqs)
    if x is None:
        return None
    while True:
        vals = [sum(c * xi for c, xi in zip(coeffs, x)) - rhs for coeffs, rhs in hyps]
        zero_at = next((k for k, v in enumerate(vals) if v == 0), None)
        if zero_at is None:
            return x
        for s in (1, -1):
            trial = pinned + [(zero_at, s)]
            rows = list(box_rows)
            for k, sk in trial:
                rows.extend(_signed_rows([hyps[k]], [sk]))
            x2 = strict_interior_point(nvars, rows, eqs)
            if x2 is not None:
                pinned, x = trial, x2
                break
        else:
            raise RuntimeError("hyperplane cannot be strictly avoided on either side")


def _consistent_signs(m, imps, cap):
    """All sign vectors satisfying the implications, by DFS with propagation.

    Returns None if more than `cap` vectors exist (caller falls back to the
    breadth-first walk).
    """
    fwd: dict[tuple[int, int], list[tuple[int, int]]] = {}
    for i, si, j, sj in imps:
        fwd.setdefault((i, si), []).append((j, sj))
    sign = [0] * m
    out: list[tuple[int, ...]] = []

    def propagate(i, si, trail):
        if sign[i] == si:
            return True
        if sign[i] == -si:
            return False
        sign[i] = si
        trail.append(i)
        for j, sj in fwd.get((i, si), ()):
            if not propagate(j, sj, trail):
                return False
        return True

    def dfs(k):
        while k < m and sign[k] != 0:
            k += 1
        if k == m:
            out.append(tuple(sign))
            return len(out) <= cap
        for s in (1, -1):
            trail: list[int] = []
            ok = propagate(k, s, trail)
            if ok and not dfs(k + 1):
                return False
            for t in trail:
                sign[t] = 0
        return True

    if not dfs(0):
        return None
    return out


_CANDIDATE_CAP = 60_000


def _enumerate_regions(nvars, eqs, box_rows, hyps, implications=(), brute_limit=18):
    """All realized sign vectors over the hyperplane list, with witnesses.

    Candidate vectors come from implication-consistent enumeration where that
    stays small, and otherwise from a breadth-first walk over single-sign
    flips (complete because neighboring regions differ in exactly one sign).
    """
    m = len(hyps)
    if m == 0:
        x = strict_interior_point(nvars, list(box_rows), eqs)
        return [((), x)] if x is not None else []
    candidates = None
    if implications or m <= brute_limit:
        cap = _CANDIDATE_CAP if implications else 2**brute_limit
        candidates = _consistent_signs(m, implications, cap)
    regions = {}
    if candidates is not None:
        for combo in candidates:
            x = _region_witness(nvars, eqs, box_rows, hyps, combo, implications)
            if x is not None:
                regions[combo] = x
    else:
        seed = _generic_seed(nvars, eqs, box_rows, hyps)
        if seed is None:
            return []
        vals = [sum(c * xi for c, xi in zip(coeffs, seed)) - rhs for coeffs, rhs in hyps]
        start = tuple(1 if v > 0 else -1 for v in vals)
        regions[start] = seed
        frontier = [start]
        dead = set()
        cap = max_work()
        while frontier:
            signs = frontier.pop()
            for k in range(m):
                flipped = signs[:k] + (-signs[k],) + signs[k + 1 :]
                if flipped in regions or flipped in dead:
                    continue
                if any(
                    flipped[i] == si and flipped[j] != sj
                    for i, si, j, sj in implications
                ):
                    dead.add(flipped)
                    continue
                x = _region_witness(nvars, eqs, box_rows, hyps, flipped, implications)
                if x is None:
                    dead.add(flipped)
                else:
                    regions[flipped] = x
                    frontier.append(flipped)
                    if len(regions) > cap:
                        raise TooLargeError("region enumeration exceeds QML_MAX_WORK")
    return sorted(regions.items())


_CHAMBER_BOUNDS = {QN: 7, PN: 6}
_chamber_cache: dict[tuple[str, int], tuple[Chamber, ...]] = {}


def enumerate_chambers(mode: str, n: int) -> list[Chamber]:
    """All chambers of the inner-wall arrangement, each with a witness."""
    if n > _CHAMBER_BOUNDS[mode]:
        raise TooLargeError(
            f"chamber enumeration for mode {mode} is capped at n <= {_CHAMBER_BOUNDS[mode]}"
        )
    key = (mode, n)
    if key not in _chamber_cache:
        walls = enumerate_walls(mode, n)
        nvars, eqs, box_rows, decode = _space(mode, n)
        hyps = [_wall_row(mode, n, w) for w in walls]
        imps = _subset_implications(walls, n)
        out = []
        for signs, x in _enumerate_regions(nvars, eqs, box_rows, hyps, imps):
            out.append(Chamber(signs, decode(x)))
        _chamber_cache[key] = tuple(out)
    return list(_chamber_cache[key])


def chamber_second_witness(mode: str, n: int, chamber: Chamber) -> Weight:
    """Another interior point of the same chamber (distinct when possible)."""
    walls = enumerate_walls(mode, n)
    nvars, eqs, box_rows, decode = _space(mode, n)
    hyps = [_wall_row(mode, n, w) for w in walls]
    imps = _subset_implications(walls, n)
    tweak = [Fraction(1, 997 + 13 * k) for k in range(nvars)]
    x = _region_witness(nvars, eqs, box_rows, hyps, chamber.signs, imps, tweak=tweak)
    assert x is not None
    return decode(x)


def chamber_adjacency(mode: str, n: int, chambers: Sequence[Chamber]) -> list[tuple[int, int]]:
    """Edges between chambers sharing a full-dimensional wall facet.

    Candidates differ in exactly one sign; the shared facet is confirmed by
    an exact LP with equality pinned on the flipped wall and everything else
    strict.
    """
    walls = enumerate_walls(mode, n)
    nvars, eqs, box_rows, _ = _space(mode, n)
    hyps = [_wall_row(mode, n, w) for w in walls]
    edges = []
    for i in range(len(chambers)):
        for k in range(i + 1, len(chambers)):
            si, sk = chambers[i].signs, chambers[k].signs
            diff = [t for t in range(len(walls)) if si[t] != sk[t]]
            if len(diff) != 1:
                continue
            t = diff[0]
            others = [hyps[u] for u in range(len(walls)) if u != t]
            signs = [si[u] for u in range(len(walls)) if u != t]
            x = strict_interior_point(
                nvars,
                list(box_rows) + _signed_rows(others, signs),
                eqs + [hyps[t]],
            )
            if x is not None:
                edges.append((i, k))
    return edges


def wall_relative_interior_point(mode: str, n: int, wall: Wall) -> Weight:
    """A weight in the relative interior of one inner wall: equality there,
    strictly off every other wall, strictly inside the polytope."""
    walls = enumerate_walls(mode, n)
    nvars, eqs, box_rows, decode = _space(mode, n)
    target = _wall_row(mode, n, wall)
    rest = [_wall_row(mode, n, w) for w in walls if w != wall]
    # pin signs off the remaining walls greedily, as in _generic_seed
    pinned: list[tuple[int, int]] = []
    x = strict_interior_point(nvars, list(box_rows), eqs + [target])
    if x is None:
        raise ValueError(f"wall {wall} does not meet the polytope interior")
    while True:
        vals = [sum(c * xi for c, xi in zip(coeffs, x)) - rhs for coeffs, rhs in rest]
        zero_at = next((k for k, v in enumerate(vals) if v == 0), None)
        if zero_at is None:
            return decode(x)
        for s in (1, -1):
            trial = pinned + [(zero_at, s)]
            rows = list(box_rows)
            for k, sk in trial:
                rows.extend(_signed_rows([rest[k]], [sk]))
            x2 = strict_interior_point(nvars, rows, eqs + [target])
            if x2 is not None:
                pinned, x = trial, x2
                break
        else:
            raise RuntimeError("wall meets the interior but admits no generic relative point")


# ---------------------------------------------------------------------------
# Distinguished chart weights.


def chart_weight_qn(n: int, triple: Sequence[int], eps: Optional[Fraction] = None) -> QnWeight:
    """The generic weight concentrating 2/3-ish mass on a 3-subset.

    Its chamber is characterized by: a configuration is stable iff the three
    distinguished sections are pairwise distinct.  For n = 3 the barycenter
    is returned and eps is ignored (there are no spare indices to carry it).
    """
    t = sorted(triple)
    if len(t) != 3 or len(set(t)) != 3 or t[0] < 0 or t[-1] >= n:
        raise ValueError("triple must be three distinct indices in range")
    if n == 3:
        w = QnWeight((Fraction(2, 3),) * 3)
        return w
    e = _rat(eps) if eps is not None else Fraction(1, n * n)
    if e <= 0:
        raise BadEpsilonError("eps must be positive")
    heavy = Fraction(2, 3) * (1 - e)
    light = Fraction(2, n - 3) * e
    theta = tuple(heavy if i in t else light for i in range(n))
    w = QnWeight(theta)
    if not classify_weight(w).generic:
        raise BadEpsilonError(f"eps = {e} puts the chart weight on a wall")
    return w


def chart_weight_pn(n: int, index: int, eps: Optional[Fraction] = None) -> PnWeight:
    """The generic double-star weight concentrating theta-mass at one index,
    with both eta coordinates at -1/2.  For n = 1 eps is ignored."""
    if not 0 <= index < n:
        raise ValueError("index out of range")
    half = Fraction(-1, 2)
    if n == 1:
        return PnWeight(half, half, (Fraction(1),))
    e = _rat(eps) if eps is not None else Fraction(1, n * n)
    if e <= 0:
        raise BadEpsilonError("eps must be positive")
    theta = tuple(1 - e if i == index else e / (n - 1) for i in range(n))
    w = PnWeight(half, half, theta)
    if not classify_weight(w).generic:
        raise BadEpsilonError(f"eps = {e} puts the chart weight on a wall")
    return w


def project_weight_to_pn(w: QnWeight, a: int, b: int) -> PnWeight:
    """Typed wrapper around the weight projection toward the vertex e_a + e_b."""
    eta1, eta2, theta = weight_map_qn2_pn(w, a, b)
    return PnWeight(eta1, eta2, theta)


# ---------------------------------------------------------------------------
# Stability polytopes.


@dataclass(frozen=True)
class StabPolytope:
    """The set of weights for which a fixed configuration is semistable.

    For the hypersimplex it is cut out by one inequality per coincidence
    class; for the product of simplices by the inequalities of the anchor
    classes (j0, jinf).
    """

    mode: str
    n: int
    partition: tuple[tuple[int, ...], ...] = ()
    j0: tuple[int, ...] = ()
    jinf: tuple[int, ...] = ()

    def __post_init__(self):
        if self.mode == QN:
            blocks = tuple(tuple(sorted(b)) for b in self.partition)
            blocks = tuple(sorted(blocks))
            object.__setattr__(self, "partition", blocks)
            flat = [i for b in blocks for i in b]
            if sorted(flat) != list(range(self.n)):
                raise ValueError("partition must cover the index range disjointly")
        elif self.mode == PN:
            j0 = tuple(sorted(self.j0))
            jinf = tuple(sorted(self.jinf))
            object.__setattr__(self, "j0", j0)
            object.__setattr__(self, "jinf", jinf)
            if set(j0) & set(jinf):
                raise ValueError("anchor classes must be disjoint")
            if any(not 0 <= i < self.n for i in j0 + jinf):
                raise ValueError("anchor class index out of range")
        else:
            raise ValueError(f"unknown mode {self.mode!r}")


def stability_polytope(p: StabPolytope) -> tuple[list[Weight], list[Wall]]:
    """Vertex set and bounding inner walls of a stability polytope.

    Vertices are the ambient polytope vertices satisfying the class
    inequalities; facets are the class walls of inner-wall size.
    """
    n = p.n
    vertices: list[Weight] = []
    facets: list[Wall] = []
    if p.mode == QN:
        block_of = {}
        for bi, b in enumerate(p.partition):
            for i in b:
                block_of[i] = bi
        for i, j in itertools.combinations(range(n), 2):
            if block_of[i] != block_of[j]:
                theta = [Fraction(0)] * n
                theta[i] = Fraction(1)
                theta[j] = Fraction(1)
                vertices.append(QnWeight(tuple(theta)))
        for b in p.partition:
            if 2 <= len(b) <= n - 2:
                facets.append(canonical_qn_wall(n, b))
    else:
        s0, sinf = set(p.j0), set(p.jinf)
        for i in range(n):
            if i not in s0:
                # vertex with eta = (-1, 0), theta = e_i
                theta = [Fraction(0)] * n
                theta[i] = Fraction(1)
                vertices.append(PnWeight(Fraction(-1), Fraction(0), tuple(theta)))
            if i not in sinf:
                theta = [Fraction(0)] * n
                theta[i] = Fraction(1)
                vertices.append(PnWeight(Fraction(0), Fraction(-1), tuple(theta)))
        comp0 = tuple(sorted(set(range(n)) - s0))
        if 1 <= len(comp0) <= n - 1:
            facets.append(PnWall(n, comp0))
        if 1 <= len(p.jinf) <= n - 1:
            facets.append(PnWall(n, p.jinf))
    return vertices, sorted(set(facets))


@dataclass(frozen=True)
class HassettPolytope:
    """The weights below a Hassett weight vector inside the hypersimplex."""

    a: tuple[Fraction, ...]

    def __post_init__(self):
        a = tuple(_rat(v) for v in self.a)
        object.__setattr__(self, "a", a)
        if any(v <= 0 or v > 1 for v in a):
            raise ValueError("weights must satisfy 0 < a_i <= 1")
        if sum(a) <= 2:
            raise ValueError("weights must sum to more than 2")

    @property
    def n(self) -> int:
        return len(self.a)


TargetPolytope = Union[StabPolytope, HassettPolytope]


def _constraints(p: TargetPolytope):
    """List of (kind, index set, bound) closed constraints with value <= 0 inside."""
    if isinstance(p, HassettPolytope):
        return [("theta_le", (i,), p.a[i]) for i in range(p.n) if p.a[i] < 1]
    if p.mode == QN:
        return [("sum_le", b, Fraction(1)) for b in p.partition if len(b) >= 2]
    out = []
    if p.j0:
        out.append(("sum_le_h2", p.j0, None))
    if p.jinf:
        out.append(("sum_le_h1", p.jinf, None))
    return out


def _constraint_value(kind, idxs, bound, weight) -> Fraction:
    """Value <= 0 inside the polytope, 0 on the constraint boundary."""
    if kind == "theta_le":
        return weight.theta[idxs[0]] - bound
    if kind == "sum_le":
        return sum(weight.theta[i] for i in idxs) - bound
    if kind == "sum_le_h2":
        return sum(weight.theta[i] for i in idxs) + weight.eta2
    if kind == "sum_le_h1":
        return sum(weight.theta[i] for i in idxs) + weight.eta1
    raise ValueError(kind)


def _ambient_strict_values(weight) -> list[Fraction]:
    """Values that are positive exactly in the ambient polytope interior."""
    if isinstance(weight, QnWeight):
        vals = [v for v in weight.theta]
        vals += [1 - v for v in weight.theta]
        return vals
    return [-weight.eta1, -weight.eta2] + list(weight.theta)


def polytope_contains(p: TargetPolytope, weight: Weight) -> str:
    """Exact membership classification via the facet inequalities."""
    if isinstance(p, HassettPolytope) or p.mode == QN:
        if not isinstance(weight, QnWeight):
            raise TypeError("hypersimplex polytopes take hypersimplex weights")
    else:
        if not isinstance(weight, PnWeight):
            raise TypeError("double-star polytopes take double-star weights")
    if weight.n != p.n:
        raise ValueError("incompatible number of indices")
    vals = [
        _constraint_value(kind, idxs, bound, weight)
        for kind, idxs, bound in _constraints(p)
    ]
    if any(v > 0 for v in vals):
        return OUTSIDE
    if all(v < 0 for v in vals) and all(v > 0 for v in _ambient_strict_values(weight)):
        return INTERIOR
    return BOUNDARY


def _mode_of(p: TargetPolytope) -> str:
    return QN if isinstance(p, HassettPolytope) else p.mode


def _constraint_row(mode: str, n: int, kind, idxs, bound):
    """LP row (coeffs, rhs) with coeffs . x - rhs = constraint value."""
    nvars = n if mode == QN else n + 2
    off = 0 if mode == QN else 2
    coeffs = [Fraction(0)] * nvars
    if kind == "theta_le":
        coeffs[off + idxs[0]] = Fraction(1)
        return tuple(coeffs), bound
    if kind == "sum_le":
        for i in idxs:
            coeffs[off + i] = Fraction(1)
        return tuple(coeffs), bound
    if kind == "sum_le_h2":
        for i in idxs:
            coeffs[off + i] = Fraction(1)
        coeffs[1] = Fraction(-1)
        return tuple(coeffs), Fraction(0)
    if kind == "sum_le_h1":
        for i in idxs:
            coeffs[off + i] = Fraction(1)
        coeffs[0] = Fraction(-1)
        return tuple(coeffs), Fraction(0)
    raise ValueError(kind)


def interiors_intersect(a: TargetPolytope, b: TargetPolytope) -> bool:
    """Exact LP feasibility of the combined strict facet system."""
    mode = _mode_of(a)
    if mode != _mode_of(b) or a.n != b.n:
        raise ValueError("polytopes live in different ambient spaces")
    n = a.n
    nvars, eqs, box_rows, _ = _space(mode, n)
    rows = list(box_rows)
    for p in (a, b):
        for kind, idxs, bound in _constraints(p):
            coeffs, rhs = _constraint_row(mode, n, kind, idxs, bound)
            rows.append((tuple(-c for c in coeffs), -rhs))  # value < 0
    return strict_interior_point(nvars, rows, eqs) is not None


def cover_check(
    polys: Sequence[StabPolytope],
    mode: str,
    n: int,
    a: Optional[Sequence[Fraction]] = None,
) -> tuple[bool, Optional[Weight]]:
    """Whether the union of the given stability polytopes covers the target
    (the full ambient polytope, or the sub-polytope below a Hassett weight).

    Decided exactly: enumerate the chambers of the arrangement of all facet
    walls of the members plus the facet planes of the target, and test each
    chamber witness for membership in some member.  Returns an uncovered
    witness on failure.
    """
    if a is not None and mode != QN:
        raise ValueError("weighted targets only exist for the hypersimplex")
    if n > 6:
        raise TooLargeError("cover check capped at n <= 6")
    target = HassettPolytope(tuple(a)) if a is not None else None
    rows = []
    seen_rows = set()
    for p in list(polys) + ([target] if target is not None else []):
        if p.n != n or _mode_of(p) != mode:
            raise ValueError("member polytope in a different ambient space")
        for kind, idxs, bound in _constraints(p):
            row = _constraint_row(mode, n, kind, idxs, bound)
            if row not in seen_rows:
                seen_rows.add(row)
                rows.append(row)
    nvars, eqs, box_rows, decode = _space(mode, n)
    for signs, x in _enumerate_regions(nvars, eqs, box_rows, rows, brute_limit=14):
        w = decode(x)
        if target is not None and polytope_contains(target, w) == OUTSIDE:
            continue
        if not any(polytope_contains(p, w) != OUTSIDE for p in polys):
            return False, w
    return True, None
