"""Exact arithmetic on the projective line over the rationals.

Points and Moebius transformations are stored in a canonical form (first
nonzero coordinate, in row-major order for matrices, equals 1) so that
equality is plain field comparison and values work as dict keys.  All values
are immutable and all operations are pure.

Besides the Fraction-based public types there is a small integer toolkit
(`ihom` pairs and 2x2 determinants) used by hot loops elsewhere; both views
describe the same canonical point.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

Rat = Fraction


class DegenerateTripleError(ValueError):
    """Two of the three reference points coincide."""


class IndeterminateError(ValueError):
    """Numerator and denominator of a projective value both vanish."""


def _rat(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, str)):
        return Fraction(x)
    raise TypeError(f"expected an exact rational, got {x!r}")


@dataclass(frozen=True)
class ProjPoint:
    """A point (c0 : c1) of the projective line, canonicalized on construction.

    Canonical form: the first nonzero coordinate equals 1, so the only
    representatives are (1 : t) and (0 : 1).  `ihom` caches the same point as
    a coprime integer pair with positive leading entry.
    """

    c0: Fraction
    c1: Fraction
    ihom: tuple[int, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        c0, c1 = _rat(self.c0), _rat(self.c1)
        if c0 == 0 and c1 == 0:
            raise ValueError("(0:0) is not a projective point")
        if c0 != 0:
            c1 = c1 / c0
            c0 = Fraction(1)
            pair = (c1.denominator, c1.numerator)
        else:
            c1 = Fraction(1)
            pair = (0, 1)
        object.__setattr__(self, "c0", c0)
        object.__setattr__(self, "c1", c1)
        object.__setattr__(self, "ihom", pair)

    def __repr__(self):
        return f"({self.c0}:{self.c1})"


ZERO_POINT = ProjPoint(Fraction(0), Fraction(1))
INF_POINT = ProjPoint(Fraction(1), Fraction(0))
ONE_POINT = ProjPoint(Fraction(1), Fraction(1))

#: A section of a configuration: either a projective point or the zero vector.
Section = Optional[ProjPoint]


def affine(x) -> ProjPoint:
    """The affine point x, i.e. (x : 1)."""
    return ProjPoint(_rat(x), Fraction(1))


def as_affine(p: ProjPoint) -> Optional[Fraction]:
    """Affine coordinate c0/c1 of p, or None for the point at infinity."""
    if p.c1 == 0:
        return None
    return p.c0 / p.c1


def pp_eq(p: ProjPoint, q: ProjPoint) -> bool:
    """Projective equality by cross multiplication."""
    return p.c0 * q.c1 == p.c1 * q.c0


def det2(p: ProjPoint, q: ProjPoint) -> Fraction:
    """d(p, q) = p0*q1 - p1*q0, the single source of sign conventions.

    Vanishes exactly when p and q coincide.
    """
    return p.c0 * q.c1 - p.c1 * q.c0


@dataclass(frozen=True)
class Moebius:
    """An invertible 2x2 matrix class up to scale, canonicalized on construction.

    Canonical form: the first nonzero entry in row-major order equals 1.
    """

    m00: Fraction
    m01: Fraction
    m10: Fraction
    m11: Fraction

    def __post_init__(self):
        entries = tuple(_rat(v) for v in (self.m00, self.m01, self.m10, self.m11))
        det = entries[0] * entries[3] - entries[1] * entries[2]
        if det == 0:
            raise ValueError("singular matrix does not define a Moebius transformation")
        scale = next(v for v in entries if v != 0)
        for name, v in zip(("m00", "m01", "m10", "m11"), entries):
            object.__setattr__(self, name, v / scale)

    def apply(self, p: ProjPoint) -> ProjPoint:
        return ProjPoint(
            self.m00 * p.c0 + self.m01 * p.c1,
            self.m10 * p.c0 + self.m11 * p.c1,
        )

    def compose(self, other: "Moebius") -> "Moebius":
        """self after other."""
        return Moebius(
            self.m00 * other.m00 + self.m01 * other.m10,
            self.m00 * other.m01 + self.m01 * other.m11,
            self.m10 * other.m00 + self.m11 * other.m10,
            self.m10 * other.m01 + self.m11 * other.m11,
        )

    def inverse(self) -> "Moebius":
        return Moebius(self.m11, -self.m01, -self.m10, self.m00)


IDENTITY_MOEBIUS = Moebius(Fraction(1), Fraction(0), Fraction(0), Fraction(1))


def moebius_apply(m: Moebius, p: ProjPoint) -> ProjPoint:
    return m.apply(p)


def moebius_two_point(p_zero: ProjPoint, p_inf: ProjPoint) -> Moebius:
    """Some Moebius sending p_zero to (0:1) and p_inf to (1:0).

    Determined only up to a diagonal factor; callers that need a canonical
    choice must normalize a third point.
    """
    if pp_eq(p_zero, p_inf):
        raise DegenerateTripleError(f"anchor points coincide: {p_zero}")
    return Moebius(p_zero.c1, -p_zero.c0, -p_inf.c1, p_inf.c0)


def moebius_from_triple(p0: ProjPoint, pinf: ProjPoint, p1: ProjPoint) -> Moebius:
    """The Moebius sending (p0, pinf, p1) to ((0:1), (1:0), (1:1))."""
    for a, b in ((p0, pinf), (p0, p1), (pinf, p1)):
        if pp_eq(a, b):
            raise DegenerateTripleError(f"reference points coincide: {a}")
    r00, r01 = p0.c1, -p0.c0
    r10, r11 = -pinf.c1, pinf.c0
    w0 = r00 * p1.c0 + r01 * p1.c1
    w1 = r10 * p1.c0 + r11 * p1.c1
    # w0, w1 nonzero since p1 differs from both anchors
    return Moebius(r00 / w0, r01 / w0, r10 / w1, r11 / w1)


def cross_ratio(p1: ProjPoint, p2: ProjPoint, p3: ProjPoint, p4: ProjPoint) -> ProjPoint:
    """The cross-ratio (d(1,4) d(2,3) : d(1,3) d(2,4)).

    For affine inputs this is ((t1-t4)(t2-t3) : (t1-t3)(t2-t4)).  It equals
    moebius_from_triple(p1, p2, p3) applied to p4 whenever p1, p2, p3 are
    pairwise distinct.
    """
    num = det2(p1, p4) * det2(p2, p3)
    den = det2(p1, p3) * det2(p2, p4)
    if num == 0 and den == 0:
        raise DegenerateTripleError("cross-ratio undefined: reference points degenerate")
    return ProjPoint(num, den)


def cross_ratio_invariant(config: Sequence[ProjPoint], i: int, j: int, k: int, l: int) -> ProjPoint:
    """The cross-ratio invariant of four sections, as a projective value.

    Equals cross_ratio(s_j, s_i, s_k, s_l); with s_i = (0:1) and s_j = (1:0)
    it reduces to (s_k0 s_l1 : s_k1 s_l0).  Returned projectively so the
    value infinity needs no sentinel.
    """
    si, sj, sk, sl = config[i], config[j], config[k], config[l]
    num = det2(sj, sl) * det2(si, sk)
    den = det2(si, sl) * det2(sj, sk)
    if num == 0 and den == 0:
        raise IndeterminateError(
            f"cross-ratio invariant indeterminate for indices ({i},{j},{k},{l})"
        )
    return ProjPoint(num, den)


# ---------------------------------------------------------------------------
# Integer toolkit.  A point is an int pair (a0, a1), coprime, first nonzero
# entry positive; identical to ProjPoint.ihom.  Used by hot loops.

IPoint = tuple[int, int]


def idet(a: IPoint, b: IPoint) -> int:
    return a[0] * b[1] - a[1] * b[0]


def inorm(a0: int, a1: int) -> IPoint:
    if a0 == 0 and a1 == 0:
        raise ValueError("(0:0) is not a projective point")
    from math import gcd

    g = gcd(a0, a1)
    a0, a1 = a0 // g, a1 // g
    lead = a0 if a0 != 0 else a1
    if lead < 0:
        a0, a1 = -a0, -a1
    return (a0, a1)


def point_from_ihom(pair: IPoint) -> ProjPoint:
    return ProjPoint(Fraction(pair[0]), Fraction(pair[1]))
