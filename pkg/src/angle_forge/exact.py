"""Exact rational plane primitives and the three exact angle representations.

Everything here is pure rational arithmetic: points carry ``Fraction``
coordinates, angle equality and order are decided through cotangent keys,
turn fractions, or tangent-plus-branch values.  Floats appear only in
``to_float`` conveniences meant for oracles and reports, never inside a
predicate.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .errors import CoincidentPoint, DegenerateAngle, TiedDirection

Rational = Fraction


def rat(value) -> Fraction:
    """Coerce ints, strings like '3/4', or Fractions to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, str):
        return Fraction(value)
    return Fraction(value)


def rat_str(value: Fraction) -> str:
    """Canonical 'num/den' string, denominator always present."""
    return f"{value.numerator}/{value.denominator}"


@dataclass(frozen=True)
class RatPoint:
    """Plane point with exact rational coordinates, doubling as a vector."""

    x1: Fraction
    x2: Fraction

    def __post_init__(self):
        object.__setattr__(self, "x1", rat(self.x1))
        object.__setattr__(self, "x2", rat(self.x2))

    def __add__(self, other: "RatPoint") -> "RatPoint":
        return RatPoint(self.x1 + other.x1, self.x2 + other.x2)

    def __sub__(self, other: "RatPoint") -> "RatPoint":
        return RatPoint(self.x1 - other.x1, self.x2 - other.x2)

    def __neg__(self) -> "RatPoint":
        return RatPoint(-self.x1, -self.x2)

    def scale(self, c) -> "RatPoint":
        c = rat(c)
        return RatPoint(c * self.x1, c * self.x2)

    def is_zero(self) -> bool:
        return self.x1 == 0 and self.x2 == 0

    def to_floats(self) -> tuple[float, float]:
        return float(self.x1), float(self.x2)

    def as_json(self) -> list[str]:
        return [rat_str(self.x1), rat_str(self.x2)]

    @classmethod
    def from_json(cls, pair: Sequence[str]) -> "RatPoint":
        return cls(rat(pair[0]), rat(pair[1]))


def pt(x1, x2) -> RatPoint:
    return RatPoint(rat(x1), rat(x2))


def dot(a: RatPoint, b: RatPoint) -> Fraction:
    return a.x1 * b.x1 + a.x2 * b.x2


def wedge(a: RatPoint, b: RatPoint) -> Fraction:
    """a1*b2 - a2*b1; antisymmetric, bilinear, |.| = |a||b| sin(angle)."""
    return a.x1 * b.x2 - a.x2 * b.x1


def orient(a: RatPoint, b: RatPoint, c: RatPoint) -> Fraction:
    """Twice the signed area of triangle abc; >0 for counterclockwise."""
    return wedge(b - a, c - a)


def dist2(a: RatPoint, b: RatPoint) -> Fraction:
    d = a - b
    return dot(d, d)


# ---------------------------------------------------------------------------
# Cotangent keys (coordinate engine)

@dataclass(frozen=True)
class CotKey:
    """Exact key for an angle in (0, pi): cot is a bijection (0, pi) -> R."""

    value: Fraction


def oriented_cot(x: RatPoint, p: RatPoint, q: RatPoint) -> tuple[Fraction, int]:
    """Return (dot/wedge, wedge sign) for the oriented angle pxq.

    The sign is +1 exactly when the oriented angle lies in (0, pi).
    Raises DegenerateAngle for collinear triples (angle 0 or pi) and
    CoincidentPoint when x equals p or q.
    """
    u = p - x
    v = q - x
    if u.is_zero() or v.is_zero():
        raise CoincidentPoint(f"vertex {x} coincides with a base point")
    w = wedge(u, v)
    if w == 0:
        raise DegenerateAngle(f"collinear triple {p}, {x}, {q}")
    return dot(u, v) / w, (1 if w > 0 else -1)


def unoriented_cot_key(x: RatPoint, p: RatPoint, q: RatPoint) -> CotKey:
    """CotKey of the unoriented angle pxq, a value in (0, pi)."""
    u = p - x
    v = q - x
    if u.is_zero() or v.is_zero():
        raise CoincidentPoint(f"vertex {x} coincides with a base point")
    w = wedge(u, v)
    if w == 0:
        raise DegenerateAngle(f"collinear triple {p}, {x}, {q}")
    return CotKey(dot(u, v) / abs(w))


def cocircular(p: RatPoint, q: RatPoint, r: RatPoint, s: RatPoint) -> bool:
    """True iff the four points lie on a common circle or line.

    Standard lifted 3x3 determinant after translating s to the origin.
    """
    rows = []
    for a in (p, q, r):
        d = a - s
        rows.append((d.x1, d.x2, d.x1 * d.x1 + d.x2 * d.x2))
    det = (
        rows[0][0] * (rows[1][1] * rows[2][2] - rows[1][2] * rows[2][1])
        - rows[0][1] * (rows[1][0] * rows[2][2] - rows[1][2] * rows[2][0])
        + rows[0][2] * (rows[1][0] * rows[2][1] - rows[1][1] * rows[2][0])
    )
    return det == 0


# ---------------------------------------------------------------------------
# Turn angles (arc engine)

@dataclass(frozen=True)
class TurnAngle:
    """Angle as an exact fraction of a full revolution, canonical in [0, 1)."""

    turns: Fraction

    def __post_init__(self):
        object.__setattr__(self, "turns", rat(self.turns) % 1)

    def __add__(self, other: "TurnAngle") -> "TurnAngle":
        return TurnAngle(self.turns + other.turns)

    def __sub__(self, other: "TurnAngle") -> "TurnAngle":
        return TurnAngle(self.turns - other.turns)

    def __neg__(self) -> "TurnAngle":
        return TurnAngle(-self.turns)

    def to_radians(self) -> float:
        return 2.0 * math.pi * float(self.turns)


def turn(value) -> TurnAngle:
    return TurnAngle(rat(value))


# ---------------------------------------------------------------------------
# Oriented rational directions

@dataclass(frozen=True)
class Direction:
    """Oriented direction, kept as a primitive integer vector."""

    dx: int
    dy: int

    @classmethod
    def from_vector(cls, v: RatPoint) -> "Direction":
        if v.is_zero():
            raise CoincidentPoint("zero vector has no direction")
        scale = v.x1.denominator * v.x2.denominator
        a = v.x1.numerator * (scale // v.x1.denominator)
        b = v.x2.numerator * (scale // v.x2.denominator)
        g = math.gcd(a, b)
        return cls(a // g, b // g)

    def __neg__(self) -> "Direction":
        return Direction(-self.dx, -self.dy)

    def vector(self) -> RatPoint:
        return pt(self.dx, self.dy)


def _sweep_class(dx: Fraction, dy: Fraction) -> int:
    """Quadrant-style index for the sweep starting just above angle -pi/2.

    0: dx > 0 (angle in (-pi/2, pi/2)); 1: straight up; 2: dx < 0
    (angle in (pi/2, 3pi/2)); 3: straight down.
    """
    if dx > 0:
        return 0
    if dx == 0:
        return 1 if dy > 0 else 3
    return 2


def _direction_sort_key(v: RatPoint):
    cls = _sweep_class(v.x1, v.x2)
    slope = v.x2 / v.x1 if v.x1 != 0 else Fraction(0)
    return (cls, slope)


def cyclic_direction_order(x: RatPoint, pts: Sequence[RatPoint]) -> list[int]:
    """Indices of pts in counterclockwise direction order around x.

    The linearization starts just above angle -pi/2 (straight down comes
    last).  Raises CoincidentPoint if some point equals x and TiedDirection
    if two points lie on the same ray from x.
    """
    keyed = []
    for i, p in enumerate(pts):
        v = p - x
        if v.is_zero():
            raise CoincidentPoint(f"point {i} equals the vertex")
        keyed.append((_direction_sort_key(v), i))
    keyed.sort()
    for (ka, ia), (kb, ib) in zip(keyed, keyed[1:]):
        if ka == kb:
            raise TiedDirection(
                f"points {ia} and {ib} lie on the same ray from the vertex",
                pair=(ia, ib),
            )
    return [i for _, i in keyed]


# ---------------------------------------------------------------------------
# Tangent-plus-branch angles (sum/difference engine)

@functools.total_ordering
@dataclass(frozen=True)
class TanBranchAngle:
    """Real angle theta represented by (tan theta, branch).

    ``branch`` is the integer k with theta in (k*pi - pi/2, k*pi + pi/2];
    ``tan`` is None exactly when theta = k*pi + pi/2 (the pole).  The pair
    determines theta uniquely, so equality and order are exact rational
    comparisons.  Sums and differences stay exact through the tangent
    addition formula; the branch of a sum is fixed by rational case
    analysis, never by approximation.
    """

    tan: Optional[Fraction]
    branch: int = 0

    def __post_init__(self):
        if self.tan is not None:
            object.__setattr__(self, "tan", rat(self.tan))

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls) -> "TanBranchAngle":
        return cls(Fraction(0), 0)

    @classmethod
    def from_tan(cls, t) -> "TanBranchAngle":
        return cls(rat(t), 0)

    @classmethod
    def half_pi(cls) -> "TanBranchAngle":
        return cls(None, 0)

    @classmethod
    def pi_multiple(cls, k: int) -> "TanBranchAngle":
        return cls(Fraction(0), k)

    @classmethod
    def from_vector(cls, v: RatPoint) -> "TanBranchAngle":
        """Principal direction angle of v, in (-pi/2, 3pi/2]."""
        if v.is_zero():
            raise CoincidentPoint("zero vector has no direction angle")
        if v.x1 > 0:
            return cls(v.x2 / v.x1, 0)
        if v.x1 == 0:
            return cls(None, 0) if v.x2 > 0 else cls(None, 1)
        return cls(v.x2 / v.x1, 1)

    # -- order ---------------------------------------------------------

    def _ord_key(self):
        if self.tan is None:
            return (self.branch, 1, Fraction(0))
        return (self.branch, 0, self.tan)

    def __lt__(self, other: "TanBranchAngle") -> bool:
        return self._ord_key() < other._ord_key()

    # -- arithmetic ------------------------------------------------------

    def __neg__(self) -> "TanBranchAngle":
        if self.tan is None:
            return TanBranchAngle(None, -self.branch - 1)
        return TanBranchAngle(-self.tan, -self.branch)

    def __add__(self, other: "TanBranchAngle") -> "TanBranchAngle":
        b = self.branch + other.branch
        ta, tb = self.tan, other.tan
        if ta is None and tb is None:
            # pi/2 + pi/2
            return TanBranchAngle(Fraction(0), b + 1)
        if ta is None or tb is None:
            t = tb if ta is None else ta
            if t == 0:
                return TanBranchAngle(None, b)
            # pi/2 + atan(t) = atan(-1/t) mod pi, branch fixed by sign of t
            return TanBranchAngle(-1 / t, b + 1 if t > 0 else b)
        prod = ta * tb
        if prod == 1:
            # atan(ta) + atan(tb) = sign(ta) * pi/2 exactly
            return TanBranchAngle(None, b if ta > 0 else b - 1)
        t = (ta + tb) / (1 - prod)
        if prod < 1:
            k = 0
        else:
            k = 1 if ta > 0 else -1
        return TanBranchAngle(t, b + k)

    def __sub__(self, other: "TanBranchAngle") -> "TanBranchAngle":
        return self + (-other)

    # -- certificates and floats -------------------------------------------

    def cert(self, bits: int = 32) -> tuple[Fraction, Fraction]:
        """Closed rational interval guaranteed to contain theta/pi.

        Width shrinks geometrically as ``bits`` grows; endpoints are exact
        rationals derived from alternating-series tails, so the enclosure
        is rigorous.
        """
        if self.tan is None:
            v = Fraction(self.branch) + Fraction(1, 2)
            return (v, v)
        alo, ahi = _atan_interval(self.tan, bits)
        plo, phi = _pi_interval(bits)
        corners = (alo / plo, alo / phi, ahi / plo, ahi / phi)
        return (self.branch + min(corners), self.branch + max(corners))

    def to_float(self) -> float:
        if self.tan is None:
            return (self.branch + 0.5) * math.pi
        return self.branch * math.pi + math.atan(float(self.tan))


def tan_combine(terms: Iterable[TanBranchAngle],
                signs: Optional[Sequence[int]] = None) -> TanBranchAngle:
    """Exact signed sum of TanBranchAngle terms.

    ``signs`` defaults to all +1.  Poles mid-computation are carried by the
    infinity symbol, so the combination never fails.
    """
    terms = list(terms)
    if signs is None:
        signs = [1] * len(terms)
    acc = TanBranchAngle.zero()
    for s, t in zip(signs, terms):
        acc = acc + t if s > 0 else acc - t
    return acc


# ---------------------------------------------------------------------------
# Rigorous dyadic enclosures for atan and pi (certificate backend)

def _dyadic_floor(x: Fraction, bits: int) -> Fraction:
    scale = 1 << bits
    return Fraction(math.floor(x * scale), scale)


def _atan_series_interval(u: Fraction, bits: int) -> tuple[Fraction, Fraction]:
    """Alternating-series enclosure of atan(u) for |u| <= 1/2."""
    tail = Fraction(1, 1 << (bits + 2))
    term = u
    u2 = u * u
    total = Fraction(0)
    k = 0
    while True:
        total += term if k % 2 == 0 else -term
        k += 1
        term = term * u2 * (2 * k - 1) / (2 * k + 1)
        if abs(term) < tail:
            break
    bound = abs(term)
    return (total - bound, total + bound)


_HALF = Fraction(1, 2)


def _atan_interval(t: Fraction, bits: int) -> tuple[Fraction, Fraction]:
    """Rigorous rational enclosure of atan(t), any rational t."""
    if t < 0:
        lo, hi = _atan_interval(-t, bits)
        return (-hi, -lo)
    if t > 1:
        plo, phi = _pi_interval(bits + 2)
        lo, hi = _atan_interval(1 / t, bits + 2)
        return (plo / 2 - hi, phi / 2 - lo)
    if t > _HALF:
        # atan(t) = atan(1/2) + atan((2t-1)/(2+t)), reduced arg in (0, 1/3]
        base_lo, base_hi = _atan_series_interval(_HALF, bits + 2)
        red = (2 * t - 1) / (2 + t)
        lo, hi = _atan_series_interval(_round_arg(red, bits), bits + 2)
        pad = Fraction(1, 1 << (bits + 3))
        return (base_lo + lo - pad, base_hi + hi + pad)
    u = _round_arg(t, bits)
    lo, hi = _atan_series_interval(u, bits + 2)
    pad = Fraction(1, 1 << (bits + 3))
    return (lo - pad, hi + pad)


def _round_arg(t: Fraction, bits: int) -> Fraction:
    # |atan t - atan u| <= |t - u|; the pad in callers absorbs the rounding
    return _dyadic_floor(t, bits + 3)


@functools.lru_cache(maxsize=None)
def _pi_interval(bits: int) -> tuple[Fraction, Fraction]:
    """Machin enclosure: pi = 16 atan(1/5) - 4 atan(1/239)."""
    a_lo, a_hi = _atan_series_interval(Fraction(1, 5), bits + 6)
    b_lo, b_hi = _atan_series_interval(Fraction(1, 239), bits + 6)
    return (16 * a_lo - 4 * b_hi, 16 * a_hi - 4 * b_lo)
