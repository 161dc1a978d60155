"""Angle-equality cubics: construction, reducibility, multiplicities, and
the weighted incidence machinery.

The locus of points x with cot(angle pxq) = cot(angle sxt) is a circular
cubic: its cubic part is (c7*x1 + c6*x2)(x1^2 + x2^2), so eight rational
coefficients describe it.  Reducible cases split as a line plus a circle;
classification is geometric-first (exact reflection predicates) with exact
polynomial division as the cross-check.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence, Union

from .configs import max_cocircular, max_collinear
from .errors import (
    ClassificationError,
    CoincidentPoint,
    DegeneratePair,
    HypothesisUnmet,
    IdenticalPairs,
    LemmaViolation,
    ZeroPolynomial,
)
from .exact import RatPoint, dist2, dot, rat_str, wedge
from .ordergraph import OrderedPair, neighbour_order

PolyDict = dict[tuple[int, int], Fraction]


# ---------------------------------------------------------------------------
# Components

@dataclass(frozen=True)
class Line:
    """Line a*x1 + b*x2 + c = 0, normalized so the first nonzero of (a, b)
    equals one."""

    a: Fraction
    b: Fraction
    c: Fraction

    def __post_init__(self):
        a, b, c = Fraction(self.a), Fraction(self.b), Fraction(self.c)
        if a == 0 and b == 0:
            raise ValueError("degenerate line")
        lead = a if a != 0 else b
        object.__setattr__(self, "a", a / lead)
        object.__setattr__(self, "b", b / lead)
        object.__setattr__(self, "c", c / lead)

    @classmethod
    def through(cls, p: RatPoint, q: RatPoint) -> "Line":
        if p == q:
            raise ValueError("two coincident points span no line")
        return cls(q.x2 - p.x2, p.x1 - q.x1,
                   -(q.x2 - p.x2) * p.x1 - (p.x1 - q.x1) * p.x2)

    @classmethod
    def perp_bisector(cls, p: RatPoint, t: RatPoint) -> "Line":
        if p == t:
            raise ValueError("coincident points have no bisector")
        return cls(
            2 * (t.x1 - p.x1),
            2 * (t.x2 - p.x2),
            dot(p, p) - dot(t, t),
        )

    def eval(self, x: RatPoint) -> Fraction:
        return self.a * x.x1 + self.b * x.x2 + self.c

    def contains(self, x: RatPoint) -> bool:
        return self.eval(x) == 0

    def as_poly(self) -> PolyDict:
        out: PolyDict = {}
        for key, v in (((1, 0), self.a), ((0, 1), self.b), ((0, 0), self.c)):
            if v != 0:
                out[key] = v
        return out

    def as_json(self) -> dict:
        return {"type": "line",
                "abc": [rat_str(self.a), rat_str(self.b), rat_str(self.c)]}


@dataclass(frozen=True)
class Circle:
    """Circle with exact rational centre and squared radius."""

    cx: Fraction
    cy: Fraction
    r2: Fraction

    def eval(self, x: RatPoint) -> Fraction:
        return (x.x1 - self.cx) ** 2 + (x.x2 - self.cy) ** 2 - self.r2

    def contains(self, x: RatPoint) -> bool:
        return self.eval(x) == 0

    def as_poly(self) -> PolyDict:
        out: PolyDict = {(2, 0): Fraction(1), (0, 2): Fraction(1)}
        for key, v in (
            ((1, 0), -2 * self.cx),
            ((0, 1), -2 * self.cy),
            ((0, 0), self.cx ** 2 + self.cy ** 2 - self.r2),
        ):
            if v != 0:
                out[key] = v
        return out

    def as_json(self) -> dict:
        return {"type": "circle",
                "centre": [rat_str(self.cx), rat_str(self.cy)],
                "r2": rat_str(self.r2)}


Component = Union[Line, Circle]


# ---------------------------------------------------------------------------
# Small exact polynomial helpers (dict over monomials (i, j) = x1^i x2^j)

def poly_mul(u: PolyDict, v: PolyDict) -> PolyDict:
    out: PolyDict = {}
    for (i1, j1), a in u.items():
        for (i2, j2), b in v.items():
            key = (i1 + i2, j1 + j2)
            out[key] = out.get(key, Fraction(0)) + a * b
    return {k: v for k, v in out.items() if v != 0}


def poly_proportional(u: PolyDict, v: PolyDict) -> bool:
    u = {k: c for k, c in u.items() if c != 0}
    v = {k: c for k, c in v.items() if c != 0}
    if set(u) != set(v):
        return False
    if not u:
        return True
    k0 = next(iter(sorted(u)))
    ratio = v[k0] / u[k0]
    return all(v[k] == c * ratio for k, c in u.items())


def divide_by_line(fd: PolyDict, line: Line) -> Optional[PolyDict]:
    """Exact quotient fd / line, or None when the remainder is nonzero.

    Synthetic division in the main variable (x1 unless the line is
    horizontal), coefficients living in the polynomial ring of the other
    variable.
    """
    main = 0 if line.a != 0 else 1
    lead = line.a if main == 0 else line.b
    off = line.b if main == 0 else line.a

    coeffs: dict[int, dict[int, Fraction]] = {}
    for (e1, e2), v in fd.items():
        i = (e1, e2)[main]
        j = (e1, e2)[1 - main]
        row = coeffs.setdefault(i, {})
        row[j] = row.get(j, Fraction(0)) + v
    if not coeffs:
        return {}
    deg = max(coeffs)

    def padd(p, q):
        out = dict(p)
        for j, v in q.items():
            out[j] = out.get(j, Fraction(0)) + v
        return {j: v for j, v in out.items() if v != 0}

    def pmul(p, q):
        out: dict[int, Fraction] = {}
        for j1, a in p.items():
            for j2, b in q.items():
                out[j1 + j2] = out.get(j1 + j2, Fraction(0)) + a * b
        return {j: v for j, v in out.items() if v != 0}

    root = {0: -line.c / lead, 1: -off / lead}
    root = {j: v for j, v in root.items() if v != 0}

    quot: dict[int, dict[int, Fraction]] = {}
    cur = coeffs.get(deg, {})
    for i in range(deg, 0, -1):
        quot[i - 1] = cur
        cur = padd(coeffs.get(i - 1, {}), pmul(root, cur))
    if any(v != 0 for v in cur.values()):
        return None
    out: PolyDict = {}
    for i, poly in quot.items():
        for j, v in poly.items():
            val = v / lead
            if val == 0:
                continue
            key = (i, j) if main == 0 else (j, i)
            out[key] = out.get(key, Fraction(0)) + val
    return {k: v for k, v in out.items() if v != 0}


# ---------------------------------------------------------------------------
# The curve polynomial

_BASIS = ("1", "x2", "x1", "x1*x2", "x2^2", "x1^2", "x2^3", "x1^3")


@dataclass(frozen=True)
class CurvePoly:
    """Angle-equality curve with coefficients c0..c7 over the basis
    (1, x2, x1, x1*x2, x2^2, x1^2, x2^3, x1^3).

    The cubic part is circular: the x2^3 coefficient also multiplies
    x1^2*x2 and the x1^3 coefficient also multiplies x1*x2^2, so the full
    polynomial is (c7*x1 + c6*x2)(x1^2 + x2^2) + lower order terms.
    """

    coeffs: tuple
    provenance: tuple

    def eval(self, x: RatPoint) -> Fraction:
        c = self.coeffs
        x1, x2 = x.x1, x.x2
        sq = x1 * x1 + x2 * x2
        return (
            c[0] + c[1] * x2 + c[2] * x1 + c[3] * x1 * x2
            + c[4] * x2 * x2 + c[5] * x1 * x1
            + (c[7] * x1 + c[6] * x2) * sq
        )

    def contains(self, x: RatPoint) -> bool:
        return self.eval(x) == 0

    def monomials(self) -> PolyDict:
        c = self.coeffs
        entries = [
            ((0, 0), c[0]), ((0, 1), c[1]), ((1, 0), c[2]), ((1, 1), c[3]),
            ((0, 2), c[4]), ((2, 0), c[5]),
            ((0, 3), c[6]), ((2, 1), c[6]),
            ((3, 0), c[7]), ((1, 2), c[7]),
        ]
        return {k: v for k, v in entries if v != 0}

    def is_zero(self) -> bool:
        return all(v == 0 for v in self.coeffs)

    def is_quadratic(self) -> bool:
        return self.coeffs[6] == 0 and self.coeffs[7] == 0

    def as_json(self) -> dict:
        return {"coeffs": [rat_str(v) for v in self.coeffs]}


def curve_poly(p: RatPoint, q: RatPoint, s: RatPoint, t: RatPoint) -> CurvePoly:
    """Exact coefficients of the locus cot(angle pxq) = cot(angle sxt).

    Cross-multiplied form with all terms on one side; swapping the pairs
    negates the polynomial.  c7 = c6 = 0 exactly when p - q = s - t.
    """
    if p == q or s == t:
        raise DegeneratePair("p = q or s = t admits no angle")
    if p == s and q == t:
        raise IdenticalPairs("(p, q) = (s, t) gives the zero polynomial")
    m = p + q
    l = p - q
    mu = s + t
    lam = s - t
    dpq = dot(p, q)
    dst = dot(s, t)
    wpq = wedge(p, q)
    wst = wedge(s, t)

    c7 = lam.x2 - l.x2
    c6 = l.x1 - lam.x1
    c5 = (wst - wpq) - (m.x1 * lam.x2 - mu.x1 * l.x2)
    c4 = (wst - wpq) + (m.x2 * lam.x1 - mu.x2 * l.x1)
    c3 = (m.x1 * lam.x1 - mu.x1 * l.x1) - (m.x2 * lam.x2 - mu.x2 * l.x2)
    c2 = (dpq * lam.x2 - dst * l.x2) - (m.x1 * wst - mu.x1 * wpq)
    c1 = -(dpq * lam.x1 - dst * l.x1) - (m.x2 * wst - mu.x2 * wpq)
    c0 = dpq * wst - dst * wpq
    return CurvePoly(coeffs=(c0, c1, c2, c3, c4, c5, c6, c7),
                     provenance=(p, q, s, t))


def canonical_key(f: CurvePoly) -> tuple:
    """Projective key: coefficients scaled by the first nonzero entry."""
    lead = next((v for v in f.coeffs if v != 0), None)
    if lead is None:
        raise ZeroPolynomial("all coefficients vanish")
    return tuple(v / lead for v in f.coeffs)


@dataclass
class CotCurveVerdict:
    f_value: Fraction
    on_curve: bool
    cot_pq: Optional[Fraction]
    cot_st: Optional[Fraction]
    equal_cots: Optional[bool]
    forward_ok: bool
    mod_pi_case: bool


def on_curve_iff_equal_cot(x: RatPoint, p: RatPoint, q: RatPoint,
                           s: RatPoint, t: RatPoint) -> CotCurveVerdict:
    """Check the defining property pointwise at x.

    The forward implication (equal cotangents imply membership) is an
    exact identity.  Membership with unequal or undefined cotangents is
    the mod-pi / degenerate regime and is flagged, not an error.
    """
    for a in (p, q, s, t):
        if a == x:
            raise CoincidentPoint("x coincides with a base point")
    f = curve_poly(p, q, s, t)
    fx = f.eval(x)

    def cot_of(a, b):
        u, v = a - x, b - x
        w = wedge(u, v)
        return None if w == 0 else dot(u, v) / w

    cpq = cot_of(p, q)
    cst = cot_of(s, t)
    equal = (cpq == cst) if (cpq is not None and cst is not None) else None
    on = fx == 0
    forward = (not equal) or on if equal is not None else True
    return CotCurveVerdict(
        f_value=fx,
        on_curve=on,
        cot_pq=cpq,
        cot_st=cst,
        equal_cots=equal,
        forward_ok=forward,
        mod_pi_case=on and equal is not True,
    )


# ---------------------------------------------------------------------------
# Reducibility classification (Lemma-3 scenarios)

IRREDUCIBLE = "Irreducible"
R1 = "R1"
R2 = "R2"
QUADRATIC_DEGENERATE = "QuadraticDegenerate"


@dataclass
class CurveClass:
    tag: str
    components: list
    poly: CurvePoly

    def as_json(self) -> dict:
        return {"tag": self.tag,
                "components": [c.as_json() for c in self.components]}


def reflect_point(x: RatPoint, line: Line) -> RatPoint:
    lam = 2 * line.eval(x) / (line.a ** 2 + line.b ** 2)
    return RatPoint(x.x1 - lam * line.a, x.x2 - lam * line.b)


def _r1_axis(p, q, s, t) -> Optional[Line]:
    """Axis of a reflection carrying p to t and q to s, if one exists."""
    if p == t and q == s:
        return Line.through(p, q)  # Thales case: the axis is line pq itself
    if p == t:
        return Line.perp_bisector(q, s) if dist2(p, q) == dist2(p, s) else None
    if q == s:
        return Line.perp_bisector(p, t) if dist2(q, p) == dist2(q, t) else None
    a1 = Line.perp_bisector(p, t)
    a2 = Line.perp_bisector(q, s)
    return a1 if a1 == a2 else None


def _quotient_circle(f: CurvePoly, line: Line) -> Circle:
    quo = divide_by_line(f.monomials(), line)
    if quo is None:
        raise ClassificationError(f"claimed line {line} does not divide the curve")
    a = quo.get((2, 0), Fraction(0))
    if a == 0 or quo.get((0, 2), Fraction(0)) != a or quo.get((1, 1), Fraction(0)) != 0:
        raise ClassificationError("quotient conic is not a circle")
    d = quo.get((1, 0), Fraction(0))
    e = quo.get((0, 1), Fraction(0))
    g = quo.get((0, 0), Fraction(0))
    return Circle(
        cx=-d / (2 * a),
        cy=-e / (2 * a),
        r2=(d * d + e * e - 4 * a * g) / (4 * a * a),
    )


def _validate_product(f: CurvePoly, components: Sequence[Component]) -> None:
    prod: PolyDict = {(0, 0): Fraction(1)}
    for comp in components:
        prod = poly_mul(prod, comp.as_poly())
    if not poly_proportional(prod, f.monomials()):
        raise ClassificationError(
            f"component product does not reproduce the curve for {f.provenance}"
        )


def classify_curve(p: RatPoint, q: RatPoint, s: RatPoint, t: RatPoint,
                   f: Optional[CurvePoly] = None) -> CurveClass:
    """Decide Irreducible | R1 | R2 | QuadraticDegenerate exactly.

    Geometric reflection predicates pick the scenario; every claimed
    factorization is cross-validated by exact polynomial division.
    """
    if f is None:
        f = curve_poly(p, q, s, t)

    if f.is_quadratic():
        # p - q = s - t: a conic, reducible exactly in the rhombus case,
        # where it splits into the two perpendicular diagonals pt and qs
        if p != t and q != s:
            l1, l2 = Line.through(p, t), Line.through(q, s)
            prod = poly_mul(l1.as_poly(), l2.as_poly())
            if poly_proportional(prod, f.monomials()):
                return CurveClass(QUADRATIC_DEGENERATE, [l1, l2], f)
        return CurveClass(IRREDUCIBLE, [], f)

    axis = _r1_axis(p, q, s, t)
    if axis is not None:
        circle = _quotient_circle(f, axis)
        _validate_product(f, [axis, circle])
        if not (p == t and q == s):
            for a in (p, q, s, t):
                if not circle.contains(a):
                    raise ClassificationError("R1 circle misses a defining point")
        return CurveClass(R1, [axis, circle], f)

    if p != t:
        line = Line.through(p, t)
        if reflect_point(q, line) == s:
            circle = _quotient_circle(f, line)
            _validate_product(f, [line, circle])
            if line.eval(RatPoint(circle.cx, circle.cy)) != 0:
                raise ClassificationError("R2 circle centre is off the mirror line")
            return CurveClass(R2, [line, circle], f)
    if q != s:
        line = Line.through(q, s)
        if reflect_point(p, line) == t:
            circle = _quotient_circle(f, line)
            _validate_product(f, [line, circle])
            if line.eval(RatPoint(circle.cx, circle.cy)) != 0:
                raise ClassificationError("R2 circle centre is off the mirror line")
            return CurveClass(R2, [line, circle], f)

    return CurveClass(IRREDUCIBLE, [], f)


def candidate_component_lines(p, q, s, t) -> list[Line]:
    """All lines a reducible angle-equality curve could contain
    (the Lemma-3 scenarios): mirror axes and the two defining lines."""
    out = []
    if p != t:
        out.append(Line.through(p, t))
        out.append(Line.perp_bisector(p, t))
    if q != s:
        out.append(Line.through(q, s))
        out.append(Line.perp_bisector(q, s))
    if p == t and q == s:
        out.append(Line.through(p, q))
    seen = set()
    uniq = []
    for line in out:
        if line not in seen:
            seen.add(line)
            uniq.append(line)
    return uniq


def verify_irreducible(f: CurvePoly, p, q, s, t) -> bool:
    """Division oracle: no candidate component line divides the curve."""
    fd = f.monomials()
    return all(divide_by_line(fd, line) is None
               for line in candidate_component_lines(p, q, s, t))


# ---------------------------------------------------------------------------
# Curve family with multiplicities

@dataclass
class FamilyEntry:
    key: tuple
    poly: CurvePoly
    members: list          # (p_index, s_index) quadruple instances
    curve_class: CurveClass

    @property
    def multiplicity(self) -> int:
        return len(self.members)


@dataclass
class CurveFamily:
    entries: dict

    @property
    def weight_sum(self) -> int:
        return sum(e.multiplicity for e in self.entries.values())

    @property
    def max_multiplicity(self) -> int:
        return max((e.multiplicity for e in self.entries.values()), default=0)


def multiplicity_census(pair: OrderedPair) -> tuple[CurveFamily, dict]:
    """Build the neighbour-pair curve family and check the multiplicity lemma.

    Quadruples (p, q, s, t) use immediate neighbours q, t in the common
    cyclic order, restricted to p != s, t != q, p != t, s != q.  Verdicts:
    at most two pairs (s, t) per (p, q) share one full-curve key, and every
    mirror-scenario (R2) circle component has multiplicity at most 2N.
    Raises LemmaViolation with the offending key and pair list.
    """
    p2 = pair.P2
    order = neighbour_order(pair)
    m2 = len(p2)
    n = pair.n
    entries: dict = {}
    for pi_ in range(m2):
        qi = order.neighbour(pi_)
        for si in range(m2):
            ti = order.neighbour(si)
            if si == pi_ or ti == qi or pi_ == ti or si == qi:
                continue
            f = curve_poly(p2[pi_], p2[qi], p2[si], p2[ti])
            key = canonical_key(f)
            if key not in entries:
                entries[key] = FamilyEntry(
                    key=key,
                    poly=f,
                    members=[],
                    curve_class=classify_curve(p2[pi_], p2[qi], p2[si], p2[ti], f),
                )
            entries[key].members.append((pi_, si))

    family = CurveFamily(entries=entries)

    max_full = 0
    for key, entry in entries.items():
        per_p: dict[int, set] = {}
        for (pi_, si) in entry.members:
            per_p.setdefault(pi_, set()).add(si)
        for pi_, partners in per_p.items():
            max_full = max(max_full, len(partners))
            if len(partners) > 2:
                raise LemmaViolation(
                    "more than two (s, t) pairs share one full curve",
                    witness=(key, pi_, sorted(partners)),
                )

    r2_counts: dict = {}
    r1_max = 0
    for entry in entries.values():
        cls = entry.curve_class
        for comp in cls.components:
            if isinstance(comp, Circle):
                if cls.tag == R2:
                    r2_counts[comp] = r2_counts.get(comp, 0) + entry.multiplicity
                elif cls.tag == R1:
                    r1_max = max(r1_max, entry.multiplicity)
    r1_shared: dict = {}
    for entry in entries.values():
        if entry.curve_class.tag == R1:
            for comp in entry.curve_class.components:
                if isinstance(comp, Circle):
                    r1_shared[comp] = r1_shared.get(comp, 0) + entry.multiplicity
    for circle, count in r2_counts.items():
        if count > 2 * n:
            raise LemmaViolation(
                "R2 circle multiplicity exceeds 2N",
                witness=(circle, count, 2 * n),
            )

    verdict = {
        "curves": len(entries),
        "weightSum": family.weight_sum,
        "maxFullMultiplicity": family.max_multiplicity,
        "maxPerNeighbourPair": max_full,
        "lemmaFullOk": True,
        "r2CircleMax": max(r2_counts.values(), default=0),
        "r2CircleCap": 2 * n,
        "r2CircleOk": True,
        "r1CircleMax": max(r1_shared.values(), default=0),
        "tags": {
            tag: sum(1 for e in entries.values() if e.curve_class.tag == tag)
            for tag in (IRREDUCIBLE, R1, R2, QUADRATIC_DEGENERATE)
        },
    }
    return family, verdict


# ---------------------------------------------------------------------------
# Weighted incidences

@dataclass
class IncidenceReport:
    I_irr: int
    I_circ_r1: int
    I_circ_r2: int
    I_lin: int
    m_max: int
    weight_sum: int

    @property
    def total(self) -> int:
        return self.I_irr + self.I_circ_r1 + self.I_circ_r2 + self.I_lin

    def as_json(self) -> dict:
        return {
            "I_irr": self.I_irr,
            "I_circR1": self.I_circ_r1,
            "I_circR2": self.I_circ_r2,
            "I_lin": self.I_lin,
            "total": self.total,
            "mMax": self.m_max,
            "weightSum": self.weight_sum,
        }


def weighted_incidences(p1: Sequence[RatPoint], family: CurveFamily) -> IncidenceReport:
    """Exact membership counts split by component type.

    Each incidence (x, curve) lands in exactly one bucket: irreducible
    curves count whole; for reducible curves a point on the circle
    component books under the circle (even if it also sits on the line),
    otherwise under the line, keeping the four-way split additive.
    """
    i_irr = i_r1 = i_r2 = i_lin = 0
    for entry in family.entries.values():
        m = entry.multiplicity
        cls = entry.curve_class
        if cls.tag == IRREDUCIBLE:
            for x in p1:
                if entry.poly.eval(x) == 0:
                    i_irr += m
            continue
        circle = next((c for c in cls.components if isinstance(c, Circle)), None)
        lines = [c for c in cls.components if isinstance(c, Line)]
        for x in p1:
            if circle is not None and circle.contains(x):
                if cls.tag == R1:
                    i_r1 += m
                else:
                    i_r2 += m
            elif any(line.contains(x) for line in lines):
                i_lin += m
    return IncidenceReport(
        I_irr=i_irr,
        I_circ_r1=i_r1,
        I_circ_r2=i_r2,
        I_lin=i_lin,
        m_max=family.max_multiplicity,
        weight_sum=family.weight_sum,
    )


def incidence_bound_check(points: Sequence[RatPoint],
                          weighted_items: Sequence[tuple[int, object]],
                          C: int) -> dict:
    """Check |I| <= m_max |P| + sqrt(C) * (sum of weights) * sqrt(|P|).

    ``weighted_items`` are (multiplicity, object-with-contains) pairs whose
    members pairwise intersect at most C times; the comparison is exact
    (squared form, no floats).  Raises HypothesisUnmet when C is below the
    guaranteed intersection cap of the family kind.
    """
    cap = pairwise_intersection_cap(weighted_items)
    if cap > C:
        raise HypothesisUnmet(
            f"family admits up to {cap} pairwise intersections, C = {C} too small",
            offender=cap,
        )
    total = 0
    m_max = 0
    weight = 0
    for m, obj in weighted_items:
        m_max = max(m_max, m)
        weight += m
        for x in points:
            if obj.contains(x):
                total += m
    npts = len(points)
    slack = total - m_max * npts
    ok = slack <= 0 or slack * slack <= C * weight * weight * npts
    return {
        "incidences": total,
        "mMax": m_max,
        "weightSum": weight,
        "C": cap if C is None else C,
        "nPoints": npts,
        "ok": ok,
    }


def pairwise_intersection_cap(weighted_items) -> int:
    """Guaranteed pairwise-intersection bound by family kind.

    Distinct lines meet at most once, distinct circles (or line/circle
    pairs) at most twice, distinct irreducible cubics at most nine times
    by Bezout since they share no component.
    """
    kinds = set()
    for _, obj in weighted_items:
        if isinstance(obj, Line):
            kinds.add("line")
        elif isinstance(obj, Circle):
            kinds.add("circle")
        else:
            kinds.add("cubic")
    if "cubic" in kinds:
        return 9
    if "circle" in kinds:
        return 2
    return 1 if kinds else 0


def rich_curves(points: Sequence[RatPoint], curves: Sequence[Component],
                k: int) -> dict:
    """Count curves containing at least k points of P.

    When k >= 4 sqrt(N) (checked exactly as k^2 >= 16N), asserts the count
    is below 2N/k.  The curves must pairwise intersect at most twice:
    guaranteed for distinct lines and circles, checked via the cap.
    """
    cap = pairwise_intersection_cap([(1, c) for c in curves])
    if cap > 2:
        raise HypothesisUnmet(
            "rich-curve bound needs curves meeting at most twice", offender=cap
        )
    n = len(points)
    count = 0
    for curve in set(curves):
        hits = sum(1 for x in points if curve.contains(x))
        if hits >= k:
            count += 1
    applicable = k * k >= 16 * n
    verdict = (count * k < 2 * n) if applicable else None
    return {
        "k": k,
        "richCount": count,
        "applicable": applicable,
        "ok": verdict,
        "nPoints": n,
    }


# ---------------------------------------------------------------------------
# Bisector energy

def bisector_energy(p2: Sequence[RatPoint]) -> dict:
    """Q = sum over lines of n(l)^2, n(l) counting ordered pairs of P2
    whose perpendicular bisector is l; plus the measured Lund-Petridis
    ratio Q / (M' N^2 + N^{5/2} log^{1/2} N), never gated."""
    if len(p2) < 2:
        raise ValueError("bisector energy needs at least two points")
    counts: dict[Line, int] = {}
    for i, j in itertools.permutations(range(len(p2)), 2):
        line = Line.perp_bisector(p2[i], p2[j])
        counts[line] = counts.get(line, 0) + 1
    q = sum(v * v for v in counts.values())
    n = len(p2)
    pts = list(p2)
    mprime = max(max_cocircular(pts), max_collinear(pts))
    denom = mprime * n * n + n ** 2.5 * math.sqrt(math.log(n))
    return {
        "Q": q,
        "Mprime": mprime,
        "bisectorLines": len(counts),
        "nMax": max(counts.values()),
        "denominator": denom,
        "ratio": q / denom,
    }
