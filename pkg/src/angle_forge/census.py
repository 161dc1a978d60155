"""Distinct-angle censuses and per-vertex direction sets.

Two engines: the coordinate engine keys unoriented angles in (0, pi) by
exact cotangents; the arc engine works on circle configurations where every
angle is a rational number of turns via the inscribed angle theorem.
"""

from __future__ import annotations

import functools
import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import (
    CoincidentPoint,
    DegenerateAngle,
    OracleMismatch,
    ScaleExceeded,
    TooFewPoints,
)
from .exact import (
    CotKey,
    Direction,
    RatPoint,
    TanBranchAngle,
    TurnAngle,
    rat,
    rat_str,
    unoriented_cot_key,
    wedge,
)


@dataclass
class CoordConfig:
    """Named configuration of pairwise distinct rational points."""

    points: list[RatPoint]
    name: str = ""

    def __post_init__(self):
        seen = set()
        for p in self.points:
            key = (p.x1, p.x2)
            if key in seen:
                raise ValueError(f"duplicate point {p} in config {self.name!r}")
            seen.add(key)

    @property
    def n(self) -> int:
        return len(self.points)

    def as_json(self) -> dict:
        return {"name": self.name, "coords": [p.as_json() for p in self.points]}


@dataclass
class ArcConfig:
    """Points on a unit circle given by exact arc positions, plus optionally
    the centre."""

    arcs: list[TurnAngle]
    with_centre: bool = False
    name: str = ""

    def __post_init__(self):
        seen = set()
        for a in self.arcs:
            if a.turns in seen:
                raise ValueError(f"duplicate arc {a} in config {self.name!r}")
            seen.add(a.turns)

    @property
    def n(self) -> int:
        return len(self.arcs) + (1 if self.with_centre else 0)

    def as_json(self) -> dict:
        return {
            "name": self.name,
            "arcs": [rat_str(a.turns) for a in self.arcs],
            "withCentre": self.with_centre,
        }


def config_from_json(obj: dict):
    if "coords" in obj:
        return CoordConfig(
            points=[RatPoint.from_json(c) for c in obj["coords"]],
            name=obj.get("name", ""),
        )
    if "arcs" in obj:
        return ArcConfig(
            arcs=[TurnAngle(rat(a)) for a in obj["arcs"]],
            with_centre=bool(obj.get("withCentre", False)),
            name=obj.get("name", ""),
        )
    raise ValueError("config JSON needs a 'coords' or 'arcs' field")


@dataclass
class AngleCensus:
    """Exact census of distinct angle values in the open interval (0, pi)."""

    distinct: frozenset
    count: int
    n: int
    engine: str
    name: str = ""

    @property
    def K(self) -> Fraction:
        return Fraction(self.count, self.n)

    def as_json(self) -> dict:
        return {
            "name": self.name,
            "N": self.n,
            "engine": self.engine,
            "distinct": self.count,
            "K": rat_str(self.K),
        }


def distinct_angles_coords(cfg: CoordConfig) -> AngleCensus:
    """Count distinct unoriented angles over all triples, cotangent keys.

    Collinear triples are degenerate (angle 0 or pi) and excluded.
    """
    n = cfg.n
    if n < 3:
        raise TooFewPoints(f"need at least 3 points, got {n}")
    keys: set[CotKey] = set()
    pts = cfg.points
    for xi in range(n):
        x = pts[xi]
        others = [pts[j] for j in range(n) if j != xi]
        for p, q in itertools.combinations(others, 2):
            try:
                keys.add(unoriented_cot_key(x, p, q))
            except DegenerateAngle:
                continue
    return AngleCensus(
        distinct=frozenset(keys),
        count=len(keys),
        n=n,
        engine="coords",
        name=cfg.name,
    )


def distinct_angles_arcs(cfg: ArcConfig) -> AngleCensus:
    """Arc-engine census: every angle is an exact number of turns.

    Vertex cases: inscribed angle (half the subtended arc), vertex at the
    centre (full arc), and vertex on the circle with the centre as one base
    point (isosceles base angle).  Values of exactly half a turn (angle pi)
    come from collinear triples and are excluded.  All arithmetic runs over
    integers in units of 1/(4D) turns, D the common arc denominator.
    """
    if cfg.n < 3:
        raise TooFewPoints(f"need at least 3 points, got {cfg.n}")
    den = 1
    for a in cfg.arcs:
        den = den * a.turns.denominator // math.gcd(den, a.turns.denominator)
    pos = [int(a.turns * den) for a in cfg.arcs]  # positions in 1/D turns
    m = len(pos)
    values: set[int] = set()  # angle values in 1/(4D) turns

    for ui in range(m):
        u = pos[ui]
        s = sorted((pos[j] - u) % den for j in range(m) if j != ui)
        for a, b in itertools.combinations(s, 2):
            values.add((b - a) * 2)  # inscribed: half of (1/D)-arc difference

    if cfg.with_centre:
        for vi, wi in itertools.combinations(range(m), 2):
            d = (pos[wi] - pos[vi]) % den
            central = min(d, den - d) * 4
            if central != 2 * den:  # exclude the straight angle pi
                values.add(central)
        for ui in range(m):
            for vi in range(m):
                if vi == ui:
                    continue
                sv = (pos[vi] - pos[ui]) % den
                val = abs(2 * sv - den)  # pi/2 minus half the apex arc
                if val != 0:
                    values.add(val)

    values.discard(0)
    return AngleCensus(
        distinct=frozenset(TurnAngle(Fraction(v, 4 * den)) for v in values),
        count=len(values),
        n=cfg.n,
        engine="arcs",
        name=cfg.name,
    )


# ---------------------------------------------------------------------------
# Direction sets

@dataclass
class DirectionSet:
    """Directions from a vertex retained in an open half-plane.

    ``dirs`` are absolute lifted direction angles, strictly increasing and
    spanning less than pi.  They are not measured from ``zero_choice``: the
    exact gap bisector has an irrational tangent, and every downstream
    comparison (differences, sums against intervals) is invariant under the
    shift, so absolute angles are used.  ``point_indices[i]`` is the input
    point realizing ``dirs[i]``.
    """

    vertex: RatPoint
    dirs: list[TanBranchAngle]
    point_indices: list[int]
    zero_choice: Direction
    n_input: int = 0


_PI = TanBranchAngle(Fraction(0), 1)


def _lift_increasing(vectors: list[RatPoint]) -> list[TanBranchAngle]:
    """Lift direction angles of vectors (sorted ccw within an open
    half-plane) to strictly increasing reals."""
    out: list[TanBranchAngle] = []
    for v in vectors:
        a = TanBranchAngle.from_vector(v)
        if out:
            while a <= out[-1]:
                a = TanBranchAngle(a.tan, a.branch + 1)
        out.append(a)
    if len(out) >= 2 and not (out[-1] - out[0]) < _PI:
        raise AssertionError("retained directions span at least pi")
    return out


def direction_set(x: RatPoint, p2: Sequence[RatPoint]) -> DirectionSet:
    """Retain the directions from x to p2 inside an open half-plane.

    The half-plane boundary passes through a rational interior direction of
    the largest angular gap (a stand-in for the exact bisector, whose
    tangent is irrational in general), flipped if needed so that at least
    half of the distinct directions are retained.  Tied rays collapse to
    one direction.
    """
    vecs: list[tuple[Direction, int]] = []
    seen: set[Direction] = set()
    for i, p in enumerate(p2):
        v = p - x
        if v.is_zero():
            raise CoincidentPoint(f"p2[{i}] equals the vertex")
        d = Direction.from_vector(v)
        if d not in seen:
            seen.add(d)
            vecs.append((d, i))

    m = len(vecs)
    zc = _best_axis(vecs)
    left = [(d, i) for d, i in vecs if wedge(zc.vector(), d.vector()) > 0]
    assert len(left) >= (m + 1) // 2

    # within an open half-plane the wedge comparator is a strict total order
    def cmp_half(a, b):
        w = wedge(a[0].vector(), b[0].vector())
        return -1 if w > 0 else (1 if w < 0 else 0)

    left.sort(key=functools.cmp_to_key(cmp_half))
    dirs = _lift_increasing([d.vector() for d, _ in left])
    return DirectionSet(
        vertex=x,
        dirs=dirs,
        point_indices=[i for _, i in left],
        zero_choice=zc,
        n_input=len(p2),
    )


def _best_axis(vecs: list[tuple[Direction, int]]) -> Direction:
    """Zero-axis direction maximizing the retained half-plane count.

    The retained set is an open half-plane, so what matters is the
    boundary LINE: working mod pi (each direction collapses onto its
    line), candidate axes are rational interior directions of the angular
    gaps of the line pencil, where no input direction is parallel or
    anti-parallel to the axis.  Among gaps, the winner maximizes the
    larger side count (so a set inside an open half-plane is retained
    whole), with wider gaps then lower index as tie-breaks; the axis is
    oriented so its positive side is the winning one.
    """
    lines: set[Direction] = set()
    for d, _ in vecs:
        lines.add(d if (d.dx > 0 or (d.dx == 0 and d.dy > 0)) else -d)
    canons = sorted(
        lines, key=lambda c: TanBranchAngle.from_vector(c.vector())._ord_key()
    )
    mlines = len(canons)
    if mlines == 1:
        u = canons[0]
        axes = [Direction(-u.dy, u.dx)]  # perpendicular axis avoids the line
        gaps = [_PI]
    else:
        angles = [TanBranchAngle.from_vector(c.vector()) for c in canons]
        gaps = [angles[i + 1] - angles[i] for i in range(mlines - 1)]
        gaps.append(angles[0] + _PI - angles[mlines - 1])
        axes = [
            Direction.from_vector(canons[i].vector() + canons[i + 1].vector())
            for i in range(mlines - 1)
        ]
        axes.append(
            Direction.from_vector(canons[mlines - 1].vector() - canons[0].vector())
        )

    best = None
    for i, axis in enumerate(axes):
        left = sum(1 for d, _ in vecs if wedge(axis.vector(), d.vector()) > 0)
        count = max(left, len(vecs) - left)
        cand = (count, gaps[i], -i, axis if left >= len(vecs) - left else -axis)
        if best is None or (cand[0], cand[1], cand[2]) > (best[0], best[1], best[2]):
            best = cand
    return best[3]


# ---------------------------------------------------------------------------
# Floating oracle crosscheck

def float_cluster_count(angles: list[float], eps: float = 1e-9) -> int:
    """Cluster count of a float multiset: gaps > eps split clusters."""
    if not angles:
        return 0
    angles = sorted(angles)
    count = 1
    for a, b in zip(angles, angles[1:]):
        if b - a > eps:
            count += 1
    return count


def _float_angles(coords: list[tuple[float, float]]) -> list[float]:
    """All unoriented angles of a float point list, open-interval filtered."""
    out = []
    n = len(coords)
    for xi in range(n):
        x = coords[xi]
        rest = [coords[j] for j in range(n) if j != xi]
        for (a1, a2), (b1, b2) in itertools.combinations(rest, 2):
            u = (a1 - x[0], a2 - x[1])
            v = (b1 - x[0], b2 - x[1])
            w = u[0] * v[1] - u[1] * v[0]
            d = u[0] * v[0] + u[1] * v[1]
            ang = math.atan2(abs(w), d)
            if 1e-12 < ang < math.pi - 1e-12:
                out.append(ang)
    return out


def config_float_coords(cfg) -> list[tuple[float, float]]:
    if isinstance(cfg, CoordConfig):
        return [p.to_floats() for p in cfg.points]
    coords = [(math.cos(a.to_radians()), math.sin(a.to_radians()))
              for a in cfg.arcs]
    if cfg.with_centre:
        coords.append((0.0, 0.0))
    return coords


def census_crosscheck(cfg, eps: float = 1e-9) -> dict:
    """Compare the exact census against a float brute-force cluster count.

    Raises OracleMismatch with diagnostic data when the counts differ.
    Scale-limited: the float oracle is only trustworthy for small N.
    """
    if cfg.n > 14:
        raise ScaleExceeded(f"float oracle limited to N <= 14, got {cfg.n}")
    if isinstance(cfg, CoordConfig):
        exact = distinct_angles_coords(cfg).count
    else:
        exact = distinct_angles_arcs(cfg).count
    floats = _float_angles(config_float_coords(cfg))
    oracle = float_cluster_count(floats, eps)
    if oracle != exact:
        gaps = sorted(floats)
        worst = min(
            (b - a for a, b in zip(gaps, gaps[1:]) if b - a > 0),
            default=float("inf"),
        )
        raise OracleMismatch(
            f"exact {exact} != oracle {oracle} for {cfg.name!r} "
            f"(min positive float gap {worst:.3e}, eps {eps:.1e})"
        )
    return {"name": cfg.name, "N": cfg.n, "exact": exact, "oracle": oracle}
