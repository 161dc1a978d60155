"""Generators for the named point configurations, with exact metadata.

Irrational families (regular polygons, the log spiral) exist either as
exact arc configurations or as rational approximants carrying an explicit
``approximate`` flag; coordinate configurations never hide floats.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from fractions import Fraction

from mpmath import mp

from .census import ArcConfig, CoordConfig
from .errors import PoleInAP, ScaleExceeded
from .exact import RatPoint, TurnAngle, orient, pt, rat


@dataclass
class ConfigMeta:
    """Exact co-circularity and collinearity statistics of a point set."""

    n: int
    convex_position: bool
    max_cocircular: int      # M: most points on one circle
    max_collinear: int       # L: most points on one line
    max_line_or_circle: int  # M': max over both families

    def as_json(self) -> dict:
        return {
            "N": self.n,
            "convexPosition": self.convex_position,
            "M": self.max_cocircular,
            "L": self.max_collinear,
            "Mprime": self.max_line_or_circle,
        }


def is_convex_position(points: list[RatPoint]) -> bool:
    """Exact test: the points are the vertex set of a convex polygon.

    Strict convexity: every point is a hull vertex and no three are
    collinear.  Andrew's monotone chain over rational coordinates.
    """
    n = len(points)
    if n < 3:
        return False
    seq = sorted(points, key=lambda p: (p.x1, p.x2))

    def chain(iterable):
        out: list[RatPoint] = []
        for p in iterable:
            while len(out) >= 2 and orient(out[-2], out[-1], p) <= 0:
                out.pop()
            out.append(p)
        return out

    upper = chain(seq)
    lower = chain(reversed(seq))
    hull = upper[:-1] + lower[:-1]
    return len(hull) == n


def gen_ngon(n: int, with_centre: bool = False) -> ArcConfig:
    """Regular n-gon as exact arcs k/n, optionally with the centre."""
    if n < 3:
        raise ValueError("n-gon needs n >= 3")
    return ArcConfig(
        arcs=[TurnAngle(Fraction(k, n)) for k in range(n)],
        with_centre=with_centre,
        name=f"ngon-{n}{'-centre' if with_centre else ''}",
    )


def gen_line_ap(
    n: int,
    tan_phi0: Fraction = Fraction(1, 7),
    tan_delta: Fraction = Fraction(1, 5),
) -> CoordConfig:
    """Angles in arithmetic progression on a line.

    Two apexes (0, +-1) and n base points (u_k, 0) where u_k runs through
    tan(phi0 + k*delta) via the tangent addition recursion, so every
    coordinate is rational.  Raises PoleInAP when the progression hits
    pi/2 exactly.
    """
    if n < 1:
        raise ValueError("need at least one base point")
    tan_phi0, tan_delta = rat(tan_phi0), rat(tan_delta)
    if tan_delta == 0:
        raise ValueError("tan(delta) = 0 gives a degenerate progression")
    us = [tan_phi0]
    for _ in range(n - 1):
        u = us[-1]
        if 1 - u * tan_delta == 0:
            raise PoleInAP("tangent recursion hit an odd multiple of pi/2")
        us.append((u + tan_delta) / (1 - u * tan_delta))
    points = [pt(0, 1), pt(0, -1)] + [pt(u, 0) for u in us]
    return CoordConfig(points=points, name=f"lineap-{n}")


def gen_parabola(n: int) -> CoordConfig:
    """Points (k, k^2), k = 1..n, on the parabola."""
    if n < 3:
        raise ValueError("need n >= 3")
    return CoordConfig(
        points=[pt(k, k * k) for k in range(1, n + 1)], name=f"parabola-{n}"
    )


def gen_hyperbola(n: int, ratio: Fraction = Fraction(2)) -> CoordConfig:
    """Points (r^k, r^-k), k = 1..n, geometric abscissae on xy = 1."""
    if n < 3:
        raise ValueError("need n >= 3")
    r = rat(ratio)
    if r <= 1:
        raise ValueError("ratio must exceed 1")
    return CoordConfig(
        points=[pt(r ** k, r ** -k) for k in range(1, n + 1)],
        name=f"hyperbola-{n}-r{r.numerator}_{r.denominator}",
    )


def gen_log_spiral(n: int, precision: int = 64) -> CoordConfig:
    """Rational approximants of points on a logarithmic spiral.

    The spiral r = exp(theta/4) is sampled over a fixed arc; coordinates
    are dyadic roundings at ``precision`` bits and the config is flagged
    approximate.
    """
    if n < 3:
        raise ValueError("need n >= 3")
    points = []
    with mp.workprec(precision + 16):
        for k in range(n):
            theta = mp.mpf(5) / 2 * k / max(n - 1, 1)
            r = mp.e ** (theta / 4)
            x = r * mp.cos(theta)
            y = r * mp.sin(theta)
            scale = 1 << precision
            points.append(
                pt(
                    Fraction(int(mp.floor(x * scale + mp.mpf("0.5"))), scale),
                    Fraction(int(mp.floor(y * scale + mp.mpf("0.5"))), scale),
                )
            )
    cfg = CoordConfig(points=points, name=f"logspiral-{n}-p{precision}")
    cfg.approximate = True
    return cfg


def gen_convex_perturbed(n: int, seed: int = 0) -> CoordConfig:
    """Random rational points in certified convex position.

    Rational points on the unit circle (tangent half-angle parameters)
    with a small radial jitter; the jitter shrinks until the exact
    convexity check passes.  Deterministic for a fixed seed.
    """
    if n < 3:
        raise ValueError("need n >= 3")
    rng = random.Random(seed)
    taus = sorted(rng.sample(range(-2000, 2001), n))
    jitter_den = 64
    for _ in range(12):
        points = []
        for tk in taus:
            tau = Fraction(tk, 250)
            den = 1 + tau * tau
            base = pt((1 - tau * tau) / den, 2 * tau / den)
            rho = 1 + Fraction(rng.randint(-jitter_den, jitter_den),
                               jitter_den * jitter_den)
            points.append(base.scale(rho))
        if len({(p.x1, p.x2) for p in points}) == n and is_convex_position(points):
            return CoordConfig(points=points, name=f"convex-{n}-s{seed}")
        jitter_den *= 4
    raise AssertionError("convex jitter did not stabilize")  # pragma: no cover


def gen_grid(m: int) -> CoordConfig:
    """m x m integer grid (not in convex position; bisector-energy fodder)."""
    if m < 2:
        raise ValueError("need m >= 2")
    return CoordConfig(
        points=[pt(i, j) for i in range(m) for j in range(m)],
        name=f"grid-{m}",
    )


# ---------------------------------------------------------------------------
# Exact metadata

def circumcentre(p: RatPoint, q: RatPoint, r: RatPoint) -> RatPoint | None:
    """Exact circumcentre, or None for collinear points."""
    d = 2 * ((q.x1 - p.x1) * (r.x2 - p.x2) - (q.x2 - p.x2) * (r.x1 - p.x1))
    if d == 0:
        return None
    p2 = p.x1 * p.x1 + p.x2 * p.x2
    q2 = q.x1 * q.x1 + q.x2 * q.x2
    r2 = r.x1 * r.x1 + r.x2 * r.x2
    ux = (p2 * (q.x2 - r.x2) + q2 * (r.x2 - p.x2) + r2 * (p.x2 - q.x2)) / d
    uy = (p2 * (r.x1 - q.x1) + q2 * (p.x1 - r.x1) + r2 * (q.x1 - p.x1)) / d
    return RatPoint(ux, uy)


def _line_key(p: RatPoint, q: RatPoint):
    a = q.x2 - p.x2
    b = p.x1 - q.x1
    c = -(a * p.x1 + b * p.x2)
    lead = a if a != 0 else b
    return (a / lead, b / lead, c / lead)


def max_collinear(points: list[RatPoint]) -> int:
    """Most points on one straight line, exhaustive over pairs."""
    if len(points) < 2:
        return len(points)
    lines: dict = {}
    for i, j in itertools.combinations(range(len(points)), 2):
        key = _line_key(points[i], points[j])
        lines.setdefault(key, set()).update((i, j))
    return max(len(v) for v in lines.values())


def max_cocircular(points: list[RatPoint]) -> int:
    """Most points on one circle, exhaustive over non-collinear triples."""
    n = len(points)
    if n < 3:
        return 0
    circles: dict = {}
    for i, j, k in itertools.combinations(range(n), 3):
        c = circumcentre(points[i], points[j], points[k])
        if c is None:
            continue
        r2 = (points[i].x1 - c.x1) ** 2 + (points[i].x2 - c.x2) ** 2
        circles.setdefault((c.x1, c.x2, r2), set()).update((i, j, k))
    if not circles:
        return 0
    return max(len(v) for v in circles.values())


def config_meta(cfg: CoordConfig, max_n: int = 60) -> ConfigMeta:
    """Exact M, L, M' by exhaustive pair/triple enumeration."""
    n = cfg.n
    if n > max_n:
        raise ScaleExceeded(f"meta computation capped at N <= {max_n}, got {n}")
    points = cfg.points
    m = max_cocircular(points)
    ell = max_collinear(points)
    return ConfigMeta(
        n=n,
        convex_position=is_convex_position(points),
        max_cocircular=m,
        max_collinear=ell,
        max_line_or_circle=max(m, ell),
    )


def rational_circle_point(tau: Fraction) -> RatPoint:
    """Exact unit-circle point from a tangent half-angle parameter."""
    tau = rat(tau)
    den = 1 + tau * tau
    return pt((1 - tau * tau) / den, 2 * tau / den)
