"""Slope maps between a circle and an external point, their derivatives,
and sumset-growth measurement.

This is the one analytic corner of the package: slopes are arctangents, so
values are high-precision mpmath floats (128-bit default) instead of exact
rationals.  Angles at the circle vertex stay exact through the arc engine;
only the external-vertex angles need floats, certified by clustering at
two widths.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from mpmath import mp, mpf

from .errors import CoincidentParameter, SingularDenominator, UnstableClustering
from .exact import TurnAngle, rat


@dataclass
class CircleSetup:
    """A fixed circle vertex a, an abscissa point (x, 0), and first-quadrant
    arcs A on the unit circle."""

    a: TurnAngle
    x: Fraction
    arcs: list[TurnAngle]
    precision: int = 128

    def __post_init__(self):
        self.x = rat(self.x)
        if self.x in (0, 1):
            raise ValueError("x = 0 (centre) and x = 1 (on circle) are excluded")
        if self.x < 0:
            raise ValueError("x must be nonnegative")
        seen = set()
        for arc in self.arcs:
            if not 0 < arc.turns < Fraction(1, 4):
                raise ValueError("arcs must lie in the open first quadrant")
            if arc.turns in seen or arc.turns == self.a.turns:
                raise ValueError("arcs must be distinct and avoid a")
            seen.add(arc.turns)


def _rad(t: TurnAngle) -> mpf:
    return 2 * mp.pi * mpf(t.turns.numerator) / t.turns.denominator


def beta(t: TurnAngle, x, precision: int = 128) -> mpf:
    """Inclination in (0, pi) of the line joining the circle point at t to
    (x, 0); the vertical case comes out as pi/2, not an error."""
    with mp.workprec(precision):
        tr = _rad(t)
        x = mpf(rat(x).numerator) / rat(x).denominator
        return mp.atan2(mp.sin(tr), mp.cos(tr) - x) % mp.pi


def alpha(t: TurnAngle, a: TurnAngle, precision: int = 128) -> mpf:
    """Inclination in [0, pi) of the chord through circle points t and a."""
    if t.turns == a.turns:
        raise CoincidentParameter("chord endpoints coincide")
    with mp.workprec(precision):
        tr, ar = _rad(t), _rad(a)
        return mp.atan2(mp.sin(tr) - mp.sin(ar), mp.cos(tr) - mp.cos(ar)) % mp.pi


def dalpha_dbeta(t: TurnAngle, x, precision: int = 128) -> mpf:
    """Closed form 1 + (x^2 - 1) / (2 (1 - x cos t))."""
    with mp.workprec(precision):
        tr = _rad(t)
        xv = mpf(rat(x).numerator) / rat(x).denominator
        den = 1 - xv * mp.cos(tr)
        if den == 0:
            raise SingularDenominator("1 - x cos t vanishes")
        return 1 + (xv * xv - 1) / (2 * den)


def d2alpha_dbeta2(t: TurnAngle, x, precision: int = 128) -> mpf:
    """Closed form -x (x^2-1) (x^2 - 2x cos t + 1) sin t / (2 (1 - x cos t)^3)."""
    with mp.workprec(precision):
        tr = _rad(t)
        xv = mpf(rat(x).numerator) / rat(x).denominator
        den = 1 - xv * mp.cos(tr)
        if den == 0:
            raise SingularDenominator("1 - x cos t vanishes")
        num = xv * (xv * xv - 1) * (xv * xv - 2 * xv * mp.cos(tr) + 1) * mp.sin(tr)
        return -num / (2 * den ** 3)


def second_derivative_sign_profile(x, grid: int = 200,
                                   precision: int = 128) -> list[dict]:
    """Signs of d2alpha/dbeta2 on each admissible component of t in (0, pi/2).

    For x > 1 the map beta has a fold at cos t = 1/x, which splits the
    range into two components with opposite signs; for x < 1 there is a
    single component.  Each component's sign constancy is checked on a
    grid and reported.
    """
    xr = rat(x)
    boundaries = [Fraction(0), Fraction(1, 4)]  # in turns
    if xr > 1:
        # the fold cos t = 1/x, located numerically; grid points avoid it
        with mp.workprec(precision):
            pole = mp.acos(mpf(1) / (mpf(xr.numerator) / xr.denominator))
            pole_turns = Fraction(float(pole / (2 * mp.pi))).limit_denominator(10 ** 9)
        if Fraction(0) < pole_turns < Fraction(1, 4):
            boundaries = [Fraction(0), pole_turns, Fraction(1, 4)]
    out = []
    for lo, hi in zip(boundaries, boundaries[1:]):
        signs = set()
        for i in range(1, grid + 1):
            tt = lo + (hi - lo) * Fraction(i, grid + 1)
            val = d2alpha_dbeta2(TurnAngle(tt), xr, precision)
            signs.add(1 if val > 0 else (-1 if val < 0 else 0))
        out.append(
            {
                "lo_turns": lo,
                "hi_turns": hi,
                "signs": sorted(signs),
                "constant": len(signs) == 1,
            }
        )
    return out


# ---------------------------------------------------------------------------
# Growth measurement

@dataclass
class GrowthReport:
    sizes: list[int]
    angles_at_a: list[int]      # |f(B) - f(B)| side: exact arc counts
    angles_at_x: list[int]      # |B - B| side: clustered float counts
    union_counts: list[int]
    fitted_exponent: Optional[float]
    residual: Optional[float]
    precision: int

    def as_json(self) -> dict:
        return {
            "sizes": self.sizes,
            "anglesAtA": self.angles_at_a,
            "anglesAtX": self.angles_at_x,
            "union": self.union_counts,
            "fittedExponent": self.fitted_exponent,
            "residual": self.residual,
            "precisionBits": self.precision,
        }


def _cluster_count(values: list, eps) -> int:
    if not values:
        return 0
    values = sorted(values)
    count = 1
    for a, b in zip(values, values[1:]):
        if b - a > eps:
            count += 1
    return count


def _stable_count(values: list, eps) -> int:
    c1 = _cluster_count(values, eps)
    c2 = _cluster_count(values, 2 * eps)
    if c1 != c2:
        raise UnstableClustering(
            f"cluster counts {c1} vs {c2} at widths {eps} and {2 * eps}"
        )
    return c1


def _exact_angles_at_circle_vertex(a: TurnAngle, arcs: Sequence[TurnAngle]) -> set:
    """Distinct inscribed angles a1-a-a2 in turns, exact Fractions."""
    rel = sorted((arc.turns - a.turns) % 1 for arc in arcs)
    return {(t2 - t1) / 2 for i, t1 in enumerate(rel) for t2 in rel[i + 1:]}


def growth_measure(setup: CircleSetup) -> GrowthReport:
    """Union of distinct angles at the circle vertex a and at (x, 0),
    measured over nested prefixes of A, with a log-log exponent fit.

    Angles at a are exact turn fractions; angles at x are high-precision
    floats, counted by clustering with a two-width stability check.
    """
    if len(setup.arcs) < 4:
        raise ValueError("need |A| >= 4")
    prec = setup.precision
    sizes = sorted({max(4, len(setup.arcs) // d) for d in (8, 4, 2, 1)})
    with mp.workprec(prec):
        xv = mpf(setup.x.numerator) / setup.x.denominator
        eps = mpf(2) ** (-prec // 3)
        betas = []
        for arc in setup.arcs:
            tr = _rad(arc)
            betas.append(mp.atan2(mp.sin(tr), mp.cos(tr) - xv))

        counts_a, counts_x, unions = [], [], []
        for size in sizes:
            arcs = setup.arcs[:size]
            exact = _exact_angles_at_circle_vertex(setup.a, arcs)
            counts_a.append(len(exact))

            bs = betas[:size]
            x_angles = [abs(bs[i] - bs[j])
                        for i in range(size) for j in range(i + 1, size)]
            counts_x.append(_stable_count(x_angles, eps))

            exact_floats = [
                2 * mp.pi * mpf(v.numerator) / v.denominator for v in exact
            ]
            unions.append(_stable_count(exact_floats + x_angles, eps))

    exponent = residual = None
    if len(sizes) >= 2:
        xs = [math.log(s) for s in sizes]
        ys = [math.log(u) for u in unions]
        n = len(xs)
        mx, my = sum(xs) / n, sum(ys) / n
        sxx = sum((v - mx) ** 2 for v in xs)
        sxy = sum((a - mx) * (b - my) for a, b in zip(xs, ys))
        exponent = sxy / sxx
        intercept = my - exponent * mx
        residual = max(abs(ys[i] - (exponent * xs[i] + intercept))
                       for i in range(n))
    return GrowthReport(
        sizes=sizes,
        angles_at_a=counts_a,
        angles_at_x=counts_x,
        union_counts=unions,
        fitted_exponent=exponent,
        residual=residual,
        precision=prec,
    )


def theorem_main_tradeoff(census, m_cocircular: int, c: int = 1) -> dict:
    """Which branch of the main dichotomy the instance witnesses.

    K-branch: (cK)^4 >= N exactly; M-branch: c K M >= N exactly.  Also
    reports the two growth estimates K*N and (N/K)^(13/10); all values are
    measured, none gated.
    """
    n = census.n
    k = census.K
    k_branch = (c * k) ** 4 >= n
    m_branch = c * k * m_cocircular >= n
    kn = k * n
    nk = (n / k) ** Fraction(1) if k else None
    growth = float(n / k) ** 1.3 if k > 0 else None
    return {
        "N": n,
        "K": k,
        "M": m_cocircular,
        "c": c,
        "kBranch": k_branch,
        "mBranch": m_branch,
        "KN": kn,
        "NK_13_10": growth,
        "combinedMin": min(float(kn), growth) if growth is not None else float(kn),
    }
