"""Order assumption machinery: convex split, neighbour structure, the
bipartite angle-equality graph, and the normal-interval counting chain.

Interval and difference arithmetic is generic over exact angle values:
anything totally ordered with exact +/- works, so the coordinate pipeline
feeds TanBranchAngle and the ideal-circle oracles feed plain Fractions.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .census import CoordConfig, DirectionSet, direction_set, distinct_angles_coords
from .configs import is_convex_position
from .errors import (
    DegenerateSplit,
    LemmaViolation,
    NotConvexPosition,
    ScaleExceeded,
    TooFewPoints,
)
from .exact import (
    RatPoint,
    cyclic_direction_order,
    dot,
    orient,
    pt,
    rat,
    wedge,
)


@dataclass
class OrderedPair:
    """Two disjoint point sets; every x in P1 sees P2 in the same cyclic
    direction order (checked by check_order_assumption, not on build)."""

    P1: list[RatPoint]
    P2: list[RatPoint]
    rotation_tan: Optional[Fraction] = None  # set when split rotated the input

    @property
    def n(self) -> int:
        return len(self.P1) + len(self.P2)

    def all_points(self) -> list[RatPoint]:
        return list(self.P1) + list(self.P2)


@dataclass
class NeighbourOrder:
    """Common cyclic counterclockwise order on P2, canonically rotated to
    start at index 0, with the within-window relation."""

    order: list[int]
    window: int = 5

    def position(self, i: int) -> int:
        return self.order.index(i)

    def successors(self, i: int, window: Optional[int] = None) -> list[int]:
        w = self.window if window is None else window
        m = len(self.order)
        pos = self.order.index(i)
        return [self.order[(pos + j) % m] for j in range(1, min(w, m - 1) + 1)]

    def neighbour(self, i: int) -> int:
        return self.successors(i, 1)[0]


def _canonical_rotation(seq: list[int]) -> list[int]:
    k = seq.index(min(seq))
    return seq[k:] + seq[:k]


def check_order_assumption(pair: OrderedPair) -> tuple[bool, Optional[tuple]]:
    """Definition check: common cyclic order up to shift, and no P1 point on
    a line through two P2 points.  Returns (ok, witness)."""
    p1, p2 = pair.P1, pair.P2
    if not p1 or not p2:
        return False, None
    keys1 = {(p.x1, p.x2) for p in p1}
    for q in p2:
        if (q.x1, q.x2) in keys1:
            return False, ("overlap", q)
    for xi, x in enumerate(p1):
        for ai, bi in itertools.combinations(range(len(p2)), 2):
            if orient(x, p2[ai], p2[bi]) == 0:
                return False, (xi, ai, bi)
    if len(p2) == 1:
        return True, None
    ref = _canonical_rotation(cyclic_direction_order(p1[0], p2))
    for xi in range(1, len(p1)):
        got = _canonical_rotation(cyclic_direction_order(p1[xi], p2))
        if got != ref:
            pos = next(k for k in range(len(ref)) if ref[k] != got[k])
            return False, (xi, ref[pos], got[pos])
    return True, None


def neighbour_order(pair: OrderedPair, window: int = 5) -> NeighbourOrder:
    """Canonical ccw cyclic order of P2 as seen from any P1 point."""
    return NeighbourOrder(
        order=_canonical_rotation(cyclic_direction_order(pair.P1[0], pair.P2)),
        window=window,
    )


# ---------------------------------------------------------------------------
# Convex split

def _rotated(points: list[RatPoint], t: Fraction) -> list[RatPoint]:
    den = 1 + t * t
    c, s = (1 - t * t) / den, 2 * t / den
    return [pt(c * p.x1 - s * p.x2, s * p.x1 + c * p.x2) for p in points]


def split_convex(cfg: CoordConfig) -> OrderedPair:
    """Split a convex-position set by a horizontal line into upper P1 and
    lower P2, excluding up to two points on the line.

    If some ordinate is shared by three or more points (impossible for
    strictly convex input, but guarded), the configuration is rotated by a
    rational-tangent angle first.
    """
    n = cfg.n
    if n < 6:
        raise TooFewPoints(f"split needs N >= 6, got {n}")
    if not is_convex_position(cfg.points):
        raise NotConvexPosition(f"{cfg.name!r} is not in convex position")

    points = cfg.points
    rotation = None
    for attempt in range(50):
        counts: dict[Fraction, int] = {}
        for p in points:
            counts[p.x2] = counts.get(p.x2, 0) + 1
        if max(counts.values()) <= 2:
            break
        rotation = Fraction(1, 7 + attempt)
        points = _rotated(cfg.points, rotation)
    else:
        raise DegenerateSplit("no rotation separated the ordinates")

    ys = sorted(p.x2 for p in points)
    candidates: list[Fraction] = []
    if n % 2 == 0 and ys[n // 2 - 1] < ys[n // 2]:
        candidates.append((ys[n // 2 - 1] + ys[n // 2]) / 2)
    candidates.extend((ys[(n - 1) // 2], ys[n // 2]))

    def split_at(m: Fraction):
        lower = [p for p in points if p.x2 < m]
        upper = [p for p in points if p.x2 > m]
        return upper, lower

    best = max(candidates, key=lambda m: min(len(s) for s in split_at(m)))
    upper, lower = split_at(best)
    floor_half = n // 2 - 1
    if min(len(upper), len(lower)) < floor_half:
        raise DegenerateSplit(
            f"split sizes {len(upper)}/{len(lower)} below {floor_half}"
        )
    pair = OrderedPair(P1=upper, P2=lower, rotation_tan=rotation)
    ok, witness = check_order_assumption(pair)
    if not ok:  # convex-position splits always satisfy the order assumption
        raise AssertionError(f"convex split failed order check: {witness}")
    return pair


# ---------------------------------------------------------------------------
# Neighbour uniqueness (exhaustive lemma check)

def _oriented_angle_key(x: RatPoint, p: RatPoint, q: RatPoint):
    """Complete key of the oriented angle pxq mod 2*pi: (cot, wedge sign),
    or a degenerate marker for collinear triples."""
    u, v = p - x, q - x
    w = wedge(u, v)
    if w == 0:
        return ("deg", 1 if dot(u, v) > 0 else -1)  # angle 0 vs pi
    return (dot(u, v) / w, 1 if w > 0 else -1)


def verify_neighbour_uniqueness(pair: OrderedPair) -> bool:
    """Exhaustively confirm: oriented angle pxq = sxq implies p = s.

    Never fires on a valid OrderedPair; doubles as an order-assumption
    integrity test.  Raises LemmaViolation with the counterexample.
    """
    p1, p2 = pair.P1, pair.P2
    for xi, x in enumerate(p1):
        for qi, q in enumerate(p2):
            seen: dict = {}
            for pi_, p in enumerate(p2):
                if pi_ == qi:
                    continue
                key = _oriented_angle_key(x, p, q)
                if key in seen:
                    raise LemmaViolation(
                        "equal oriented angles with distinct first base points",
                        witness=(xi, seen[key], pi_, qi),
                    )
                seen[key] = pi_
    return True


# ---------------------------------------------------------------------------
# The bipartite graph

@dataclass
class BipartiteGraph:
    """Edges (x, (p, s)) of the angle-equality graph, plus the restricted
    variant where the witnessing quadruple has four distinct points."""

    edges: set[tuple[int, int, int]]
    restricted: set[tuple[int, int, int]]
    witnesses: dict[tuple[int, int, int], tuple[int, int]]
    window: int
    n1: int
    n2: int

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    @property
    def restricted_count(self) -> int:
        return len(self.restricted)

    def degree(self, xi: int) -> int:
        return sum(1 for e in self.edges if e[0] == xi)


def build_graph(pair: OrderedPair, window: int = 5) -> BipartiteGraph:
    """Exact edge set: (x,(p,s)) is an edge iff some q within ``window`` of
    p and t within ``window`` of s give equal oriented angles pxq = sxt,
    both in (0, pi)."""
    order = neighbour_order(pair, window)
    p1, p2 = pair.P1, pair.P2
    m2 = len(p2)
    edges: set = set()
    restricted: set = set()
    witnesses: dict = {}

    succ = {i: order.successors(i, window) for i in range(m2)}
    for xi, x in enumerate(p1):
        buckets: dict[Fraction, list[tuple[int, int]]] = {}
        for pi_ in range(m2):
            u = p2[pi_] - x
            for qi in succ[pi_]:
                v = p2[qi] - x
                w = wedge(u, v)
                if w > 0:  # oriented angle in (0, pi)
                    buckets.setdefault(dot(u, v) / w, []).append((pi_, qi))
        for entries in buckets.values():
            entries.sort()
            for (pi_, qi) in entries:
                for (si, ti) in entries:
                    e = (xi, pi_, si)
                    edges.add(e)
                    witnesses.setdefault(e, (qi, ti))
                    if pi_ != si and qi != ti and pi_ != ti and si != qi:
                        restricted.add(e)
    return BipartiteGraph(
        edges=edges,
        restricted=restricted,
        witnesses=witnesses,
        window=window,
        n1=len(p1),
        n2=m2,
    )


# ---------------------------------------------------------------------------
# Difference ladders, sumsets, normal intervals

def diff_ladder(dirs: Sequence) -> list:
    """Sorted distinct positive differences of an ascending value list."""
    out = set()
    for i, j in itertools.combinations(range(len(dirs)), 2):
        out.add(dirs[j] - dirs[i])
    return sorted(out)


def sumset_with_differences(dirs: Sequence, dprime: Sequence) -> list:
    """Sorted distinct values of D' + (D - D), zero difference included."""
    diffs = set()
    for a in dirs:
        for b in dirs:
            diffs.add(a - b)
    out = set()
    for d in dprime:
        for delta in diffs:
            out.add(d + delta)
    return sorted(out)


@dataclass
class NormalIntervalReport:
    """Per-vertex record of the squeezing structure on one direction set."""

    m: int                      # |D|
    m_prime: int                # |D'|
    K_int: int
    n_proxy: int
    threshold: int              # 49 K^2
    sumset_size: int            # |D' + (D - D)|
    hypothesis_ok: bool         # sumset_size <= 16 K^2 n_proxy
    intervals: list             # (lo, hi, sum_count, inner_count, normal)
    normal_count: int
    ladder: list                # positive differences of D, ascending
    nu: dict                    # diameter -> count over normal intervals
    claim_third_normal: Optional[bool]   # None when hypothesis unmet
    claim_diameter: bool

    @property
    def interval_count(self) -> int:
        return len(self.intervals)

    @property
    def sum_nu(self) -> int:
        return sum(self.nu.values())

    @property
    def sum_nu_sq(self) -> int:
        return sum(v * v for v in self.nu.values())


def normal_intervals(
    dirs: Sequence,
    dprime: Optional[Sequence] = None,
    K: int = 1,
    n_proxy: Optional[int] = None,
    inner_cap: int = 4,
) -> NormalIntervalReport:
    """Classify the neighbouring intervals of D' as normal or not.

    Normal: fewer than 49K^2 elements of D' + (D - D) in [d_i, d_{i+1})
    and at most ``inner_cap`` elements of D strictly inside.  Claim
    verdicts: at least a third of the intervals are normal (gated on the
    measured sumset hypothesis), and every normal interval's diameter lies
    among the first 49K^2 positive differences of D (ungated; it is an
    instance-level theorem).
    """
    dirs = list(dirs)
    if any(not dirs[i] < dirs[i + 1] for i in range(len(dirs) - 1)):
        raise ValueError("dirs must be strictly ascending")
    if dprime is None:
        dprime = dirs
    dprime = list(dprime)
    dset = set(dirs)
    if any(d not in dset for d in dprime):
        raise ValueError("dprime must be a subset of dirs")
    if 2 * len(dprime) < len(dirs):
        raise ValueError("need |D'| >= |D|/2")
    K = max(1, int(math.ceil(K)))
    threshold = 49 * K * K
    if n_proxy is None:
        n_proxy = 2 * len(dirs)

    sumset = sumset_with_differences(dirs, dprime)
    hypothesis_ok = len(sumset) <= 16 * K * K * n_proxy
    ladder = diff_ladder(dirs)
    ladder_index = {v: i + 1 for i, v in enumerate(ladder)}  # 1-based

    intervals = []
    nu: dict = {}
    claim_diameter = True
    for lo, hi in zip(dprime, dprime[1:]):
        sum_count = sum(1 for v in sumset if not v < lo and v < hi)
        inner_count = sum(1 for v in dirs if lo < v < hi)
        normal = sum_count < threshold and inner_count <= inner_cap
        intervals.append((lo, hi, sum_count, inner_count, normal))
        if normal:
            diam = hi - lo
            nu[diam] = nu.get(diam, 0) + 1
            if ladder_index[diam] > threshold:
                claim_diameter = False
    normal_count = sum(1 for iv in intervals if iv[4])

    if hypothesis_ok and intervals:
        claim_third = normal_count * 3 >= len(intervals)
    elif not intervals:
        claim_third = True
    else:
        claim_third = None

    return NormalIntervalReport(
        m=len(dirs),
        m_prime=len(dprime),
        K_int=K,
        n_proxy=n_proxy,
        threshold=threshold,
        sumset_size=len(sumset),
        hypothesis_ok=hypothesis_ok,
        intervals=intervals,
        normal_count=normal_count,
        ladder=ladder,
        nu=nu,
        claim_third_normal=claim_third,
        claim_diameter=claim_diameter,
    )


# ---------------------------------------------------------------------------
# Pluennecke-Ruzsa exhaustive oracle

def plunnecke_subset(X: Sequence, Bs) -> tuple[list, dict]:
    """Exhaustively find X' of size > |X|/2 minimizing |X' + sum of Bs|.

    Verifies the sumset conclusion |X' + B_1 + ... + B_k| <=
    alpha_1 ... alpha_k 2^k |X| with measured alpha_i = |X + B_i| / |X|.
    Exhaustive over subsets, so |X| is capped at 12.
    """
    X = list(X)
    if len(X) > 12:
        raise ScaleExceeded(f"exhaustive search capped at |X| = 12, got {len(X)}")
    if not X:
        raise ValueError("X must be nonempty")
    if Bs and not isinstance(Bs[0], (list, tuple)):
        Bs = [Bs]
    Bs = [list(b) for b in Bs]

    def sumset(a, b):
        return {x + y for x in a for y in b}

    alphas = [Fraction(len(sumset(X, b)), len(X)) for b in Bs]

    def combined(xs):
        acc = set(xs)
        for b in Bs:
            acc = sumset(acc, b)
        return acc

    n = len(X)
    best_mask, best_size = None, None
    for mask in range(1, 1 << n):
        size = mask.bit_count()
        if 2 * size <= n:
            continue
        s = len(combined([X[i] for i in range(n) if mask >> i & 1]))
        if best_size is None or s < best_size:
            best_mask, best_size = mask, s
    xprime = [X[i] for i in range(n) if best_mask >> i & 1]

    bound = Fraction(len(X)) * (2 ** len(Bs))
    for a in alphas:
        bound *= a
    report = {
        "alphas": alphas,
        "k": len(Bs),
        "achieved": best_size,
        "bound": bound,
        "bound_ok": best_size <= bound,
        "xprime_size": len(xprime),
    }
    return xprime, report


# ---------------------------------------------------------------------------
# The full per-vertex lower-bound chain

def verify_lower_bound(
    pair: OrderedPair,
    window: int = 5,
    census=None,
) -> dict:
    """Measure the graph lower-bound chain on an order-assumption instance.

    Per vertex: eq (1) |D_x - D_x| <= 2|A(P)| on nonzero differences, the
    normal-interval claims, and the exact inequalities |N(x)| >= sum nu^2
    and 49 K^2 |N(x)| >= (sum nu)^2.  Reports |G| K^2 / N^3 without gating
    it.  The nu-to-edge argument needs a window of at least 5.
    """
    if window < 5:
        raise ValueError("the nu^2 chain needs window >= 5")
    ok, witness = check_order_assumption(pair)
    if not ok:
        raise LemmaViolation("order assumption fails", witness=witness)
    n = pair.n
    if census is None:
        census = distinct_angles_coords(
            CoordConfig(points=pair.all_points(), name="pair")
        )
    K = census.K
    K_int = max(1, math.ceil(K))
    graph = build_graph(pair, window)

    per_vertex = []
    all_eq1 = True
    all_chain = True
    claims_third = []
    claim_diam = True
    for xi, x in enumerate(pair.P1):
        ds = direction_set(x, pair.P2)
        ladder = diff_ladder(ds.dirs)
        eq1_ok = 2 * len(ladder) <= 2 * census.count
        all_eq1 = all_eq1 and eq1_ok
        rep = normal_intervals(ds.dirs, K=K_int, n_proxy=n)
        claims_third.append(rep.claim_third_normal)
        claim_diam = claim_diam and rep.claim_diameter
        nx = graph.degree(xi)
        chain_nu = nx >= rep.sum_nu_sq
        chain_cs = nx * rep.threshold >= rep.sum_nu ** 2
        all_chain = all_chain and chain_nu and chain_cs
        per_vertex.append(
            {
                "x": xi,
                "m": rep.m,
                "diffCount": len(ladder),
                "eq1": eq1_ok,
                "normalCount": rep.normal_count,
                "intervals": rep.interval_count,
                "sumNu": rep.sum_nu,
                "sumNuSq": rep.sum_nu_sq,
                "degree": nx,
                "chainNu": chain_nu,
                "chainCauchySchwarz": chain_cs,
                "sumsetSize": rep.sumset_size,
                "hypothesisOk": rep.hypothesis_ok,
                "claimThird": rep.claim_third_normal,
                "claimDiameter": rep.claim_diameter,
            }
        )

    gated = [c for c in claims_third if c is not None]
    ratio = Fraction(graph.edge_count) * K * K / Fraction(n) ** 3
    return {
        "N": n,
        "K": K,
        "K_int": K_int,
        "census": census.count,
        "graphEdges": graph.edge_count,
        "restrictedGraphEdges": graph.restricted_count,
        "window": window,
        "eq1": all_eq1,
        "chain": all_chain,
        "claimThirdNormal": all(gated) if gated else True,
        "claimThirdGatedCount": len(gated),
        "claimDiameter": claim_diam,
        "ratioGK2N3": ratio,
        "perVertex": per_vertex,
        "graph": graph,
    }
