"""Command-line front end.

Exit codes: 0 success, 1 a gated verification verdict failed, 2 usage
errors (argparse's convention).  All outputs carry the versioned schema
tag and are byte-deterministic for fixed inputs and flags.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .census import (
    ArcConfig,
    CoordConfig,
    census_crosscheck,
    config_from_json,
    distinct_angles_arcs,
    distinct_angles_coords,
)
from .configs import config_meta
from .convexity import (
    CircleSetup,
    GrowthReport,
    dalpha_dbeta,
    d2alpha_dbeta2,
    growth_measure,
    second_derivative_sign_profile,
)
from .curves import bisector_energy, multiplicity_census, weighted_incidences
from .errors import AngleForgeError
from .exact import TurnAngle, rat
from .ordergraph import build_graph, check_order_assumption, split_convex
from .report import (
    SCHEMA,
    dumps_report,
    generate,
    sweep,
    sweep_csv,
    verify_all,
)


def _load_config(path: str):
    with open(path) as fh:
        return config_from_json(json.load(fh))


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _add_common(sp):
    sp.add_argument("--config", required=True, help="config JSON path")
    sp.add_argument("--out", default=None, help="output path (default stdout)")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="angle-forge",
        description="Exact distinct-angle laboratory",
    )
    sub = ap.add_subparsers(dest="cmd", required=True)

    g = sub.add_parser("gen", help="emit a named configuration as JSON")
    g.add_argument("--kind", required=True,
                   choices=["ngon", "lineap", "parabola", "hyperbola",
                            "logspiral", "convex", "grid"])
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--with-centre", action="store_true")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--ratio", default=None)
    g.add_argument("--precision", type=int, default=64)
    g.add_argument("--out", default=None)

    c = sub.add_parser("count-angles", help="exact distinct-angle census")
    _add_common(c)
    c.add_argument("--engine", choices=["coords", "arcs"], default=None)
    c.add_argument("--crosscheck", action="store_true",
                   help="also run the float-cluster oracle (N <= 14)")

    o = sub.add_parser("check-order", help="convex split and order assumption")
    _add_common(o)

    gr = sub.add_parser("graph", help="bipartite angle-equality graph")
    _add_common(gr)
    gr.add_argument("--window", type=int, default=5)

    cu = sub.add_parser("curves", help="curve family and multiplicity census")
    _add_common(cu)

    inc = sub.add_parser("incidence", help="weighted incidence decomposition")
    _add_common(inc)

    be = sub.add_parser("bisector-energy", help="perpendicular bisector energy")
    _add_common(be)

    cv = sub.add_parser("convexity", help="slope-map derivatives and growth")
    cv.add_argument("--x", default="2", help="abscissa point, rational")
    cv.add_argument("--grid", type=int, default=100)
    cv.add_argument("--precision", type=int, default=128)
    cv.add_argument("--growth-size", type=int, default=0,
                    help="run the AP-arcs growth measurement at this |A|")
    cv.add_argument("--out", default=None)

    sw = sub.add_parser("sweep", help="census counts across sizes")
    sw.add_argument("--kind", required=True)
    sw.add_argument("--sizes", required=True,
                    help="comma-separated list, at least three")
    sw.add_argument("--seed", type=int, default=0)
    sw.add_argument("--with-centre", action="store_true")
    sw.add_argument("--format", choices=["json", "csv"], default="json")
    sw.add_argument("--out", default=None)

    va = sub.add_parser("verify-all", help="full verification pipeline")
    _add_common(va)
    va.add_argument("--window", type=int, default=5)

    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return _dispatch(args, ap)
    except AngleForgeError as e:
        sys.stderr.write(f"error: {e}\n")
        return 1
    except (ValueError, OSError) as e:
        sys.stderr.write(f"usage error: {e}\n")
        return 2


def _dispatch(args, ap) -> int:
    if args.cmd == "gen":
        ratio = rat(args.ratio) if args.ratio is not None else None
        cfg = generate(args.kind, args.n, with_centre=args.with_centre,
                       seed=args.seed, ratio=ratio, precision=args.precision)
        obj = cfg.as_json()
        obj["schema"] = SCHEMA
        if getattr(cfg, "approximate", False):
            obj["approximate"] = True
        _emit(json.dumps(obj, sort_keys=True, indent=2) + "\n", args.out)
        return 0

    if args.cmd == "count-angles":
        cfg = _load_config(args.config)
        is_arc = isinstance(cfg, ArcConfig)
        engine = args.engine or ("arcs" if is_arc else "coords")
        if (engine == "arcs") != is_arc:
            ap.error(f"engine {engine!r} does not match the config type")
        census = distinct_angles_arcs(cfg) if is_arc else distinct_angles_coords(cfg)
        out = {"schema": SCHEMA, **census.as_json()}
        if args.crosscheck:
            out["crosscheck"] = census_crosscheck(cfg)
        _emit(dumps_report(out), args.out)
        return 0

    if args.cmd == "check-order":
        cfg = _load_config(args.config)
        pair = split_convex(cfg)
        ok, witness = check_order_assumption(pair)
        out = {
            "schema": SCHEMA,
            "orderAssumption": ok,
            "witness": witness,
            "N1": len(pair.P1),
            "N2": len(pair.P2),
        }
        _emit(dumps_report(out), args.out)
        return 0 if ok else 1

    if args.cmd == "graph":
        cfg = _load_config(args.config)
        pair = split_convex(cfg)
        graph = build_graph(pair, window=args.window)
        out = {
            "schema": SCHEMA,
            "window": args.window,
            "edges": graph.edge_count,
            "restricted": graph.restricted_count,
            "N1": graph.n1,
            "N2": graph.n2,
        }
        _emit(dumps_report(out), args.out)
        return 0

    if args.cmd == "curves":
        cfg = _load_config(args.config)
        pair = split_convex(cfg)
        family, verdict_ = multiplicity_census(pair)
        out = {"schema": SCHEMA, "family": verdict_}
        _emit(dumps_report(out), args.out)
        return 0

    if args.cmd == "incidence":
        cfg = _load_config(args.config)
        pair = split_convex(cfg)
        family, verdict_ = multiplicity_census(pair)
        inc = weighted_incidences(pair.P1, family)
        out = {"schema": SCHEMA, "family": verdict_, "incidences": inc.as_json()}
        _emit(dumps_report(out), args.out)
        return 0

    if args.cmd == "bisector-energy":
        cfg = _load_config(args.config)
        pair = split_convex(cfg)
        out = {"schema": SCHEMA, "bisectorEnergy": bisector_energy(pair.P2)}
        _emit(dumps_report(out), args.out)
        return 0

    if args.cmd == "convexity":
        x = rat(args.x)
        profile = second_derivative_sign_profile(x, grid=args.grid,
                                                 precision=args.precision)
        out = {"schema": SCHEMA, "x": x, "signProfile": profile}
        if args.growth_size:
            n = args.growth_size
            arcs = [TurnAngle(Fraction(k, 5 * n)) for k in range(1, n + 1)]
            setup = CircleSetup(a=TurnAngle(Fraction(1, 2)), x=Fraction(1, 2),
                                arcs=arcs, precision=args.precision)
            out["growth"] = growth_measure(setup).as_json()
        _emit(dumps_report(out), args.out)
        return 0

    if args.cmd == "sweep":
        sizes = [int(s) for s in args.sizes.split(",") if s]
        result = sweep(args.kind, sizes, seed=args.seed,
                       with_centre=args.with_centre)
        if args.format == "csv":
            _emit(sweep_csv(result), args.out)
        else:
            _emit(dumps_report(result), args.out)
        return 0

    if args.cmd == "verify-all":
        cfg = _load_config(args.config)
        report = verify_all(cfg, window=args.window)
        _emit(dumps_report(report), args.out)
        return report["exit"]

    ap.error(f"unhandled command {args.cmd}")  # pragma: no cover
    return 2


if __name__ == "__main__":
    raise SystemExit(main())
