"""Command-line surface: batch experiments over point-set files.

Exit codes: 0 success, 1 domain error (machine-readable JSON on stderr),
2 usage error.  All persisted numbers are exact rational strings; floats
appear only inside SVG output.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from fractions import Fraction
from pathlib import Path

from . import __version__
from .bisector import (
    Bisector,
    bisector_eval,
    bisector_intersections,
    build_bisector,
    inflection_points,
)
from .census import classify_pairs_linf, distance_census
from .circlegraph import build_multigraph, crossing_count, multiplicity_histogram
from .errors import LplabError
from .generators import grid, random_rational, row_construction
from .geometry import PNorm, Point, PointSet, point
from .pointio import rational_str, read_points, read_points_csv, write_points
from .structure import corollary_pipeline, difference_energy, gap_fit
from .svg import Scene, render_svg
from .verify import run_suite


def _rat(text: str) -> Fraction:
    return Fraction(text)


def _point_arg(text: str) -> Point:
    parts = text.split(",")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"expected 'x,y', got {text!r}")
    return point(Fraction(parts[0]), Fraction(parts[1]))


def _metric_arg(text: str) -> PNorm:
    try:
        return PNorm.parse(text)
    except (LplabError, ValueError) as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _report(payload: dict, config: dict, started: float) -> dict:
    return {
        "version": __version__,
        "config": config,
        "elapsed_seconds": round(time.time() - started, 6),
        "payload": payload,
    }


def _emit(report: dict, out_path: str | None) -> None:
    text = json.dumps(report, indent=2, sort_keys=True)
    if out_path:
        Path(out_path).write_text(text + "\n", encoding="utf-8")
    else:
        print(text)


def _load_points(args) -> PointSet:
    if args.csv:
        return read_points_csv(args.infile, denom_bound=args.csv_denom_bound)
    return read_points(args.infile)


# ---------------------------------------------------------------------------
# Subcommands


def _cmd_generate(args) -> int:
    started = time.time()
    if args.kind == "grid":
        P = grid(args.k)
    elif args.kind == "rows":
        P = row_construction(args.k)
    else:
        box = (
            _rat(args.box[0]),
            _rat(args.box[1]),
            _rat(args.box[2]),
            _rat(args.box[3]),
        )
        P = random_rational(args.n, seed=args.seed, box=box, denom_bound=args.denom_bound)
    if args.translate:
        P = P.translate(_rat(args.translate[0]), _rat(args.translate[1]))
    write_points(P, args.out)
    print(f"wrote {P.n} points to {args.out}")
    return 0


def _cmd_census(args) -> int:
    started = time.time()
    P = _load_points(args)
    m = args.metric
    census = distance_census(P, m, threads=args.threads)
    payload = {
        "metric": str(m),
        "n": P.n,
        "distinct_count": census.distinct_count,
        "t_max": census.t_max,
        "histogram": [
            {"key": rational_str(k), "count": census.histogram[k]}
            for k in sorted(census.histogram)
        ],
        "per_point": [[i, c] for i, c in census.per_point],
    }
    if m.is_inf and args.classify:
        pc = classify_pairs_linf(P)
        payload["pair_classes"] = {
            "horizontal": pc.horizontal_count,
            "vertical": pc.vertical_count,
            "both": pc.both_count,
            "horizontal_degree": pc.horizontal_degree,
            "vertical_degree": pc.vertical_degree,
        }
    _emit(_report(payload, {"command": "census", "metric": str(m)}, started), args.out)
    return 0


def _box_json(box) -> dict:
    return {
        "x": [rational_str(box.x_lo), rational_str(box.x_hi)],
        "y": [rational_str(box.y_lo), rational_str(box.y_hi)],
    }


def _bisector_json(B: Bisector) -> dict:
    out = {
        "kind": B.kind,
        "p": B.p,
        "u": [rational_str(B.u.x), rational_str(B.u.y)],
        "v": [rational_str(B.v.x), rational_str(B.v.y)],
        "midpoint": [rational_str(B.midpoint.x), rational_str(B.midpoint.y)],
    }
    if B.kind == "line":
        out["line"] = [rational_str(c) for c in B.line]
    else:
        out["regions_intersected"] = [list(r) for r in B.regions_intersected]
        out["pieces"] = [
            {
                "region_index": list(pc.region_index),
                "signs": list(pc.signs),
                "bounded": pc.bounded,
                "poly": [
                    [i, j, rational_str(c)] for i, j, c in pc.poly.sorted_terms()
                ],
            }
            for pc in B.pieces
        ]
    return out


def _cmd_bisector(args) -> int:
    started = time.time()
    B = build_bisector(args.u, args.v, args.p)
    payload = _bisector_json(B)
    if args.eval_x is not None:
        lo, hi = bisector_eval(B, _rat(args.eval_x))
        payload["eval"] = {"x": args.eval_x, "y": [rational_str(lo), rational_str(hi)]}
    if args.inflections:
        rep = inflection_points(B)
        payload["inflections"] = {
            "count": rep.count,
            "midpoint_included": rep.midpoint_included,
            "enclosures": [_box_json(b) for b in rep.points],
        }
    if args.intersect_with:
        u2, v2 = args.intersect_with
        B2 = build_bisector(u2, v2, args.p)
        got = bisector_intersections(B, B2)
        payload["intersections"] = {
            "count": len(got),
            "enclosures": [
                {"box": _box_json(e.box), "confirmed": e.confirmed} for e in got
            ],
        }
    if args.svg:
        render_svg(Scene(points=None, bisectors=[B]), args.svg)
    _emit(_report(payload, {"command": "bisector", "p": args.p}, started), args.out)
    return 0


def _cmd_circle_graph(args) -> int:
    started = time.time()
    P = _load_points(args)
    G = build_multigraph(P, args.p)
    rep = crossing_count(G)
    hist = multiplicity_histogram(G)
    payload = {
        "p": args.p,
        "n": rep.n,
        "circles": len(G.circles),
        "e": rep.e,
        "m": rep.m,
        "cr": rep.cr,
        "upper_bound": rep.upper_bound,
        "lemma_applicable": rep.lemma_applicable,
        "ratio": rational_str(rep.ratio) if rep.ratio is not None else None,
        "multiplicity_histogram": {str(k): v for k, v in sorted(hist.items())},
    }
    if args.svg:
        circles = [
            (c.center.x, c.center.y, float(c.radius_key) ** (1.0 / args.p))
            for c in G.circles
        ]
        render_svg(Scene(points=P, circles=circles), args.svg)
    _emit(_report(payload, {"command": "circle-graph", "p": args.p}, started), args.out)
    return 0


def _gap_json(gap) -> dict:
    return {
        "base": rational_str(gap.base),
        "generators": [rational_str(g) for g in gap.generators],
        "sizes": list(gap.sizes),
        "dimension": gap.dimension,
        "size": gap.size,
    }


def _cmd_structure(args) -> int:
    started = time.time()
    P = _load_points(args)
    rep = corollary_pipeline(
        P,
        rho=_rat(args.rho),
        theta=_rat(args.theta),
        gamma=_rat(args.gamma),
        beta=_rat(args.beta),
    )
    payload = {
        "thresholds": {k: rational_str(v) for k, v in rep.thresholds.items()},
        "orientation": rep.cover.orientation,
        "cover_lines": [rational_str(c) for c in rep.cover.intercepts],
        "rich_lines": [rational_str(c) for c in rep.rich_cover.intercepts],
        "progressions": [_gap_json(g) for g in rep.progressions],
        "chosen_progression": rep.chosen_progression,
        "line_assignments": {
            str(li): {
                "progression": la.progression_index,
                "translation": rational_str(la.translation),
                "overlap": la.overlap,
                "saved": la.saved,
            }
            for li, la in rep.line_assignments.items()
        },
        "survivors": len(rep.survivors),
        "survivor_fraction": rational_str(rep.survivor_fraction),
        "discarded": rep.discarded,
        "partition": [
            {
                "lines": part.line_indices,
                "via": part.via,
                "gap": _gap_json(part.gap),
            }
            for part in rep.partition.parts
        ],
        "leftover_lines": rep.partition.leftover_lines,
    }
    if args.svg:
        cover = rep.rich_cover
        scene = Scene(points=P)
        if cover.orientation == "horizontal":
            scene.h_lines = list(cover.intercepts)
        else:
            scene.v_lines = list(cover.intercepts)
        render_svg(scene, args.svg)
    _emit(_report(payload, {"command": "structure"}, started), args.out)
    return 0


def _cmd_gap_fit(args) -> int:
    started = time.time()
    values = [Fraction(v) for v in args.values.split(",")]
    gap = gap_fit(values, d_max=args.d_max, size_budget=args.size_budget)
    payload = {"cover": _gap_json(gap) if gap is not None else None}
    _emit(_report(payload, {"command": "gap-fit"}, started), args.out)
    return 0


def _cmd_energy(args) -> int:
    started = time.time()
    values = [Fraction(v) for v in args.values.split(",")]
    rep = difference_energy(values)
    payload = {
        "size": rep.size,
        "energy": rep.energy,
        "delta": rational_str(rep.delta),
        "multiplicities": [
            [rational_str(d), rep.multiplicities[d]]
            for d in sorted(rep.multiplicities)
        ],
    }
    _emit(_report(payload, {"command": "energy"}, started), args.out)
    return 0


def _cmd_plot(args) -> int:
    P = _load_points(args)
    render_svg(Scene(points=P), args.svg)
    print(f"wrote {args.svg}")
    return 0


def _cmd_verify(args) -> int:
    results = run_suite(args.suite)
    width = max(len(r.name) for r in results)
    failed = 0
    for r in results:
        mark = "PASS" if r.ok else "FAIL"
        if not r.ok:
            failed += 1
        detail = f"  ({r.detail})" if r.detail and not r.ok else ""
        print(f"[{mark}] {r.suite:10s} {r.name:<{width}}{detail}")
    print(f"{len(results) - failed}/{len(results)} checks passed")
    return 1 if failed else 0


# ---------------------------------------------------------------------------
# Parser


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="lplab",
        description="Exact-arithmetic distinct-distance experiments under lp metrics",
    )
    ap.add_argument(
        "--threads",
        type=int,
        default=int(os.environ.get("LPLAB_THREADS", "1")),
        help="worker threads for the census pair loop (default 1)",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", help="write a point-set file")
    g.add_argument("--kind", choices=("grid", "rows", "random"), required=True)
    g.add_argument("--k", type=int, default=3, help="side length for grid/rows")
    g.add_argument("--n", type=int, default=16, help="point count for random")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--denom-bound", type=int, default=1000)
    g.add_argument("--box", nargs=4, default=("0", "1", "0", "1"),
                   metavar=("X0", "X1", "Y0", "Y1"))
    g.add_argument("--translate", nargs=2, metavar=("DX", "DY"))
    g.add_argument("--out", required=True)
    g.set_defaults(func=_cmd_generate)

    c = sub.add_parser("census", help="exact distance census")
    c.add_argument("--metric", required=True, type=_metric_arg,
                   help="'inf' or an integer p like 'p:2'")
    c.add_argument("--in", dest="infile", required=True)
    c.add_argument("--csv", action="store_true", help="input is decimal CSV")
    c.add_argument("--csv-denom-bound", type=int, default=10**6)
    c.add_argument("--classify", action="store_true",
                   help="include l_inf horizontal/vertical pair classes")
    c.add_argument("--out")
    c.set_defaults(func=_cmd_census)

    b = sub.add_parser("bisector", help="build and analyse one bisector")
    b.add_argument("--u", type=_point_arg, required=True)
    b.add_argument("--v", type=_point_arg, required=True)
    b.add_argument("--p", type=int, required=True)
    b.add_argument("--eval", dest="eval_x", metavar="X")
    b.add_argument("--inflections", action="store_true")
    b.add_argument("--intersect-with", nargs=2, type=_point_arg,
                   metavar=("U2", "V2"))
    b.add_argument("--svg")
    b.add_argument("--out")
    b.set_defaults(func=_cmd_bisector)

    cg = sub.add_parser("circle-graph", help="Szekely circle multigraph census")
    cg.add_argument("--p", type=int, required=True)
    cg.add_argument("--in", dest="infile", required=True)
    cg.add_argument("--csv", action="store_true")
    cg.add_argument("--csv-denom-bound", type=int, default=10**6)
    cg.add_argument("--svg")
    cg.add_argument("--out")
    cg.set_defaults(func=_cmd_circle_graph)

    s = sub.add_parser("structure", help="l_inf structure pipeline")
    s.add_argument("--in", dest="infile", required=True)
    s.add_argument("--csv", action="store_true")
    s.add_argument("--csv-denom-bound", type=int, default=10**6)
    s.add_argument("--rho", default="1/4")
    s.add_argument("--theta", default="1/4")
    s.add_argument("--gamma", default="1/4")
    s.add_argument("--beta", default="1/4")
    s.add_argument("--svg")
    s.add_argument("--out")
    s.set_defaults(func=_cmd_structure)

    gf = sub.add_parser("gap-fit", help="fit rationals into a small GAP")
    gf.add_argument("--values", required=True, help="comma-separated rationals")
    gf.add_argument("--d-max", type=int, default=3)
    gf.add_argument("--size-budget", type=int, default=None)
    gf.add_argument("--out")
    gf.set_defaults(func=_cmd_gap_fit)

    e = sub.add_parser("energy", help="difference energy of a rational list")
    e.add_argument("--values", required=True, help="comma-separated rationals")
    e.add_argument("--out")
    e.set_defaults(func=_cmd_energy)

    pl = sub.add_parser("plot", help="scatter plot of a point-set file")
    pl.add_argument("--in", dest="infile", required=True)
    pl.add_argument("--csv", action="store_true")
    pl.add_argument("--csv-denom-bound", type=int, default=10**6)
    pl.add_argument("--svg", required=True)
    pl.set_defaults(func=_cmd_plot)

    v = sub.add_parser("verify", help="run self-check suites")
    v.add_argument("--suite", default="all",
                   choices=("all", "census", "bisector", "circles", "structure"))
    v.set_defaults(func=_cmd_verify)
    return ap


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except LplabError as exc:
        print(
            json.dumps({"error": type(exc).__name__, "message": str(exc)}),
            file=sys.stderr,
        )
        return 1
    except (OSError, ValueError) as exc:
        print(
            json.dumps({"error": type(exc).__name__, "message": str(exc)}),
            file=sys.stderr,
        )
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
