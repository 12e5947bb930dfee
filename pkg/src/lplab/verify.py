"""Self-check suites runnable from the CLI (`lplab verify --suite ...`).

Each check re-derives an expected value through an independent route (brute
force, oracle recount, exact identity) and compares exactly.  These are
smaller, faster versions of the invariants the full pytest suite pins down;
a failure names the violated invariant.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .bisector import (
    bezout_pair_ceiling,
    bisector_eval,
    bisector_intersections,
    build_bisector,
    central_symmetry_check_box,
    Box,
    inflection_points,
    monotonicity_probe,
    point_on_bisector,
)
from .census import classify_pairs_linf, distance_census
from .circlegraph import build_multigraph, crossing_count, crossing_count_by_edges
from .errors import DegeneratePosition
from .generators import grid, random_rational, row_construction
from .geometry import LINF, L1, PNorm, Point, PointSet, l1_to_linf_transform, point
from .structure import corollary_pipeline, difference_energy, gap_fit


@dataclass
class CheckResult:
    suite: str
    name: str
    ok: bool
    detail: str = ""


def _census_checks() -> list[CheckResult]:
    out = []
    for k in (3, 6, 9):
        c = distance_census(grid(k), LINF)
        out.append(
            CheckResult(
                "census",
                f"grid({k}) spans k-1 distinct distances",
                c.distinct_count == k - 1,
                f"got {c.distinct_count}",
            )
        )
        out.append(
            CheckResult(
                "census",
                f"grid({k}) multiset sums to n(n-1)/2",
                c.total_pairs == k * k * (k * k - 1) // 2,
                f"got {c.total_pairs}",
            )
        )
    for k in (3, 5):
        c = distance_census(row_construction(k), LINF)
        out.append(
            CheckResult(
                "census",
                f"rows({k}) spans 2k-2 distinct distances",
                c.distinct_count == 2 * k - 2,
                f"got {c.distinct_count}",
            )
        )
    P = random_rational(40, seed=11, denom_bound=32)
    c1 = distance_census(P, L1)
    c2 = distance_census(l1_to_linf_transform(P), LINF)
    out.append(
        CheckResult(
            "census",
            "l1 key multiset equals transformed l_inf multiset",
            c1.histogram == c2.histogram,
        )
    )
    pc = classify_pairs_linf(P)
    out.append(
        CheckResult(
            "census",
            "horizontal + vertical - both covers all pairs",
            pc.total_pairs == P.n * (P.n - 1) // 2,
        )
    )
    return out


def _bisector_checks() -> list[CheckResult]:
    out = []
    u, v = point(0, 0), point(3, 1)
    for p in (3, 4, 5):
        B = build_bisector(u, v, p)
        out.append(
            CheckResult(
                "bisector",
                f"p={p}: non-line bisector meets five regions",
                B.kind == "curve" and len(B.pieces) == 5,
            )
        )
        out.append(
            CheckResult(
                "bisector",
                f"p={p}: midpoint is on the bisector",
                point_on_bisector(B, B.midpoint),
            )
        )
        rep = monotonicity_probe(B, samples=12)
        out.append(
            CheckResult("bisector", f"p={p}: monotone probe", rep.monotone)
        )
        infl = inflection_points(B, precision=Fraction(1, 2**24))
        out.append(
            CheckResult(
                "bisector",
                f"p={p}: three inflections incl. midpoint",
                infl.count == 3 and infl.midpoint_included,
            )
        )
        lo, hi = bisector_eval(B, Fraction(10), precision=Fraction(1, 2**16))
        flip = B.eval_form(Fraction(10), lo) * B.eval_form(Fraction(10), hi) <= 0
        out.append(CheckResult("bisector", f"p={p}: eval encloses the curve", flip))
        box = Box(Fraction(10), Fraction(10), lo, hi)
        out.append(
            CheckResult(
                "bisector",
                f"p={p}: central symmetry of a box witness",
                central_symmetry_check_box(B, box),
            )
        )
    B1 = build_bisector(point(0, 0), point(3, 1), 3)
    B2 = build_bisector(point(0, 1), point(3, 0), 3)
    got = bisector_intersections(B1, B2, precision=Fraction(1, 2**12))
    out.append(
        CheckResult(
            "bisector",
            "opposite-orientation pair crosses once within the ceiling",
            len(got) == 1 and len(got) <= bezout_pair_ceiling(3),
        )
    )
    return out


def _circle_checks() -> list[CheckResult]:
    out = []
    G = build_multigraph(grid(3), 2)
    out.append(
        CheckResult(
            "circles",
            "edge count equals sum of incidences over circles",
            G.e == sum(len(c.incident) for c in G.circles),
        )
    )
    rep = crossing_count(G)
    oracle = crossing_count_by_edges(G)
    out.append(
        CheckResult(
            "circles",
            "crossing census equals edge-pair oracle",
            rep.cr == oracle,
            f"{rep.cr} vs {oracle}",
        )
    )
    out.append(
        CheckResult(
            "circles",
            "crossings within the circle-pair ceiling",
            rep.cr <= rep.upper_bound,
        )
    )
    ok = 0
    seen_deg = 0
    for seed in (1, 5, 9):
        P = random_rational(14, seed=seed, box=(Fraction(0), Fraction(5), Fraction(0), Fraction(7)), denom_bound=1)
        try:
            g = build_multigraph(P, 2)
            r = crossing_count(g)
            o = crossing_count_by_edges(g)
            if r.cr == o and r.cr <= r.upper_bound:
                ok += 1
        except DegeneratePosition:
            seen_deg += 1
    out.append(
        CheckResult(
            "circles",
            "random drawings: census matches oracle or rejects degenerate",
            ok + seen_deg == 3,
            f"ok={ok} degenerate={seen_deg}",
        )
    )
    return out


def _structure_checks() -> list[CheckResult]:
    out = []
    A = [Fraction(v) for v in (1, 2, 3)]
    rep = difference_energy(A)
    brute = sum(
        1
        for q in itertools.product(A, repeat=4)
        if q[0] - q[1] == q[2] - q[3]
    )
    out.append(
        CheckResult(
            "structure",
            "difference energy equals quadruple brute force",
            rep.energy == brute == 19,
        )
    )
    gap = gap_fit([Fraction(v) for v in (1, 3, 5, 7)], d_max=1, size_budget=8)
    out.append(
        CheckResult(
            "structure",
            "arithmetic progression recovered as a 1-dim GAP",
            gap is not None and gap.dimension == 1 and gap.sizes == (4,),
        )
    )
    for k in (4, 6):
        r = corollary_pipeline(grid(k))
        ok = (
            len(r.cover.intercepts) == k
            and r.survivor_fraction == 1
            and len(r.progressions) == 1
            and len(r.partition.parts) == 1
            and r.partition.parts[0].gap.sizes == (k,)
        )
        out.append(CheckResult("structure", f"grid({k}) pipeline shape", ok))
        r2 = corollary_pipeline(row_construction(k))
        ok2 = (
            len(r2.cover.intercepts) == k
            and r2.survivor_fraction == 1
            and len(r2.progressions) == 1
        )
        out.append(CheckResult("structure", f"rows({k}) pipeline shape", ok2))
    return out


SUITES: dict[str, Callable[[], list[CheckResult]]] = {
    "census": _census_checks,
    "bisector": _bisector_checks,
    "circles": _circle_checks,
    "structure": _structure_checks,
}


def run_suite(name: str) -> list[CheckResult]:
    if name == "all":
        results = []
        for fn in SUITES.values():
            results.extend(fn())
        return results
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; pick from all, {', '.join(SUITES)}")
    return SUITES[name]()
