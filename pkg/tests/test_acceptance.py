"""Acceptance criteria, one test per criterion, at the stated tolerances.

Each test prints a single PASS line with its measured quantities; a failed
assertion marks the criterion red.  Random inputs are seeded and fixed.
"""

import itertools
import random
import time
from fractions import Fraction as F

import numpy as np
import pytest

from lplab.bisector import (
    Box,
    bezout_pair_ceiling,
    bisector_eval,
    bisector_intersections,
    build_bisector,
    central_symmetry_check_box,
    central_symmetry_check,
    inflection_points,
    monotonicity_probe,
    point_on_bisector,
)
from lplab.census import distance_census
from lplab.circlegraph import (
    build_multigraph,
    crossing_count,
    crossing_count_by_edges,
)
from lplab.errors import DegeneratePosition, IdenticalCurves
from lplab.generators import grid, random_rational, row_construction
from lplab.geometry import LINF, L1, PNorm, l1_to_linf_transform, point, point_set
from lplab.structure import GAP, corollary_pipeline, difference_energy, gap_fit


def _report(num: int, detail: str) -> None:
    print(f"\nACCEPTANCE {num:02d}: PASS ({detail})")


def test_criterion_01_grid_law():
    t0 = time.time()
    for k in range(2, 61):
        c = distance_census(grid(k), LINF)
        assert c.distinct_count == k - 1, f"grid({k}): {c.distinct_count}"
    elapsed = time.time() - t0
    assert elapsed < 60, f"runtime {elapsed:.1f}s exceeds 60s"
    _report(1, f"k=2..60, D(P)=k-1 exactly, {elapsed:.1f}s")


def test_criterion_02_row_construction():
    t0 = time.time()
    for k in range(2, 100):
        P = row_construction(k)
        xs = [p.x for p in P]
        assert len(set(xs)) == len(xs), f"rows({k}): duplicate x"
        c = distance_census(P, LINF)
        assert c.distinct_count == 2 * k - 2, f"rows({k}): {c.distinct_count}"
    t_big = time.time()
    P = row_construction(100)
    xs = [p.x for p in P]
    assert len(set(xs)) == len(xs)
    c = distance_census(P, LINF)
    assert c.distinct_count == 198
    big_elapsed = time.time() - t_big
    assert big_elapsed < 120, f"k=100 runtime {big_elapsed:.1f}s exceeds 120s"
    _report(
        2,
        f"k=2..100, distinct x + D(P)=2k-2 exactly; k=100 in {big_elapsed:.1f}s",
    )


def test_criterion_03_l1_linf_equivalence():
    rng = random.Random(2024)
    t0 = time.time()
    for trial in range(50):
        n = rng.randint(2, 300)
        P = random_rational(
            n,
            seed=rng.randint(0, 10**6),
            box=(F(-20), F(20), F(-20), F(20)),
            denom_bound=rng.choice([1, 4, 12, 50]),
        )
        c1 = distance_census(P, L1)
        c2 = distance_census(l1_to_linf_transform(P), LINF)
        assert c1.histogram == c2.histogram, f"trial {trial}"
    _report(3, f"50 sets (n<=300), key multisets equal exactly, {time.time()-t0:.1f}s")


def _random_pair(rng, scale=10, denom=6):
    while True:
        u = point(
            F(rng.randint(-scale, scale), rng.randint(1, denom)),
            F(rng.randint(-scale, scale), rng.randint(1, denom)),
        )
        v = point(
            F(rng.randint(-scale, scale), rng.randint(1, denom)),
            F(rng.randint(-scale, scale), rng.randint(1, denom)),
        )
        if u != v:
            return u, v


def _slope_special(u, v):
    dx, dy = v.x - u.x, v.y - u.y
    return dx == 0 or dy == 0 or dy == dx or dy == -dx


def test_criterion_04_bisector_battery():
    t0 = time.time()
    stats = {"lines": 0, "curves": 0}
    for p in (3, 4, 5):
        rng = random.Random(1000 + p)
        for _ in range(200):
            u, v = _random_pair(rng)
            B = build_bisector(u, v, p)
            assert (B.kind == "line") == _slope_special(u, v)
            assert point_on_bisector(B, B.midpoint)
            if B.kind == "line":
                stats["lines"] += 1
                assert central_symmetry_check(B, B.midpoint)
                continue
            stats["curves"] += 1
            rep = monotonicity_probe(B, samples=50)
            assert rep.monotone
            assert len(B.pieces) == 5
            assert sum(1 for pc in B.pieces if not pc.bounded) == 2
            # 20 box witnesses spread along the curve
            span = 2 * B.diameter
            for i in range(20):
                x = B.midpoint.x - span + 2 * span * F(i, 19)
                lo, hi = bisector_eval(B, x, precision=B.diameter / 2**10)
                assert central_symmetry_check_box(B, Box(x, x, lo, hi))
            tol = B.diameter / 2**40
            infl = inflection_points(B, precision=tol)
            assert infl.count == 3 and infl.midpoint_included
            for bx in infl.points:
                assert max(bx.widths()) <= tol
    elapsed = time.time() - t0
    assert elapsed < 600, f"runtime {elapsed:.1f}s exceeds 10 min"
    _report(
        4,
        f"200 pairs x p in {{3,4,5}} ({stats['curves']} curves, "
        f"{stats['lines']} lines), enclosure tol 2^-40*diam, {elapsed:.0f}s",
    )


def test_criterion_05_bisector_intersections():
    rng = random.Random(55)
    ceiling = bezout_pair_ceiling(3)
    assert ceiling == 18
    max_seen = 0
    checked = 0
    t0 = time.time()
    while checked < 500:
        u1, v1 = _random_pair(rng, scale=8, denom=4)
        u2, v2 = _random_pair(rng, scale=8, denom=4)
        if {u1, v1} == {u2, v2}:
            continue
        B1 = build_bisector(u1, v1, 3)
        B2 = build_bisector(u2, v2, 3)
        try:
            got = bisector_intersections(B1, B2, precision=F(1, 2**16))
        except IdenticalCurves:
            continue
        assert len(got) <= ceiling
        max_seen = max(max_seen, len(got))
        checked += 1
    _report(
        5,
        f"500 pairs at p=3, every count <= {ceiling}, max observed "
        f"{max_seen}, {time.time()-t0:.0f}s",
    )


def test_criterion_06_circle_graph():
    rng = random.Random(66)
    processed = 0
    skipped = 0
    mult_checks = 0
    total_cr = 0
    t0 = time.time()
    seed = 0
    while processed < 30:
        seed += 1
        p = 2 if processed % 2 == 0 else 3
        n = rng.randint(12, 50 if p == 2 else 24)
        bx = rng.choice([6, 8, 9])
        by = rng.choice([7, 9, 11])
        P = random_rational(n, seed=seed, box=(F(0), F(bx), F(0), F(by)), denom_bound=1)
        G = build_multigraph(P, p)
        try:
            rep = crossing_count(G)
        except DegeneratePosition:
            skipped += 1  # the census rejects degenerate drawings by contract
            continue
        assert rep.e == sum(len(c.incident) for c in G.circles)
        ncirc = len(G.circles)
        assert rep.cr <= 2 * (ncirc * (ncirc - 1) // 2)
        oracle = crossing_count_by_edges(G)
        assert rep.cr == oracle, f"seed {seed}: {rep.cr} vs {oracle}"
        total_cr += rep.cr
        if mult_checks < 100:
            from lplab.bisector import build_bisector as bb

            for (i, j), mult in sorted(G.multiplicity.items()):
                if mult_checks >= 100:
                    break
                B = bb(G.points[i], G.points[j], p)
                witnesses = sum(1 for w in G.points if point_on_bisector(B, w))
                assert mult <= witnesses
                mult_checks += 1
        processed += 1
    elapsed = time.time() - t0
    assert elapsed < 300, f"runtime {elapsed:.1f}s exceeds 5 min"
    assert mult_checks == 100
    _report(
        6,
        f"30 drawings (skipped {skipped} degenerate), cr==oracle, "
        f"total cr {total_cr}, 100 multiplicity checks, {elapsed:.0f}s",
    )


def test_criterion_07_energy_oracle():
    rng = random.Random(77)
    t0 = time.time()
    for trial in range(100):
        size = rng.randint(1, 40)
        den = rng.choice([1, 3, 7, 20])
        A = set()
        while len(A) < size:
            A.add(F(rng.randint(-500, 500), den))
        A = sorted(A)
        rep = difference_energy(A)
        # Independent brute force: enumerate all quadruples via the
        # difference matrices (exact integers after clearing denominators).
        vals = np.array([int(a * den) for a in A], dtype=np.int64)
        diffs = vals[:, None] - vals[None, :]
        flat = diffs.ravel()
        brute = int((flat[:, None] == flat[None, :]).sum())
        assert rep.energy == brute, f"trial {trial}"
        assert rep.energy >= len(A) ** 2
    _report(7, f"100 sets (|A|<=40), energy equals quadruple count, {time.time()-t0:.1f}s")


def test_criterion_08_gap_soundness_and_recovery():
    rng = random.Random(88)
    t0 = time.time()
    for trial in range(100):
        d = 1 if trial % 2 == 0 else 2
        if d == 1:
            n1 = rng.randint(2, 64)
            planted = GAP(
                base=F(rng.randint(-100, 100), rng.randint(1, 12)),
                generators=(F(rng.randint(1, 80), rng.randint(1, 12)),),
                sizes=(n1,),
            )
        else:
            n1 = rng.randint(2, 8)
            n2 = rng.randint(2, 8)
            planted = GAP(
                base=F(rng.randint(-100, 100), rng.randint(1, 12)),
                generators=(
                    F(rng.randint(40, 120), rng.randint(1, 5)),
                    F(rng.randint(1, 12), rng.randint(1, 5)),
                ),
                sizes=(n1, n2),
            )
        elems = sorted(planted.elements())
        assert len(elems) <= 64
        budget = 2 * len(elems)
        got = gap_fit(list(elems), d_max=planted.dimension, size_budget=budget)
        assert got is not None, f"trial {trial}: no cover found"
        assert got.dimension <= planted.dimension
        assert got.size <= budget
        assert got.contains_all(elems)
    no_cover = 0
    for trial in range(50):
        A = set()
        while len(A) < 30:
            A.add(F(rng.randint(1, 10**9), rng.randint(1, 997)))
        got = gap_fit(sorted(A), d_max=3, size_budget=60)
        if got is None:
            no_cover += 1
        else:
            assert got.contains_all(sorted(A))  # sound even if it found one
    assert no_cover == 50
    _report(
        8,
        f"100 planted GAPs recovered within 2x budget; 50 generic sets "
        f"-> NoCover, {time.time()-t0:.1f}s",
    )


def test_criterion_09_structure_pipeline():
    t0 = time.time()
    for k in range(4, 31):
        for build in (grid, row_construction):
            rep = corollary_pipeline(build(k))
            name = build.__name__
            assert len(rep.cover.intercepts) == k, f"{name}({k}) cover"
            assert set(rep.cover.assignment) == set(range(k * k))
            assert rep.survivor_fraction == 1, f"{name}({k}) fraction"
            assert len(rep.progressions) == 1, f"{name}({k}) s"
            assert len(rep.partition.parts) == 1
            gap = rep.partition.parts[0].gap
            assert gap.dimension == 1 and gap.sizes == (k,)
    # grid(k) plus k far outliers
    for k in (5, 9, 14):
        pts = [(F(x), F(y)) for x in range(1, k + 1) for y in range(1, k + 1)]
        outliers = [(F(60 + 7 * i), F(300 + 11 * i)) for i in range(k)]
        P = point_set(pts + outliers)
        rep = corollary_pipeline(P)
        assert len(rep.survivors) >= k * k
        outlier_idx = {i for i, p in enumerate(P) if p.y >= 300}
        assert outlier_idx <= set(rep.discarded)
        assert set(rep.survivors).isdisjoint(outlier_idx)
    _report(9, f"grid/rows k=4..30 pipeline shape + outlier ledger, {time.time()-t0:.0f}s")


def test_criterion_10_asymptotics_not_reproduced():
    # The asymptotic theorems and hidden constants are covered by exact
    # inequalities and reported ratios only; verify the reports expose the
    # ratio instead of asserting any constant.
    G = build_multigraph(grid(3), 2)
    rep = crossing_count(G)
    assert rep.ratio == F(rep.e**3, rep.m * rep.n**2 * max(rep.cr, 1))
    assert isinstance(rep.lemma_applicable, bool)
    _report(
        10,
        "asymptotic claims covered by exact inequalities and reported "
        "ratios; no constants asserted",
    )
