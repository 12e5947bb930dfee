"""Exact distance statistics over point sets.

The pair loop runs on numpy int64 whenever the coordinates, rescaled to a
common denominator, leave enough headroom for the metric's arithmetic to stay
inside 63 bits; integer arithmetic in range is exact, so this is a fast path,
not an approximation.  Otherwise an arbitrary-precision Python-int loop is
used.  Both paths produce identical exact histograms.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import InvalidInput, Unsupported
from .geometry import DistanceKey, PNorm, PointSet
from .pointio import common_denominator_scaling

INT64_LIMIT = 2**62


@dataclass
class DistanceCensus:
    metric: PNorm
    distinct_count: int
    histogram: dict[Fraction, int]
    per_point: list[tuple[int, int]]
    t_max: int

    @property
    def total_pairs(self) -> int:
        return sum(self.histogram.values())

    def keys(self) -> list[DistanceKey]:
        return [DistanceKey(self.metric, k) for k in sorted(self.histogram)]


@dataclass
class PairClassification:
    horizontal_count: int
    vertical_count: int
    both_count: int
    horizontal_degree: list[int]
    vertical_degree: list[int]

    @property
    def total_pairs(self) -> int:
        return self.horizontal_count + self.vertical_count - self.both_count


def _int64_safe(maxc: int, m: PNorm) -> bool:
    span = 2 * maxc
    if m.is_inf:
        return span < INT64_LIMIT
    return 2 * span**m.p < INT64_LIMIT


def _scaled_key_denominator(D: int, m: PNorm) -> int:
    return D if m.is_inf else D**m.p


def distance_census(P: PointSet, m: PNorm, threads: int = 1) -> DistanceCensus:
    if P.n < 2:
        raise InvalidInput("census needs at least two points")
    scaled, D = common_denominator_scaling(P)
    maxc = max(max(abs(x), abs(y)) for x, y in scaled)
    if _int64_safe(maxc, m):
        hist_scaled, per_point = _census_numpy(scaled, m, threads)
    else:
        hist_scaled, per_point = _census_bigint(scaled, m)
    kden = _scaled_key_denominator(D, m)
    histogram = {Fraction(k, kden): c for k, c in hist_scaled.items()}
    t_max = max(c for _, c in per_point)
    return DistanceCensus(
        metric=m,
        distinct_count=len(histogram),
        histogram=histogram,
        per_point=per_point,
        t_max=t_max,
    )


def _row_keys(xs, ys, i, m: PNorm):
    dx = np.abs(xs - xs[i])
    dy = np.abs(ys - ys[i])
    if m.is_inf:
        keys = np.maximum(dx, dy)
    elif m.p == 1:
        keys = dx + dy
    else:
        keys = dx**m.p + dy**m.p
    return keys


def _census_numpy(scaled, m: PNorm, threads: int):
    n = len(scaled)
    xs = np.array([c[0] for c in scaled], dtype=np.int64)
    ys = np.array([c[1] for c in scaled], dtype=np.int64)

    def work(i: int):
        keys = _row_keys(xs, ys, i, m)
        distinct_u = len(np.unique(np.delete(keys, i)))
        upper = keys[i + 1 :]
        vals, counts = np.unique(upper, return_counts=True)
        return i, distinct_u, vals, counts

    hist: dict[int, int] = {}
    per_point: list[tuple[int, int]] = [None] * n  # type: ignore[list-item]
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = pool.map(work, range(n))
    else:
        results = map(work, range(n))
    for i, distinct_u, vals, counts in results:
        per_point[i] = (i, distinct_u)
        for v, c in zip(vals.tolist(), counts.tolist()):
            hist[v] = hist.get(v, 0) + c
    return hist, per_point


def _census_bigint(scaled, m: PNorm):
    n = len(scaled)
    hist: dict[int, int] = {}
    per_point: list[tuple[int, int]] = []
    p = m.p
    for i in range(n):
        xi, yi = scaled[i]
        seen_u: set[int] = set()
        for j in range(n):
            if j == i:
                continue
            dx = abs(scaled[j][0] - xi)
            dy = abs(scaled[j][1] - yi)
            key = max(dx, dy) if p is None else dx**p + dy**p
            seen_u.add(key)
            if j > i:
                hist[key] = hist.get(key, 0) + 1
        per_point.append((i, len(seen_u)))
    return hist, per_point


def classify_pairs_linf(P: PointSet) -> PairClassification:
    """Split pairs by which coordinate realises the l_inf distance.

    A pair is horizontal when |dx| >= |dy|, vertical when |dy| >= |dx|;
    ties count as both, so horizontal + vertical - both = n(n-1)/2.
    """
    if P.n < 2:
        raise InvalidInput("pair classification needs at least two points")
    scaled, _ = common_denominator_scaling(P)
    n = len(scaled)
    maxc = max(max(abs(x), abs(y)) for x, y in scaled)
    h_deg = [0] * n
    v_deg = [0] * n
    h_count = v_count = b_count = 0
    if 2 * maxc < INT64_LIMIT:
        xs = np.array([c[0] for c in scaled], dtype=np.int64)
        ys = np.array([c[1] for c in scaled], dtype=np.int64)
        for i in range(n):
            dx = np.abs(xs[i + 1 :] - xs[i])
            dy = np.abs(ys[i + 1 :] - ys[i])
            h = dx >= dy
            v = dy >= dx
            hs = int(h.sum())
            vs = int(v.sum())
            bs = int((h & v).sum())
            h_count += hs
            v_count += vs
            b_count += bs
            h_deg[i] += hs
            v_deg[i] += vs
            for off in np.nonzero(h)[0].tolist():
                h_deg[i + 1 + off] += 1
            for off in np.nonzero(v)[0].tolist():
                v_deg[i + 1 + off] += 1
    else:
        for i in range(n):
            xi, yi = scaled[i]
            for j in range(i + 1, n):
                dx = abs(scaled[j][0] - xi)
                dy = abs(scaled[j][1] - yi)
                if dx >= dy:
                    h_count += 1
                    h_deg[i] += 1
                    h_deg[j] += 1
                if dy >= dx:
                    v_count += 1
                    v_deg[i] += 1
                    v_deg[j] += 1
                if dx == dy:
                    b_count += 1
    return PairClassification(h_count, v_count, b_count, h_deg, v_deg)


def incidences(P: PointSet, curves) -> int:
    """Brute-force count of (point, curve) incidences with exact membership.

    A curve is anything with a ``contains_point(Point) -> bool`` method:
    exact implicit polynomials and bisectors both qualify.
    """
    total = 0
    for curve in curves:
        probe = getattr(curve, "contains_point", None)
        if probe is None:
            raise Unsupported(f"curve payload {type(curve).__name__} is not polynomial")
        for pt in P:
            if probe(pt):
                total += 1
    return total
