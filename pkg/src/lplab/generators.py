"""Constructors for extremal and test configurations.

``grid(k)`` is the k x k integer lattice anchored at 1; under l_inf it spans
exactly k - 1 distinct distances, the minimum possible for n = k^2 points.

``row_construction(k)`` places k shifted arithmetic progressions with step
1/(10n) on k horizontal lines.  No two points share an x-coordinate, yet the
set spans only 2k - 2 distinct l_inf distances: same-line pairs contribute
{1/(10n), ..., (k-1)/(10n)} and cross-line pairs contribute {1, ..., k-1}.
The per-line offsets b_a must have pairwise differences that are not integer
multiples of 1/(10n); the rational choice b_a = a/(100 n^2) suffices, since
b_i - b_j + k'/(10n) = 0 would force i - j = -10 n k', impossible for
0 < |i - j| < k.  Tests verify both guarantees by exact census rather than
assuming them.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .errors import CapacityExceeded, InvalidParameter
from .geometry import Point, PointSet


def grid(k: int) -> PointSet:
    """The lattice {1..k}^2, n = k^2 points."""
    if k < 2:
        raise InvalidParameter(f"grid needs k >= 2, got {k}")
    return PointSet(
        Point(Fraction(x), Fraction(y))
        for y in range(1, k + 1)
        for x in range(1, k + 1)
    )


def row_offset(a: int, n: int) -> Fraction:
    """Offset b_a = a / (100 n^2) for line y = a; 0 < b_a < 1/2."""
    return Fraction(a, 100 * n * n)


def row_construction(k: int) -> PointSet:
    """k points on each of k horizontal lines, all x-coordinates distinct."""
    if k < 2:
        raise InvalidParameter(f"row construction needs k >= 2, got {k}")
    n = k * k
    step = Fraction(1, 10 * n)
    pts = []
    for a in range(1, k + 1):
        b_a = row_offset(a, n)
        for ap in range(1, k + 1):
            pts.append(Point((b_a + ap) * step, Fraction(a)))
    return PointSet(pts)


def random_rational(
    n: int,
    seed: int,
    box: tuple[Fraction, Fraction, Fraction, Fraction] = (
        Fraction(0),
        Fraction(1),
        Fraction(0),
        Fraction(1),
    ),
    denom_bound: int = 1000,
) -> PointSet:
    """n distinct points, uniform over the lattice (1/denom_bound) Z^2 in box.

    Deterministic for a fixed seed.  Duplicates are rejection-resampled;
    if the representable lattice inside the box holds fewer than n points the
    call fails with CapacityExceeded.
    """
    if n < 2:
        raise InvalidParameter(f"need n >= 2, got {n}")
    if denom_bound < 1:
        raise InvalidParameter("denominator bound must be >= 1")
    x0, x1, y0, y1 = box
    if x1 <= x0 or y1 <= y0:
        raise InvalidParameter("box must have positive width and height")

    d = denom_bound
    # Integer lattice ranges for numerator/denominator = i/d inside the box.
    ix0 = _ceil_frac(x0 * d)
    ix1 = _floor_frac(x1 * d)
    iy0 = _ceil_frac(y0 * d)
    iy1 = _floor_frac(y1 * d)
    nx = ix1 - ix0 + 1
    ny = iy1 - iy0 + 1
    if nx < 1 or ny < 1 or nx * ny < n:
        raise CapacityExceeded(
            f"box lattice holds {max(nx, 0) * max(ny, 0)} points, need {n}"
        )

    rng = random.Random(seed)
    seen: set[tuple[int, int]] = set()
    pts: list[Point] = []
    while len(pts) < n:
        ix = rng.randint(ix0, ix1)
        iy = rng.randint(iy0, iy1)
        if (ix, iy) in seen:
            continue
        seen.add((ix, iy))
        pts.append(Point(Fraction(ix, d), Fraction(iy, d)))
    return PointSet(pts)


def _ceil_frac(q: Fraction) -> int:
    return -((-q.numerator) // q.denominator)


def _floor_frac(q: Fraction) -> int:
    return q.numerator // q.denominator
