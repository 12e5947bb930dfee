"""Point-set file formats.

The canonical format is a JSON array of [num_x, den_x, num_y, den_y]
quadruples, each component a base-10 integer string so coordinates with big
numerators/denominators survive the trip.  A lossy decimal CSV import with a
declared denominator bound is provided for external data.
"""

from __future__ import annotations

import csv
import json
from fractions import Fraction
from pathlib import Path
from typing import Iterable

from .errors import InvalidInput
from .geometry import Point, PointSet


def rational_str(q: Fraction) -> str:
    """Render a rational as 'num' or 'num/den' (canonical reduced form)."""
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def parse_rational(text: str) -> Fraction:
    return Fraction(text)


def points_to_json(P: PointSet) -> str:
    rows = [
        [
            str(p.x.numerator),
            str(p.x.denominator),
            str(p.y.numerator),
            str(p.y.denominator),
        ]
        for p in P
    ]
    return json.dumps(rows)


def points_from_json(text: str) -> PointSet:
    rows = json.loads(text)
    if not isinstance(rows, list):
        raise InvalidInput("point file must be a JSON array")
    pts = []
    for row in rows:
        if not isinstance(row, list) or len(row) != 4:
            raise InvalidInput(f"bad point row: {row!r}")
        nx, dx, ny, dy = (int(c) for c in row)
        pts.append(Point(Fraction(nx, dx), Fraction(ny, dy)))
    return PointSet(pts)


def write_points(P: PointSet, path: str | Path) -> None:
    Path(path).write_text(points_to_json(P), encoding="utf-8")


def read_points(path: str | Path) -> PointSet:
    return points_from_json(Path(path).read_text(encoding="utf-8"))


def read_points_csv(path: str | Path, denom_bound: int = 10**6) -> PointSet:
    """Import decimal CSV rows (x, y), rounding to denominators <= denom_bound."""
    if denom_bound < 1:
        raise InvalidInput("denominator bound must be >= 1")
    pts: list[Point] = []
    with open(path, newline="", encoding="utf-8") as fh:
        for row in csv.reader(fh):
            if not row or row[0].lstrip().startswith("#"):
                continue
            if len(row) < 2:
                raise InvalidInput(f"CSV row needs two fields: {row!r}")
            x = Fraction(row[0].strip()).limit_denominator(denom_bound)
            y = Fraction(row[1].strip()).limit_denominator(denom_bound)
            pts.append(Point(x, y))
    return PointSet(pts)


def common_denominator_scaling(P: PointSet) -> tuple[list[tuple[int, int]], int]:
    """Rescale all coordinates to integers over one common denominator.

    Returns (scaled integer coordinate pairs, denominator D) with
    x_scaled = x * D exactly.  Differences of scaled coordinates are then
    plain integers, which the census module exploits.
    """
    D = 1
    for p in P:
        D = _lcm(D, p.x.denominator)
        D = _lcm(D, p.y.denominator)
    scaled = [(int(p.x * D), int(p.y * D)) for p in P]
    return scaled, D


def _lcm(a: int, b: int) -> int:
    from math import gcd

    return a // gcd(a, b) * b


def scaled_coordinate_bound(scaled: Iterable[tuple[int, int]]) -> int:
    return max((max(abs(x), abs(y)) for x, y in scaled), default=0)
