"""Exact planar geometry core: scalars, points, metrics, distance keys.

Every quantity is an arbitrary-precision rational (``fractions.Fraction``),
so all comparisons and equalities are decided exactly.  Distances are never
materialised as real p-th roots: a finite-p distance is stored as its p-th
power, an l_inf distance as the max of the coordinate gaps.  Both encodings
preserve equality and order of the underlying distances, which is all the
rest of the toolkit ever needs.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import InvalidInput, InvalidParameter

# Public alias: the one scalar type used across the toolkit.
ExactScalar = Fraction

Rationalish = Fraction | int | str

LESS, EQUAL, GREATER = -1, 0, 1


def scalar(value: Rationalish) -> Fraction:
    """Coerce ints / 'num/den' strings / Fractions to an exact scalar."""
    if isinstance(value, Fraction):
        return value
    return Fraction(value)


@dataclass(frozen=True)
class Point:
    x: Fraction
    y: Fraction

    def __iter__(self):
        return iter((self.x, self.y))

    def __sub__(self, other: "Point") -> "Point":
        return Point(self.x - other.x, self.y - other.y)

    def __add__(self, other: "Point") -> "Point":
        return Point(self.x + other.x, self.y + other.y)


def point(x: Rationalish, y: Rationalish) -> Point:
    return Point(scalar(x), scalar(y))


class PointSet:
    """An ordered, duplicate-free set of at least one exact point."""

    __slots__ = ("points",)

    def __init__(self, points: Iterable[Point]):
        pts = tuple(points)
        if not pts:
            raise InvalidInput("a point set needs at least one point")
        if len(set(pts)) != len(pts):
            raise InvalidInput("duplicate points in point set")
        self.points = pts

    @property
    def n(self) -> int:
        return len(self.points)

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __getitem__(self, i: int) -> Point:
        return self.points[i]

    def __eq__(self, other) -> bool:
        return isinstance(other, PointSet) and self.points == other.points

    def __repr__(self) -> str:
        return f"PointSet(n={self.n})"

    def translate(self, dx: Fraction, dy: Fraction) -> "PointSet":
        return PointSet(Point(p.x + dx, p.y + dy) for p in self.points)

    def swap_axes(self) -> "PointSet":
        return PointSet(Point(p.y, p.x) for p in self.points)


def point_set(coords: Sequence[tuple[Rationalish, Rationalish]]) -> PointSet:
    return PointSet(point(x, y) for x, y in coords)


@dataclass(frozen=True)
class PNorm:
    """Metric selector: finite integer p >= 1, or None for l_inf."""

    p: int | None

    def __post_init__(self):
        if self.p is not None and (not isinstance(self.p, int) or self.p < 1):
            raise InvalidParameter(f"finite p must be an integer >= 1, got {self.p!r}")

    @property
    def is_inf(self) -> bool:
        return self.p is None

    @staticmethod
    def finite(p: int) -> "PNorm":
        return PNorm(p)

    def __str__(self) -> str:
        return "inf" if self.p is None else f"p:{self.p}"

    @staticmethod
    def parse(text: str) -> "PNorm":
        text = text.strip().lower()
        if text in ("inf", "linf", "l_inf", "infinity"):
            return LINF
        if text.startswith("p:"):
            text = text[2:]
        return PNorm(int(text))


LINF = PNorm(None)
L1 = PNorm(1)
L2 = PNorm(2)


@dataclass(frozen=True)
class DistanceKey:
    """Exact order-preserving surrogate for an l_p distance.

    For finite p the key is |dx|^p + |dy|^p (the p-th power of the distance);
    for l_inf it is max(|dx|, |dy|) (the distance itself).  For a fixed
    metric, key equality/order coincides with distance equality/order because
    t -> t^(1/p) is strictly increasing on the nonnegatives.
    """

    metric: PNorm
    key: Fraction

    def __post_init__(self):
        if self.key < 0:
            raise InvalidParameter("distance keys are nonnegative")


def lp_distance_key(u: Point, v: Point, m: PNorm) -> DistanceKey:
    dx = abs(u.x - v.x)
    dy = abs(u.y - v.y)
    if m.is_inf:
        return DistanceKey(m, max(dx, dy))
    return DistanceKey(m, dx ** m.p + dy ** m.p)


def compare_distances(
    a: tuple[Point, Point], b: tuple[Point, Point], m: PNorm
) -> int:
    """Order of the true distances of the pairs: -1, 0, or 1."""
    ka = lp_distance_key(a[0], a[1], m).key
    kb = lp_distance_key(b[0], b[1], m).key
    if ka < kb:
        return LESS
    if ka > kb:
        return GREATER
    return EQUAL


def l1_to_linf_transform(P: PointSet) -> PointSet:
    """Map (x, y) -> (x - y, x + y).

    This is the rotation by pi/4 composed with scaling by sqrt(2), which is
    rational and hence exact.  Pairwise l_1 distances of the input equal the
    pairwise l_inf distances of the image:
    max(|dx - dy|, |dx + dy|) = |dx| + |dy|.
    """
    return PointSet(Point(p.x - p.y, p.x + p.y) for p in P)
