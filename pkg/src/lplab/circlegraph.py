"""Szekely's distance-circle multigraph and its exact crossing census.

Circles are l_p circles (finite integer p >= 2), stored by center and exact
radius key (the p-th power of the radius).  Vertices are the points; every
circle through >= 3 points contributes one edge per pair of cyclically
consecutive points, drawn as the connecting arc.  Because l_p circles are
strictly convex and star-shaped about their centers, the cyclic order is
decided by an exact quadrant + cross-product comparator; no angles are ever
computed numerically on the trust path.

Circle-circle intersections (at most two per pair) are computed exactly:

* p = 2: the difference of the two implicit forms is the radical axis, a
  rational line; substituting gives a quadratic whose roots live in a real
  quadratic extension Q(sqrt(D)), where all needed sign tests are exact.
* p >= 3: the plane is cut by the lines x = c1x, x = c2x, y = c1y, y = c2y
  into strips on which both implicit forms are honest polynomials; common
  roots are isolated through a Sylvester resultant plus Sturm sequences and
  verified by an exact sign flip along the first circle's monotone arc.

A point of the input set lying on two circles is an arc endpoint on both, so
it is never an interior crossing; every other intersection point lies in the
interior of exactly one arc per circle and contributes exactly one crossing.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .bisector import Box, _Budget, DEFAULT_BUDGET, build_bisector, point_on_bisector
from .errors import (
    ContractViolation,
    DegeneratePosition,
    InvalidInput,
    Unsupported,
)
from .geometry import PNorm, Point, PointSet, lp_distance_key
from .polynomials import (
    Poly1,
    Poly2,
    isolate_real_roots,
    poly1_from_roots_shift,
    poly_gcd,
    refine_root,
    resultant_wrt_y,
    square_free_part,
)


# ---------------------------------------------------------------------------
# Exact arithmetic in Q(sqrt(D))


def _sqrt_exact(q: Fraction) -> Optional[Fraction]:
    if q < 0:
        return None
    from math import isqrt

    rn, rd = isqrt(q.numerator), isqrt(q.denominator)
    if rn * rn == q.numerator and rd * rd == q.denominator:
        return Fraction(rn, rd)
    return None


@dataclass(frozen=True)
class QuadExt:
    """a + b*sqrt(d) with rational a, b and a fixed positive non-square d."""

    a: Fraction
    b: Fraction
    d: Fraction

    def sign(self) -> int:
        a, b = self.a, self.b
        if b == 0:
            return (a > 0) - (a < 0)
        if a == 0:
            return (b > 0) - (b < 0)
        sa, sb = (a > 0) - (a < 0), (b > 0) - (b < 0)
        if sa == sb:
            return sa
        t = a * a - b * b * self.d
        if t == 0:
            return 0
        return sa if t > 0 else sb

    def __add__(self, o):
        if isinstance(o, QuadExt):
            return QuadExt(self.a + o.a, self.b + o.b, self.d)
        return QuadExt(self.a + o, self.b, self.d)

    __radd__ = __add__

    def __sub__(self, o):
        if isinstance(o, QuadExt):
            return QuadExt(self.a - o.a, self.b - o.b, self.d)
        return QuadExt(self.a - o, self.b, self.d)

    def __rsub__(self, o):
        return QuadExt(o - self.a, -self.b, self.d)

    def __mul__(self, o):
        if isinstance(o, QuadExt):
            return QuadExt(
                self.a * o.a + self.b * o.b * self.d,
                self.a * o.b + self.b * o.a,
                self.d,
            )
        return QuadExt(self.a * o, self.b * o, self.d)

    __rmul__ = __mul__

    def enclosure(self, width: Fraction) -> tuple[Fraction, Fraction]:
        if self.b == 0:
            return self.a, self.a
        lo, hi = _nth_root_interval(self.d, 2, width / (2 * abs(self.b)))
        if self.b > 0:
            return self.a + self.b * lo, self.a + self.b * hi
        return self.a + self.b * hi, self.a + self.b * lo


def quadext_eq(u: QuadExt, v: QuadExt) -> bool:
    """Exact equality across possibly different radicands.

    Valid because the stored radicands are never perfect squares when the
    irrational part is nonzero, so a + b*sqrt(d) determines (a, b*sqrt(d)).
    """
    A = u.a - v.a
    if u.b == 0 and v.b == 0:
        return A == 0
    if u.b == 0 or v.b == 0:
        return False
    if A != 0:
        return False
    if (u.b > 0) != (v.b > 0):
        return False
    return u.b * u.b * u.d == v.b * v.b * v.d


# ---------------------------------------------------------------------------
# Exact p-th roots and root-sum signs


def _int_nth_root(n: int, p: int) -> int:
    if n < 0:
        raise ValueError("negative radicand")
    if n in (0, 1):
        return n
    hi = 1 << (-(-n.bit_length() // p) + 1)
    lo = 0
    while lo < hi - 1:
        mid = (lo + hi) // 2
        if mid**p <= n:
            lo = mid
        else:
            hi = mid
    return lo


def _exact_pth_root(q: Fraction, p: int) -> Optional[Fraction]:
    rn = _int_nth_root(q.numerator, p)
    rd = _int_nth_root(q.denominator, p)
    if rn**p == q.numerator and rd**p == q.denominator:
        return Fraction(rn, rd)
    return None


def _nth_root_interval(q: Fraction, p: int, width: Fraction) -> tuple[Fraction, Fraction]:
    """Rational enclosure of q^(1/p) of the requested width, q >= 0."""
    if q == 0:
        return Fraction(0), Fraction(0)
    if width <= 0:
        raise ContractViolation("root enclosure needs a positive width")
    exact = _exact_pth_root(q, p)
    if exact is not None:
        return exact, exact
    lo = Fraction(0)
    hi = q + 1
    while hi - lo > width:
        mid = (lo + hi) / 2
        if mid**p <= q:
            lo = mid
        else:
            hi = mid
    return lo, hi


def _root_sum_sign(terms: list[tuple[int, Fraction]], p: int, budget: _Budget) -> int:
    """Exact sign of sum(coef * q^(1/p)); zero only on certified equality.

    Exact zeros are certified through rational commensurability of the
    radicands; p-th roots of rationals with non-p-th-power ratios are
    linearly independent over Q, so refinement terminates on every other
    input.
    """
    terms = [(c, q) for c, q in terms if c != 0 and q != 0]
    if not terms:
        return 0
    base = terms[0][1]
    ratios = [_exact_pth_root(q / base, p) for _, q in terms]
    if all(r is not None for r in ratios):
        total = sum(c * r for (c, _), r in zip(terms, ratios))
        return (total > 0) - (total < 0)
    width = Fraction(1, 16)
    for _ in range(200):
        budget.tick()
        lo_sum = Fraction(0)
        hi_sum = Fraction(0)
        for c, q in terms:
            lo, hi = _nth_root_interval(q, p, width)
            if c > 0:
                lo_sum += c * lo
                hi_sum += c * hi
            else:
                lo_sum += c * hi
                hi_sum += c * lo
        if lo_sum > 0:
            return 1
        if hi_sum < 0:
            return -1
        width /= 16
    raise DegeneratePosition("p-th root comparison did not resolve")


# ---------------------------------------------------------------------------
# Graph construction


@dataclass
class Circle:
    center_index: int
    center: Point
    radius_key: Fraction
    incident: list[int]  # point indices, in exact CCW order after sorting


@dataclass(frozen=True)
class Edge:
    a: int  # arc start (point index), arc runs CCW to b
    b: int
    circle_id: int

    @property
    def pair(self) -> tuple[int, int]:
        return (self.a, self.b) if self.a < self.b else (self.b, self.a)


@dataclass
class CircleGraph:
    points: PointSet
    p: int
    circles: list[Circle]
    edges: list[Edge]
    multiplicity: dict[tuple[int, int], int]

    @property
    def n(self) -> int:
        return self.points.n

    @property
    def e(self) -> int:
        return len(self.edges)

    @property
    def max_multiplicity(self) -> int:
        return max(self.multiplicity.values(), default=0)


@dataclass
class CrossingReport:
    cr: int
    upper_bound: int
    e: int
    n: int
    m: int
    lemma_applicable: bool
    ratio: Optional[Fraction]
    per_pair: dict[tuple[int, int], int] = field(default_factory=dict)


def build_circles(P: PointSet, p: int) -> list[Circle]:
    """Distance circles with >= 3 incident points, per center and radius."""
    if not isinstance(p, int) or p < 2:
        raise Unsupported(f"circle graphs need finite integer p >= 2, got {p!r}")
    if P.n < 3:
        raise InvalidInput("need at least three points")
    m = PNorm(p)
    out: list[Circle] = []
    for ci, c in enumerate(P):
        by_key: dict[Fraction, list[int]] = {}
        for qi, q in enumerate(P):
            if qi == ci:
                continue
            by_key.setdefault(lp_distance_key(c, q, m).key, []).append(qi)
        for key in sorted(by_key):
            members = by_key[key]
            if len(members) >= 3:
                out.append(Circle(ci, c, key, members))
    return out


def _quadrant(dx, dy) -> int:
    if dx > 0 and dy >= 0:
        return 0
    if dx <= 0 and dy > 0:
        return 1
    if dx < 0 and dy <= 0:
        return 2
    return 3


def _sgn(v) -> int:
    if isinstance(v, QuadExt):
        return v.sign()
    return (v > 0) - (v < 0)


def _quadrant_ext(dx, dy) -> int:
    sx, sy = _sgn(dx), _sgn(dy)
    if sx > 0 and sy >= 0:
        return 0
    if sx <= 0 and sy > 0:
        return 1
    if sx < 0 and sy <= 0:
        return 2
    return 3


def _angle_cmp(w1, w2) -> int:
    """CCW order of two direction vectors; components rational or QuadExt."""
    q1, q2 = _quadrant_ext(*w1), _quadrant_ext(*w2)
    if q1 != q2:
        return -1 if q1 < q2 else 1
    cr = _sgn(w1[0] * w2[1] - w1[1] * w2[0])
    if cr > 0:
        return -1
    if cr < 0:
        return 1
    return 0


def _angle_between(va, u, vb) -> bool:
    """Is direction u strictly inside the CCW open sector from va to vb?"""
    if _angle_cmp(va, vb) < 0:
        return _angle_cmp(va, u) < 0 and _angle_cmp(u, vb) < 0
    return _angle_cmp(va, u) < 0 or _angle_cmp(u, vb) < 0


def build_multigraph(P: PointSet, p: int) -> CircleGraph:
    circles = build_circles(P, p)
    edges: list[Edge] = []
    multiplicity: dict[tuple[int, int], int] = {}
    for cid, gamma in enumerate(circles):
        c = gamma.center

        def cmp(i: int, j: int, c=c) -> int:
            wi = (P[i].x - c.x, P[i].y - c.y)
            wj = (P[j].x - c.x, P[j].y - c.y)
            got = _angle_cmp(wi, wj)
            if got == 0:
                raise ContractViolation("two incident points share a ray from center")
            return got

        gamma.incident.sort(key=functools.cmp_to_key(cmp))
        j = len(gamma.incident)
        for k in range(j):
            a = gamma.incident[k]
            b = gamma.incident[(k + 1) % j]
            edges.append(Edge(a, b, cid))
            pair = (a, b) if a < b else (b, a)
            multiplicity[pair] = multiplicity.get(pair, 0) + 1
    return CircleGraph(points=P, p=p, circles=circles, edges=edges, multiplicity=multiplicity)


def multiplicity_histogram(G: CircleGraph) -> dict[int, int]:
    """Histogram multiplicity -> number of pairs; also checks the bisector bound.

    Every edge between u and v comes from a witness point equidistant from
    both, i.e. a point of P on B(u, v); so multiplicity(u, v) never exceeds
    the exact bisector point count.
    """
    hist: dict[int, int] = {}
    for pair, mult in G.multiplicity.items():
        hist[mult] = hist.get(mult, 0) + 1
        u, v = G.points[pair[0]], G.points[pair[1]]
        B = build_bisector(u, v, G.p)
        witnesses = sum(1 for w in G.points if point_on_bisector(B, w))
        if mult > witnesses:
            raise ContractViolation(
                f"multiplicity {mult} exceeds bisector witness count {witnesses} "
                f"for pair {pair}"
            )
    return hist


# ---------------------------------------------------------------------------
# Circle-circle intersection points


@dataclass
class PairPoint:
    """One intersection point of a circle pair, with an exact refinement path.

    For p = 2 the coordinates are QuadExt values; for p >= 3 the point is an
    isolated root of a strip resultant, refined through Sturm bisection and
    the first circle's monotone arc.
    """

    x_lo: Fraction
    x_hi: Fraction
    y_lo: Fraction
    y_hi: Fraction
    exact: Optional[tuple] = None  # (QuadExt x, QuadExt y) when p == 2
    _refiner: Optional[object] = None

    def box(self) -> Box:
        return Box(self.x_lo, self.x_hi, self.y_lo, self.y_hi)

    def refine(self) -> None:
        if self.exact is not None:
            w = max(self.x_hi - self.x_lo, self.y_hi - self.y_lo)
            w = w / 4 if w > 0 else Fraction(1)
            ex, ey = self.exact
            self.x_lo, self.x_hi = ex.enclosure(w)
            self.y_lo, self.y_hi = ey.enclosure(w)
        else:
            self._refiner(self)  # type: ignore[misc]

    def contains_vertex(self, w: Point) -> bool:
        return self.x_lo <= w.x <= self.x_hi and self.y_lo <= w.y <= self.y_hi


def _euclid_pair_points(g1: Circle, g2: Circle) -> tuple[int, bool, list[PairPoint]]:
    """p = 2: exact intersection via the radical axis and Q(sqrt(D))."""
    c1, c2, k1, k2 = g1.center, g2.center, g1.radius_key, g2.radius_key
    A = 2 * (c2.x - c1.x)
    Bc = 2 * (c2.y - c1.y)
    C = (c1.x**2 + c1.y**2 - c2.x**2 - c2.y**2) + (k2 - k1)
    # Parametrise the radical axis (x = t, y = u t + w0) and substitute
    # into circle 1 to get qa t^2 + qb t + qc.
    if Bc != 0:
        u = -A / Bc
        w0 = -C / Bc
        qa = 1 + u * u
        qb = -2 * c1.x + 2 * u * (w0 - c1.y)
        qc = c1.x**2 + (w0 - c1.y) ** 2 - k1
    else:
        # Vertical radical axis x = -C / A; parametrise by y = t.
        x0 = -C / A
        qa = Fraction(1)
        qb = -2 * c1.y
        qc = (x0 - c1.x) ** 2 + c1.y**2 - k1
    D = qb * qb - 4 * qa * qc
    if D < 0:
        return 0, False, []
    if D == 0:
        return 1, True, []
    sq = _sqrt_exact(D)
    pts: list[PairPoint] = []
    for s in (1, -1):
        if sq is not None:
            t = (-qb + s * sq) / (2 * qa)
            tx = QuadExt(t, Fraction(0), Fraction(2))
        else:
            tx = QuadExt(-qb / (2 * qa), Fraction(s, 1) / (2 * qa), D)
        if Bc != 0:
            ex = tx
            ey = tx * u + w0
        else:
            ex = QuadExt(x0, Fraction(0), D if sq is None else Fraction(2))
            ey = tx
        pt = PairPoint(Fraction(0), Fraction(0), Fraction(0), Fraction(0), exact=(ex, ey))
        pt.refine()
        pts.append(pt)
    return 2, False, pts


def _circle_range(c: Point, key: Fraction, p: int, box: Box):
    """Exact range of |x-cx|^p + |y-cy|^p - key over a bounded box."""

    def axis_range(lo, hi, center):
        a, b = abs(lo - center), abs(hi - center)
        mn = Fraction(0) if lo <= center <= hi else min(a, b)
        return mn**p, max(a, b) ** p

    xlo, xhi = axis_range(box.x_lo, box.x_hi, c.x)
    ylo, yhi = axis_range(box.y_lo, box.y_hi, c.y)
    return xlo + ylo - key, xhi + yhi - key


def _exact_pairpoint(x: Fraction, y: Fraction) -> PairPoint:
    dummy = Fraction(2)
    return PairPoint(
        x, x, y, y, exact=(QuadExt(x, Fraction(0), dummy), QuadExt(y, Fraction(0), dummy))
    )


def _exact_cut_crossings(g1: Circle, g2: Circle, p: int) -> list[PairPoint]:
    """Rational intersection points lying exactly on one of the cut lines."""
    out: list[PairPoint] = []
    seen: set[tuple[Fraction, Fraction]] = set()

    def try_add(x: Fraction, y: Fraction) -> None:
        if (x, y) in seen:
            return
        on1 = abs(x - g1.center.x) ** p + abs(y - g1.center.y) ** p == g1.radius_key
        on2 = abs(x - g2.center.x) ** p + abs(y - g2.center.y) ** p == g2.radius_key
        if on1 and on2:
            seen.add((x, y))
            out.append(_exact_pairpoint(x, y))

    for ycut in {g1.center.y, g2.center.y}:
        A = g1.radius_key - abs(ycut - g1.center.y) ** p
        if A < 0:
            continue
        ra = _exact_pth_root(A, p)
        if ra is None:
            continue
        for s in ((1,) if ra == 0 else (1, -1)):
            try_add(g1.center.x + s * ra, ycut)
    for xcut in {g1.center.x, g2.center.x}:
        A = g1.radius_key - abs(xcut - g1.center.x) ** p
        if A < 0:
            continue
        ra = _exact_pth_root(A, p)
        if ra is None:
            continue
        for s in ((1,) if ra == 0 else (1, -1)):
            try_add(xcut, g1.center.y + s * ra)
    return out


def _drop_endpoint_roots(poly: Poly1, r_lo: Fraction, r_hi: Fraction) -> Poly1:
    """Remove factors vanishing at an isolating interval's own endpoints.

    Isolation windows are half-open, so a root exactly at an endpoint is a
    different root than the isolated one; dividing it out keeps the sign
    change usable for bisection refinement.
    """
    if r_lo == r_hi:
        return poly
    q = poly
    for r in (r_lo, r_hi):
        while q.degree >= 1 and q.eval(r) == 0:
            q = q.divexact(Poly1([-r, Fraction(1)]))
    return q


def _strip_cuts(a: Fraction, b: Fraction) -> list[Fraction]:
    return sorted({a, b})


def _strip_list(cuts: list[Fraction]):
    vals = [None] + list(cuts) + [None]
    return [(vals[i], vals[i + 1]) for i in range(len(vals) - 1)]


def _signed_circle_poly(c: Point, key: Fraction, p: int, sx: int, sy: int) -> Poly2:
    """|x-cx|^p + |y-cy|^p - key with the absolute values sign-resolved."""
    if p % 2 == 0:
        sx = sy = 1
    ax = poly1_from_roots_shift(c.x, p, sx)
    by = poly1_from_roots_shift(c.y, p, sy)
    out = Poly2.from_x(ax) + Poly2.from_y(by)
    return out + Poly2.const(-key)


def _sign_on_strip(cut: Fraction, strip) -> int:
    lo, hi = strip
    if hi is not None and hi <= cut:
        return -1
    if lo is not None and lo >= cut:
        return 1
    return 1  # strip straddles the cut only when cut is an endpoint anyway


def _arc_y_interval(
    g: Circle, p: int, x: Fraction, side: int, width: Fraction
) -> Optional[tuple[Fraction, Fraction]]:
    """Enclosure of the y with (x, y) on circle g on the given y-side."""
    A = g.radius_key - abs(x - g.center.x) ** p
    if A < 0:
        return None
    r_lo, r_hi = _nth_root_interval(A, p, width)
    if side > 0:
        return g.center.y + r_lo, g.center.y + r_hi
    return g.center.y - r_hi, g.center.y - r_lo


def _g2_sign_on_arc(
    g1: Circle, g2: Circle, p: int, x: Fraction, side: int, budget: _Budget
) -> int:
    """Sign of circle 2's implicit form at the point of circle 1 above/below x.

    Zero is only returned for an exact hit; otherwise refinement resolves.
    """
    width = Fraction(1, 8)
    for _ in range(120):
        budget.tick()
        iv = _arc_y_interval(g1, p, x, side, width)
        if iv is None:
            raise ContractViolation("arc sample outside circle x-range")
        gx = abs(x - g2.center.x) ** p
        ylo, yhi = iv
        a, b = abs(ylo - g2.center.y), abs(yhi - g2.center.y)
        dmin = Fraction(0) if ylo <= g2.center.y <= yhi else min(a, b)
        vlo = gx + dmin**p - g2.radius_key
        vhi = gx + max(a, b) ** p - g2.radius_key
        if vlo > 0:
            return 1
        if vhi < 0:
            return -1
        if iv[0] == iv[1] and vlo == vhi == 0:
            return 0
        width /= 16
    raise DegeneratePosition("arc sign did not resolve (suspected tangency)")


def _pair_points_general(
    g1: Circle, g2: Circle, p: int, budget: _Budget
) -> tuple[int, bool, list[PairPoint]]:
    """p >= 3: strip resultants + Sturm isolation + exact arc verification."""
    d_key = lp_distance_key(g1.center, g2.center, PNorm(p)).key
    s_outer = _root_sum_sign(
        [(1, d_key), (-1, g1.radius_key), (-1, g2.radius_key)], p, budget
    )
    if s_outer > 0:
        return 0, False, []
    big, small = (
        (g1.radius_key, g2.radius_key)
        if g1.radius_key >= g2.radius_key
        else (g2.radius_key, g1.radius_key)
    )
    s_inner = _root_sum_sign([(1, d_key), (1, small), (-1, big)], p, budget)
    if s_inner < 0:
        return 0, False, []
    if s_outer == 0 or s_inner == 0:
        return 1, True, []

    c1, c2 = g1.center, g2.center
    r1_hi = _nth_root_interval(g1.radius_key, p, Fraction(1, 4))[1]
    r2_hi = _nth_root_interval(g2.radius_key, p, Fraction(1, 4))[1]
    # Widened by one so crossings exactly at a rational circle extreme are
    # still inside an isolation window (then rejected or flagged loudly).
    x_win = (
        max(c1.x - r1_hi, c2.x - r2_hi) - 1,
        min(c1.x + r1_hi, c2.x + r2_hi) + 1,
    )
    # Crossings sitting exactly on a cut line have rational coordinates on
    # lattice-like inputs; they defeat interval isolation, so extract them
    # exactly up front and skip their resultant intervals below.
    exact_pts = _exact_cut_crossings(g1, g2, p)
    points: list[PairPoint] = list(exact_pts)
    y_win = (
        max(c1.y - r1_hi, c2.y - r2_hi) - 1,
        min(c1.y + r1_hi, c2.y + r2_hi) + 1,
    )
    for xs in _strip_list(_strip_cuts(c1.x, c2.x)):
        if len(points) >= 2:
            break
        x_lo = x_win[0] if xs[0] is None else max(x_win[0], xs[0])
        x_hi = x_win[1] if xs[1] is None else min(x_win[1], xs[1])
        if x_lo > x_hi:
            continue
        sx1, sx2 = _sign_on_strip(c1.x, xs), _sign_on_strip(c2.x, xs)
        for ys in _strip_list(_strip_cuts(c1.y, c2.y)):
            if len(points) >= 2:
                break
            y_lo = y_win[0] if ys[0] is None else max(y_win[0], ys[0])
            y_hi = y_win[1] if ys[1] is None else min(y_win[1], ys[1])
            if y_lo > y_hi:
                continue
            # Exact V-shape ranges over the region box: a circle whose
            # implicit form has constant sign there rules the region out.
            box = Box(x_lo, x_hi, y_lo, y_hi)
            lo1, hi1 = _circle_range(c1, g1.radius_key, p, box)
            if lo1 > 0 or hi1 < 0:
                continue
            lo2, hi2 = _circle_range(c2, g2.radius_key, p, box)
            if lo2 > 0 or hi2 < 0:
                continue
            sy1, sy2 = _sign_on_strip(c1.y, ys), _sign_on_strip(c2.y, ys)
            Q1 = _signed_circle_poly(c1, g1.radius_key, p, sx1, sy1)
            Q2 = _signed_circle_poly(c2, g2.radius_key, p, sx2, sy2)
            R = resultant_wrt_y(Q1, Q2).primitive()
            if R.is_zero():
                raise ContractViolation("distinct circles share a strip component")
            if R.degree < 1:
                continue
            Rsf = square_free_part(R).primitive()
            for r_lo, r_hi in isolate_real_roots(R, x_lo, x_hi):
                # Isolated roots of non-degenerate intervals are strictly
                # interior, so a known exact crossing is "this root" exactly
                # when it matches a degenerate interval or sits strictly
                # inside the interval.
                if any(
                    (
                        (r_lo == r_hi == ep.x_lo)
                        or (r_lo < ep.x_lo < r_hi and R.eval(ep.x_lo) == 0)
                    )
                    for ep in exact_pts
                ):
                    continue
                Rv = _drop_endpoint_roots(Rsf, r_lo, r_hi)
                got = _verify_strip_root(g1, g2, p, Rv, (r_lo, r_hi), ys, sy1, budget)
                if got:
                    points = _dedupe_pair_points(points + got)
    points = _dedupe_pair_points(points)
    if len(points) != 2:
        raise ContractViolation(
            f"verified {len(points)} intersection points, expected 2"
        )
    return 2, False, points


def _dedupe_pair_points(points: list[PairPoint]) -> list[PairPoint]:
    out: list[PairPoint] = []
    for pt in points:
        dup = False
        for q in out:
            for _ in range(80):
                if (
                    pt.x_hi < q.x_lo
                    or q.x_hi < pt.x_lo
                    or pt.y_hi < q.y_lo
                    or q.y_hi < pt.y_lo
                ):
                    break
                if (
                    pt.exact is not None
                    and q.exact is not None
                    and pt.exact == q.exact
                ):
                    dup = True
                    break
                pt.refine()
                q.refine()
            else:
                dup = True
            if dup:
                break
        if not dup:
            out.append(pt)
    return out


def _verify_strip_root(
    g1: Circle,
    g2: Circle,
    p: int,
    Rsf: Poly1,
    root: tuple[Fraction, Fraction],
    y_strip,
    side: int,
    budget: _Budget,
) -> list[PairPoint]:
    """Turn an isolated resultant root into verified crossings (0, 1, or 2)."""
    r_lo, r_hi = root
    if r_lo == r_hi:
        # Exact rational x: common y-roots come from a univariate gcd.
        x = r_lo
        A1 = poly1_from_roots_shift(g1.center.y, p, side if p % 2 else 1) + Poly1(
            [abs(x - g1.center.x) ** p - g1.radius_key]
        )
        sy2 = _sign_on_strip(g2.center.y, y_strip)
        A2 = poly1_from_roots_shift(g2.center.y, p, sy2 if p % 2 else 1) + Poly1(
            [abs(x - g2.center.x) ** p - g2.radius_key]
        )
        g = poly_gcd(A1, A2)
        if g.degree < 1:
            return []
        found = []
        for yl, yh in isolate_real_roots(g, y_strip[0], y_strip[1]):
            # Verify the candidate really sits on circle 1 (the gcd certifies
            # the signed polynomials; the absolute-value form must agree).
            yl, yh = refine_root(g, yl, yh, Fraction(1, 2**20))
            if _y_on_circle_exactish(g1, p, x, yl, yh):
                found.append(PairPoint(x, x, yl, yh, _refiner=_gcd_refiner(g, x)))
        return found

    # Shrink until strictly inside the strip's y-side and confirm by a sign
    # flip of circle 2 along circle 1's monotone arc on this side.
    for _ in range(200):
        budget.tick()
        # Ghost roots with no real point of circle 1 above them: |x - c1x|
        # is monotone on the strip, so two negative endpoints certify it.
        if (
            g1.radius_key - abs(r_lo - g1.center.x) ** p < 0
            and g1.radius_key - abs(r_hi - g1.center.x) ** p < 0
        ):
            return []
        ivl = _arc_y_interval(g1, p, r_lo, side, (r_hi - r_lo))
        ivr = _arc_y_interval(g1, p, r_hi, side, (r_hi - r_lo))
        if ivl is not None and ivr is not None:
            y_lo_all = min(ivl[0], ivr[0])
            y_hi_all = max(ivl[1], ivr[1])
            lo_ok = y_strip[0] is None or y_strip[0] < y_lo_all
            hi_ok = y_strip[1] is None or y_hi_all <= y_strip[1]
            if lo_ok and hi_ok:
                break
            if (y_strip[0] is not None and y_hi_all <= y_strip[0]) or (
                y_strip[1] is not None and y_strip[1] < y_lo_all
            ):
                return []  # arc segment entirely outside this strip row
        r_lo, r_hi = refine_root(Rsf, r_lo, r_hi, (r_hi - r_lo) / 4)
        if r_lo == r_hi:
            return _verify_strip_root(
                g1, g2, p, Rsf, (r_lo, r_hi), y_strip, side, budget
            )
    else:
        raise DegeneratePosition("strip-side classification did not resolve")

    # Sample strictly between each endpoint and the isolated root so that a
    # different crossing sitting exactly on an endpoint cannot zero the test.
    t_l = _inward_sample(Rsf, r_lo, r_hi)
    t_r = _inward_sample(Rsf, r_hi, r_lo)
    s_l = _g2_sign_on_arc(g1, g2, p, t_l, side, budget)
    s_r = _g2_sign_on_arc(g1, g2, p, t_r, side, budget)
    if s_l == 0 or s_r == 0 or s_l == s_r:
        return []
    ivl = _arc_y_interval(g1, p, r_lo, side, r_hi - r_lo)
    ivr = _arc_y_interval(g1, p, r_hi, side, r_hi - r_lo)
    return [
        PairPoint(
            r_lo,
            r_hi,
            min(ivl[0], ivr[0]),
            max(ivl[1], ivr[1]),
            _refiner=_arc_refiner(g1, p, Rsf, side),
        )
    ]


def _inward_sample(Rv: Poly1, end: Fraction, other: Fraction) -> Fraction:
    """A point strictly between `end` and the single root of Rv in the
    interval, certified by matching the nonzero sign of Rv at `end`."""
    s_end = Rv.eval(end)
    if s_end == 0:
        raise ContractViolation("interval endpoint is still a root after dropping")
    t = end + (other - end) / 16
    while (Rv.eval(t) > 0) != (s_end > 0) or Rv.eval(t) == 0:
        t = (end + t) / 2
    return t


def _y_on_circle_exactish(g1: Circle, p: int, x: Fraction, yl: Fraction, yh: Fraction) -> bool:
    """Does [yl, yh] straddle the circle-1 arc value at rational x?"""
    gx = abs(x - g1.center.x) ** p
    vlo_a, vhi_a = abs(yl - g1.center.y), abs(yh - g1.center.y)
    dmin = Fraction(0) if yl <= g1.center.y <= yh else min(vlo_a, vhi_a)
    vlo = gx + dmin**p - g1.radius_key
    vhi = gx + max(vlo_a, vhi_a) ** p - g1.radius_key
    return vlo <= 0 <= vhi


def _gcd_refiner(g: Poly1, x: Fraction):
    def refine(pt: PairPoint) -> None:
        width = (pt.y_hi - pt.y_lo) / 4
        pt.y_lo, pt.y_hi = refine_root(g, pt.y_lo, pt.y_hi, width)

    return refine


def _arc_refiner(g1: Circle, p: int, R: Poly1, side: int):
    def refine(pt: PairPoint) -> None:
        wx = pt.x_hi - pt.x_lo
        wy = pt.y_hi - pt.y_lo
        if wx == 0 and wy == 0:
            return
        if wx > 0:
            pt.x_lo, pt.x_hi = refine_root(R, pt.x_lo, pt.x_hi, wx / 4)
        rw = (wy if wy > 0 else wx) / 8
        ivl = _arc_y_interval(g1, p, pt.x_lo, side, rw)
        ivr = _arc_y_interval(g1, p, pt.x_hi, side, rw)
        if ivl is None or ivr is None:
            return
        pt.y_lo = min(ivl[0], ivr[0])
        pt.y_hi = max(ivl[1], ivr[1])

    return refine


def circle_pair_intersections(
    g1: Circle, g2: Circle, p: int, budget: _Budget
) -> tuple[int, bool, list[PairPoint]]:
    """(count, tangency, points) for two distinct circles."""
    if g1.center == g2.center:
        return 0, False, []
    if p == 2:
        return _euclid_pair_points(g1, g2)
    return _pair_points_general(g1, g2, p, budget)


def _tangency_at_vertex(g1: Circle, g2: Circle) -> bool:
    """A tangency whose contact point is a shared drawing vertex is harmless:
    the contact is an arc endpoint on both circles, never an interior crossing."""
    return len(set(g1.incident) & set(g2.incident)) == 1


# ---------------------------------------------------------------------------
# Crossing census


def _split_vertex_points(
    G: CircleGraph, g1: Circle, g2: Circle, points: list[PairPoint]
) -> list[PairPoint]:
    """Drop the intersection points that coincide with drawing vertices."""
    common = sorted(set(g1.incident) & set(g2.incident))
    if not common:
        return points
    if len(common) > len(points):
        raise ContractViolation("more shared vertices than circle intersections")
    remaining = list(points)
    for ci in common:
        w = G.points[ci]
        holders = [pt for pt in remaining if pt.contains_vertex(w)]
        while len(holders) > 1:
            for pt in holders:
                pt.refine()
            holders = [pt for pt in holders if pt.contains_vertex(w)]
        if not holders:
            raise ContractViolation("shared vertex not among intersection points")
        remaining.remove(holders[0])
    return remaining


def _locate_arc(G: CircleGraph, gamma: Circle, pt: PairPoint, budget: _Budget) -> int:
    """Arc index k with the intersection interior to incident[k] -> incident[k+1]."""
    c = gamma.center
    inc = gamma.incident
    j = len(inc)
    if pt.exact is not None:
        ex, ey = pt.exact
        u = (ex - c.x, ey - c.y)
        for k in range(j):
            va = (G.points[inc[k]].x - c.x, G.points[inc[k]].y - c.y)
            vb = (
                G.points[inc[(k + 1) % j]].x - c.x,
                G.points[inc[(k + 1) % j]].y - c.y,
            )
            if _angle_between(va, u, vb):
                return k
        raise ContractViolation("exact intersection direction matched no arc")
    while True:
        budget.tick()
        box = pt.box()
        wx, wy = box.widths()
        dist = min(
            max(abs(cx - c.x), abs(cy - c.y))
            for cx in (box.x_lo, box.x_hi)
            for cy in (box.y_lo, box.y_hi)
        )
        if not box.contains(c) and dist > 2 * (wx + wy):
            corners = [
                (cx - c.x, cy - c.y)
                for cx in (box.x_lo, box.x_hi)
                for cy in (box.y_lo, box.y_hi)
            ]
            for k in range(j):
                va = (G.points[inc[k]].x - c.x, G.points[inc[k]].y - c.y)
                vb = (
                    G.points[inc[(k + 1) % j]].x - c.x,
                    G.points[inc[(k + 1) % j]].y - c.y,
                )
                if all(_angle_between(va, u, vb) for u in corners):
                    return k
        pt.refine()


def _pair_data(G: CircleGraph, i: int, j: int, budget: _Budget, cache: dict):
    key = (min(i, j), max(i, j))
    if key not in cache:
        g1, g2 = G.circles[key[0]], G.circles[key[1]]
        cnt, tangent, points = circle_pair_intersections(g1, g2, G.p, budget)
        if tangent:
            if not _tangency_at_vertex(g1, g2):
                raise DegeneratePosition(
                    f"tangent circles away from a vertex: "
                    f"centers {g1.center_index}, {g2.center_index}"
                )
            cache[key] = (0, [])
        else:
            nonvertex = _split_vertex_points(G, g1, g2, points) if cnt else []
            cache[key] = (len(nonvertex), nonvertex)
    return cache[key]


def _check_no_concurrence(G: CircleGraph, data: dict, budget: _Budget) -> None:
    """Certify that no two circle pairs share a non-vertex intersection."""
    items = [
        (pair, pt) for pair, (_, pts) in data.items() for pt in pts
    ]
    for a in range(len(items)):
        for b in range(a + 1, len(items)):
            (p1, pt1), (p2, pt2) = items[a], items[b]
            if p1 == p2:
                continue
            if pt1.exact is not None and pt2.exact is not None:
                if quadext_eq(pt1.exact[0], pt2.exact[0]) and quadext_eq(
                    pt1.exact[1], pt2.exact[1]
                ):
                    raise DegeneratePosition(
                        f"circles {sorted(set(p1) | set(p2))} share an "
                        f"intersection point"
                    )
                continue
            tries = 0
            while pt1.box().touches(pt2.box()):
                tries += 1
                if tries > 80:
                    raise DegeneratePosition(
                        f"suspected concurrence of circles {sorted(set(p1) | set(p2))}"
                    )
                pt1.refine()
                pt2.refine()


def crossing_count(
    G: CircleGraph,
    precision: Optional[Fraction] = None,
    budget_limit: int = DEFAULT_BUDGET,
) -> CrossingReport:
    """Exact crossings of the circle-arc drawing, with general-position checks.

    Raises DegeneratePosition on tangent circle pairs away from vertices and
    on (suspected) three-circle concurrences; drawing vertices never sit in
    the interior of a foreign arc because incident points are always arc
    endpoints.
    """
    budget = _Budget(budget_limit)
    n, m, e = G.n, G.max_multiplicity, G.e
    ncirc = len(G.circles)
    upper = 2 * (ncirc * (ncirc - 1) // 2)
    cache: dict = {}
    per_pair: dict[tuple[int, int], int] = {}
    total = 0
    for i in range(ncirc):
        for j in range(i + 1, ncirc):
            cnt, _pts = _pair_data(G, i, j, budget, cache)
            if cnt:
                per_pair[(i, j)] = cnt
                total += cnt
    _check_no_concurrence(G, cache, budget)
    ratio = None
    if m > 0 and n > 0:
        ratio = Fraction(e**3, m * n * n * max(total, 1))
    return CrossingReport(
        cr=total,
        upper_bound=upper,
        e=e,
        n=n,
        m=m,
        lemma_applicable=e > 5 * m * n,
        ratio=ratio,
        per_pair=per_pair,
    )


def crossing_count_by_edges(
    G: CircleGraph,
    precision: Optional[Fraction] = None,
    budget_limit: int = DEFAULT_BUDGET,
) -> int:
    """Independent crossing census: brute force over edge pairs.

    For each foreign circle and each arc, the number of interior crossings is
    decided by the inside/outside parity of the arc endpoints (an exact key
    comparison); the ambiguous even case (0 or 2) and the endpoint-on-circle
    case are settled by locating the intersection points on the arc's circle.
    """
    budget = _Budget(budget_limit)
    m = PNorm(G.p)
    total = 0
    cache: dict = {}
    arc_cache: dict[tuple[int, int, int], list[int]] = {}

    def arcs_hit(i: int, j: int, on: int) -> list[int]:
        key = (min(i, j), max(i, j), on)
        if key not in arc_cache:
            _cnt, pts = _pair_data(G, i, j, budget, cache)
            arc_cache[key] = [
                _locate_arc(G, G.circles[on], pt, budget) for pt in pts
            ]
        return arc_cache[key]

    edges_by_circle: dict[int, list[Edge]] = {}
    for edge in G.edges:
        edges_by_circle.setdefault(edge.circle_id, []).append(edge)

    circle_ids = sorted(edges_by_circle)
    for a_pos in range(len(circle_ids)):
        for b_pos in range(a_pos + 1, len(circle_ids)):
            ci, cj = circle_ids[a_pos], circle_ids[b_pos]
            cnt, _pts = _pair_data(G, ci, cj, budget, cache)
            if cnt == 0:
                continue
            g1 = G.circles[ci]
            for arc_pos, edge in enumerate(edges_by_circle[cj]):
                keys = (
                    lp_distance_key(g1.center, G.points[edge.a], m).key,
                    lp_distance_key(g1.center, G.points[edge.b], m).key,
                )
                if g1.radius_key in keys:
                    hits = arcs_hit(ci, cj, cj)
                    total += sum(1 for h in hits if h == arc_pos)
                    continue
                in_a = keys[0] < g1.radius_key
                in_b = keys[1] < g1.radius_key
                if in_a != in_b:
                    total += 1
                elif cnt == 2:
                    hits = arcs_hit(ci, cj, cj)
                    total += sum(1 for h in hits if h == arc_pos)
    return total
