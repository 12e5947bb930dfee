"""l_p bisectors: construction, exact membership, and certified analysis.

The bisector of u and v is the zero set of

    F(x, y) = |x - u_x|^p + |y - u_y|^p - |x - v_x|^p - |y - v_y|^p.

F splits as hx(x) + hy(y) where hx(t) = |t - u_x|^p - |t - v_x|^p and
hy(t) = |t - u_y|^p - |t - v_y|^p are strictly monotone over all of R
(whenever the respective coordinates differ).  Two consequences carry the
whole module:

* for each x there is exactly one y on a non-line bisector, and the curve is
  a strictly monotone graph over either axis;
* the exact range of F over any axis-aligned box is attained at box corners,
  so "does this box meet the bisector" is decidable with four evaluations.

Root isolation is exact-sign subdivision (bisection in 1D, quadtree in 2D)
with rational midpoints; no floating-point enters any decision.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .errors import (
    ContractViolation,
    DegenerateInput,
    DegeneratePosition,
    IdenticalCurves,
    NumericalBudgetExceeded,
    PreconditionViolated,
    Unsupported,
)
from .geometry import Point, lp_distance_key, PNorm
from .polynomials import (
    Poly1,
    Poly2,
    cauchy_root_bound,
    isolate_real_roots,
    iv_mul,
    iv_pow,
    poly1_from_roots_shift,
    refine_root,
    resultant_wrt_y,
    square_free_part,
)

DEFAULT_BUDGET = 10**6
NEG_INF = -math.inf
POS_INF = math.inf


class _Budget:
    __slots__ = ("left",)

    def __init__(self, limit: int = DEFAULT_BUDGET):
        self.left = limit

    def tick(self, n: int = 1) -> None:
        self.left -= n
        if self.left < 0:
            raise NumericalBudgetExceeded("subdivision budget exhausted")


# ---------------------------------------------------------------------------
# The monotone split F = hx + hy


@dataclass(frozen=True)
class _MonoTerm:
    """h(t) = |t - a|^p - |t - b|^p; strictly monotone, increasing iff a < b."""

    a: Fraction
    b: Fraction
    p: int

    def eval(self, t: Fraction) -> Fraction:
        return abs(t - self.a) ** self.p - abs(t - self.b) ** self.p

    def range_on(
        self, lo: Optional[Fraction], hi: Optional[Fraction]
    ) -> tuple[Fraction | float, Fraction | float]:
        if self.a == self.b:
            return Fraction(0), Fraction(0)
        increasing = self.a < self.b
        if increasing:
            vlo = NEG_INF if lo is None else self.eval(lo)
            vhi = POS_INF if hi is None else self.eval(hi)
        else:
            vlo = NEG_INF if hi is None else self.eval(hi)
            vhi = POS_INF if lo is None else self.eval(lo)
        return vlo, vhi


def _sum_lo(a, b):
    if a == NEG_INF or b == NEG_INF:
        return NEG_INF
    return a + b


def _sum_hi(a, b):
    if a == POS_INF or b == POS_INF:
        return POS_INF
    return a + b


@dataclass(frozen=True)
class Box:
    """Axis-aligned rational box; None bounds mean +-infinity."""

    x_lo: Optional[Fraction]
    x_hi: Optional[Fraction]
    y_lo: Optional[Fraction]
    y_hi: Optional[Fraction]

    def is_bounded(self) -> bool:
        return None not in (self.x_lo, self.x_hi, self.y_lo, self.y_hi)

    def widths(self) -> tuple[Fraction, Fraction]:
        return self.x_hi - self.x_lo, self.y_hi - self.y_lo

    def contains(self, pt: Point) -> bool:
        return (
            (self.x_lo is None or self.x_lo <= pt.x)
            and (self.x_hi is None or pt.x <= self.x_hi)
            and (self.y_lo is None or self.y_lo <= pt.y)
            and (self.y_hi is None or pt.y <= self.y_hi)
        )

    def touches(self, other: "Box") -> bool:
        def overlap(alo, ahi, blo, bhi):
            lo = max(x for x in (alo, blo) if x is not None) if (alo is not None or blo is not None) else None
            hi = min(x for x in (ahi, bhi) if x is not None) if (ahi is not None or bhi is not None) else None
            return lo is None or hi is None or lo <= hi

        return overlap(self.x_lo, self.x_hi, other.x_lo, other.x_hi) and overlap(
            self.y_lo, self.y_hi, other.y_lo, other.y_hi
        )

    def hull(self, other: "Box") -> "Box":
        def lo(a, b):
            return None if a is None or b is None else min(a, b)

        def hi(a, b):
            return None if a is None or b is None else max(a, b)

        return Box(
            lo(self.x_lo, other.x_lo),
            hi(self.x_hi, other.x_hi),
            lo(self.y_lo, other.y_lo),
            hi(self.y_hi, other.y_hi),
        )


def _intersect_iv(alo, ahi, blo, bhi):
    lo = blo if alo is None else (alo if blo is None else max(alo, blo))
    hi = bhi if ahi is None else (ahi if bhi is None else min(ahi, bhi))
    if lo is not None and hi is not None and lo > hi:
        return None
    return lo, hi


def intersect_boxes(a: Box, b: Box) -> Optional[Box]:
    xi = _intersect_iv(a.x_lo, a.x_hi, b.x_lo, b.x_hi)
    if xi is None:
        return None
    yi = _intersect_iv(a.y_lo, a.y_hi, b.y_lo, b.y_hi)
    if yi is None:
        return None
    return Box(xi[0], xi[1], yi[0], yi[1])


# ---------------------------------------------------------------------------
# Bisector construction


@dataclass(frozen=True)
class BisectorPiece:
    region: Box
    region_index: tuple[int, int]
    signs: tuple[int, int, int, int]
    poly: Poly2
    bounded: bool


@dataclass
class Bisector:
    u: Point
    v: Point
    p: int
    kind: str  # "line" | "curve"
    midpoint: Point
    line: Optional[tuple[Fraction, Fraction, Fraction]] = None  # a x + b y + c = 0
    pieces: list[BisectorPiece] = field(default_factory=list)

    def __post_init__(self):
        self._hx = _MonoTerm(self.u.x, self.v.x, self.p)
        self._hy = _MonoTerm(self.u.y, self.v.y, self.p)
        self._dx = self.v.x - self.u.x
        self._dy = self.v.y - self.u.y

    @property
    def regions_intersected(self) -> list[tuple[int, int]]:
        return [pc.region_index for pc in self.pieces]

    @property
    def diameter(self) -> Fraction:
        return max(abs(self._dx), abs(self._dy))

    def default_precision(self) -> Fraction:
        return self.diameter / 2**40

    def eval_form(self, x: Fraction, y: Fraction) -> Fraction:
        """Exact value of F(x, y) from the defining absolute-value form."""
        return self._hx.eval(x) + self._hy.eval(y)

    def contains_point(self, w: Point) -> bool:
        return self.eval_form(w.x, w.y) == 0

    def form_range(self, box: Box):
        xlo, xhi = self._hx.range_on(box.x_lo, box.x_hi)
        ylo, yhi = self._hy.range_on(box.y_lo, box.y_hi)
        return _sum_lo(xlo, ylo), _sum_hi(xhi, yhi)

    def box_meets_curve(self, box: Box) -> bool:
        lo, hi = self.form_range(box)
        return lo <= 0 <= hi

    @property
    def decreasing(self) -> Optional[bool]:
        """Orientation of the graph y = f(x); None for line bisectors."""
        if self.kind != "curve":
            return None
        return (self._dx > 0) == (self._dy > 0)

    def defining_pair(self) -> frozenset:
        return frozenset((self.u, self.v))


def _line_bisector(u: Point, v: Point, p: int, a, b, c) -> Bisector:
    mid = Point((u.x + v.x) / 2, (u.y + v.y) / 2)
    return Bisector(u=u, v=v, p=p, kind="line", midpoint=mid, line=(a, b, c))


def _strip_intervals(lo: Fraction, hi: Fraction):
    return [(None, lo), (lo, hi), (hi, None)]


def _strip_signs(lo_owner_is_first: bool):
    """Signs of (t - first) and (t - second) on strips 0,1,2 of the partition.

    first/second are the two coordinates; lo_owner_is_first says whether the
    smaller partition value belongs to the first coordinate.
    """
    if lo_owner_is_first:
        return [(-1, -1), (1, -1), (1, 1)]
    return [(-1, -1), (-1, 1), (1, 1)]


def build_bisector(u: Point, v: Point, p: int) -> Bisector:
    if u == v:
        raise DegenerateInput("bisector of coincident points")
    if not isinstance(p, int) or p < 2:
        raise Unsupported(f"bisectors need integer p >= 2, got {p!r}")
    dx = v.x - u.x
    dy = v.y - u.y
    mx = (u.x + v.x) / 2
    my = (u.y + v.y) / 2
    if p == 2:
        # Euclidean: always a line, 2*dx*x + 2*dy*y + (|u|^2 - |v|^2) = 0.
        c = u.x**2 + u.y**2 - v.x**2 - v.y**2
        return _line_bisector(u, v, p, 2 * dx, 2 * dy, c)
    if dx == 0:
        return _line_bisector(u, v, p, Fraction(0), Fraction(1), -my)
    if dy == 0:
        return _line_bisector(u, v, p, Fraction(1), Fraction(0), -mx)
    if dy == dx:
        return _line_bisector(u, v, p, Fraction(1), Fraction(1), -(mx + my))
    if dy == -dx:
        return _line_bisector(u, v, p, Fraction(1), Fraction(-1), -(mx - my))

    bis = Bisector(u=u, v=v, p=p, kind="curve", midpoint=Point(mx, my))
    bis.pieces = _curve_pieces(bis)
    return bis


def _piece_poly(bis: Bisector, signs: tuple[int, int, int, int]) -> Poly2:
    u, v, p = bis.u, bis.v, bis.p
    if p % 2 == 0:
        s1 = s2 = s3 = s4 = 1
    else:
        s1, s2, s3, s4 = signs
    ax = poly1_from_roots_shift(u.x, p, s1) - poly1_from_roots_shift(v.x, p, s2)
    by = poly1_from_roots_shift(u.y, p, s3) - poly1_from_roots_shift(v.y, p, s4)
    return Poly2.from_x(ax) + Poly2.from_y(by)


def _piece_univariates(bis: Bisector, signs) -> tuple[Poly1, Poly1]:
    """The split Q = ax(x) + by(y) of a piece polynomial."""
    u, v, p = bis.u, bis.v, bis.p
    if p % 2 == 0:
        s1, s2, s3, s4 = 1, 1, 1, 1
    else:
        s1, s2, s3, s4 = signs
    ax = poly1_from_roots_shift(u.x, p, s1) - poly1_from_roots_shift(v.x, p, s2)
    by = poly1_from_roots_shift(u.y, p, s3) - poly1_from_roots_shift(v.y, p, s4)
    return ax, by


def _y_strip_of_curve_at(bis: Bisector, x: Fraction) -> int:
    """Index (0, 1, 2) of the y-strip containing f(x), decided by exact signs."""
    ylo = min(bis.u.y, bis.v.y)
    yhi = max(bis.u.y, bis.v.y)
    s_lo = bis.eval_form(x, ylo)
    s_hi = bis.eval_form(x, yhi)
    inc = bis._dy > 0  # F(x, .) increasing in y
    below_lo = (s_lo >= 0) if inc else (s_lo <= 0)  # f(x) <= ylo
    above_hi = (s_hi < 0) if inc else (s_hi > 0)  # f(x) > yhi
    if below_lo:
        return 0
    if above_hi:
        return 2
    return 1


def _curve_pieces(bis: Bisector) -> list[BisectorPiece]:
    u, v = bis.u, bis.v
    xlo, xhi = min(u.x, v.x), max(u.x, v.x)
    ylo, yhi = min(u.y, v.y), max(u.y, v.y)
    x_strips = _strip_intervals(xlo, xhi)
    y_strips = _strip_intervals(ylo, yhi)
    sx = _strip_signs(u.x == xlo)
    sy = _strip_signs(u.y == ylo)

    j0 = _y_strip_of_curve_at(bis, xlo)
    j1 = _y_strip_of_curve_at(bis, xhi)
    if bis.decreasing:
        walk = [(0, j) for j in range(2, j0 - 1, -1)]
        walk += [(1, j) for j in range(j0, j1 - 1, -1)]
        walk += [(2, j) for j in range(j1, -1, -1)]
    else:
        walk = [(0, j) for j in range(0, j0 + 1)]
        walk += [(1, j) for j in range(j0, j1 + 1)]
        walk += [(2, j) for j in range(j1, 3)]
    if len(walk) != 5:
        raise ContractViolation(f"staircase visited {len(walk)} regions, expected 5")

    pieces = []
    for k, (i, j) in enumerate(walk):
        signs = (sx[i][0], sx[i][1], sy[j][0], sy[j][1])
        region = Box(x_strips[i][0], x_strips[i][1], y_strips[j][0], y_strips[j][1])
        pieces.append(
            BisectorPiece(
                region=region,
                region_index=(i, j),
                signs=signs,
                poly=_piece_poly(bis, signs),
                bounded=0 < k < len(walk) - 1,
            )
        )
    return pieces


def point_on_bisector(B: Bisector, w: Point) -> bool:
    return B.contains_point(w)


def containing_curves_odd(u: Point, v: Point, p: int) -> list[Poly2]:
    """Zariski-closure polynomials of the realized bisector pieces, deduplicated."""
    if p % 2 == 0:
        raise Unsupported("even p has a single global polynomial; no per-sign closures")
    if p < 3:
        raise Unsupported("need odd p >= 3")
    B = build_bisector(u, v, p)
    if B.kind == "line":
        a, b, c = B.line
        return [Poly2({(1, 0): a, (0, 1): b, (0, 0): c})]
    out: list[Poly2] = []
    seen = set()
    for pc in B.pieces:
        # One polynomial per realized sign pattern; the two corner patterns
        # give proportional polynomials (the same closure curve) but are kept
        # as distinct realized patterns.
        key = tuple(pc.poly.sorted_terms())
        if key not in seen:
            seen.add(key)
            out.append(pc.poly)
    return out


# ---------------------------------------------------------------------------
# Evaluation along the curve


def _bisect_curve_y(
    B: Bisector,
    hx: Fraction,
    lo: Fraction,
    hi: Fraction,
    precision: Fraction,
    budget: _Budget,
) -> tuple[Fraction, Fraction]:
    """Shrink a valid y-bracket of the curve point above x to `precision`.

    The bisection runs in scaled integers: with all quantities multiplied by
    a common denominator (times a power of two for the midpoints), every
    sign decision is an integer comparison, avoiding Fraction gcd overhead.
    """
    width = hi - lo
    if width <= precision:
        return lo, hi
    steps = 1
    while width > precision * 2**steps:
        steps += 1
    budget.tick(steps)
    p = B.p
    inc = B._dy > 0
    from math import lcm

    den = lcm(lo.denominator, hi.denominator, B.u.y.denominator, B.v.y.denominator)
    Q = den << steps
    L = int(lo * Q)
    H = int(hi * Q)
    A = int(B.u.y * Q)
    C = int(B.v.y * Q)
    hxQ_frac = hx * Q**p
    d = hxQ_frac.denominator
    if d != 1:
        # x's denominator is not covered by the y-side scale; absorb it.
        Q *= d
        L *= d
        H *= d
        A *= d
        C *= d
        hxQ_frac = hxQ_frac * d**p
    hxQ = int(hxQ_frac)
    for _ in range(steps):
        if (L + H) % 2:
            L, H, A, C, Q = 2 * L, 2 * H, 2 * A, 2 * C, 2 * Q
            hxQ <<= p
        mid = (L + H) // 2
        vm = hxQ + abs(mid - A) ** p - abs(mid - C) ** p
        if vm == 0:
            m = Fraction(mid, Q)
            return m, m
        if (vm < 0) == inc:
            L = mid
        else:
            H = mid
    return Fraction(L, Q), Fraction(H, Q)


def _eval_curve_y(
    B: Bisector, x: Fraction, precision: Fraction, budget: _Budget
) -> tuple[Fraction, Fraction]:
    """Enclosure of the unique y with (x, y) on the curve, by exact bisection."""
    inc = B._dy > 0
    hx = B._hx.eval(x)

    def g(y: Fraction) -> Fraction:
        return hx + B._hy.eval(y)

    step = max(B.diameter, Fraction(1))
    lo = B.midpoint.y - step
    hi = B.midpoint.y + step
    while True:
        budget.tick()
        vlo, vhi = g(lo), g(hi)
        if vlo == 0:
            return lo, lo
        if vhi == 0:
            return hi, hi
        lo_neg = vlo < 0 if inc else vlo > 0
        hi_pos = vhi > 0 if inc else vhi < 0
        if lo_neg and hi_pos:
            break
        if not lo_neg:
            lo -= step
        if not hi_pos:
            hi += step
        step *= 2
    return _bisect_curve_y(B, hx, lo, hi, precision, budget)


def _eval_curve_x(
    B: Bisector, y: Fraction, precision: Fraction, budget: _Budget
) -> tuple[Fraction, Fraction]:
    swapped = Bisector(
        u=Point(B.u.y, B.u.x),
        v=Point(B.v.y, B.v.x),
        p=B.p,
        kind="curve",
        midpoint=Point(B.midpoint.y, B.midpoint.x),
    )
    return _eval_curve_y(swapped, y, precision, budget)


def bisector_eval(
    B: Bisector,
    x: Fraction,
    precision: Optional[Fraction] = None,
    budget_limit: int = DEFAULT_BUDGET,
) -> tuple[Fraction, Fraction]:
    """Enclosure [y_lo, y_hi] of width <= precision for the point above x."""
    if B.kind == "line":
        a, b, c = B.line
        if b == 0:
            raise PreconditionViolated("vertical line bisector is not a graph y(x)")
        y = (-c - a * x) / b
        return y, y
    prec = precision if precision is not None else B.default_precision()
    return _eval_curve_y(B, x, prec, _Budget(budget_limit))


@dataclass
class MonotoneReport:
    monotone: bool
    orientation: str  # "increasing" | "decreasing" | "constant"
    samples: int


def monotonicity_probe(
    B: Bisector, samples: int = 50, budget_limit: int = DEFAULT_BUDGET
) -> MonotoneReport:
    if samples < 2:
        raise PreconditionViolated("need at least two samples")
    if B.kind == "line":
        a, b, c = B.line
        if b == 0:
            orientation = "vertical"
        elif a == 0:
            orientation = "constant"
        else:
            orientation = "decreasing" if (a / b) > 0 else "increasing"
        return MonotoneReport(True, orientation, samples)

    budget = _Budget(budget_limit)
    span = 2 * B.diameter
    xs = [
        B.midpoint.x - span + (2 * span * i) / (samples - 1) for i in range(samples)
    ]
    prec = span / samples / 4
    encl = [_eval_curve_y(B, x, prec, budget) for x in xs]
    # Refine until consecutive enclosures are strictly separated.
    for i in range(len(xs) - 1):
        while not (encl[i][1] < encl[i + 1][0] or encl[i + 1][1] < encl[i][0]):
            budget.tick()
            prec /= 2
            encl[i] = _eval_curve_y(B, xs[i], prec, budget)
            encl[i + 1] = _eval_curve_y(B, xs[i + 1], prec, budget)
    increasing = [encl[i][1] < encl[i + 1][0] for i in range(len(xs) - 1)]
    if all(increasing):
        return MonotoneReport(True, "increasing", samples)
    if not any(increasing):
        return MonotoneReport(True, "decreasing", samples)
    raise ContractViolation("bisector samples are not monotone")


def central_symmetry_check(B: Bisector, w: Point) -> bool:
    """For w on the bisector, test the reflection 2m - w (always on it)."""
    if not B.contains_point(w):
        raise PreconditionViolated("witness point is not on the bisector")
    reflected = Point(2 * B.midpoint.x - w.x, 2 * B.midpoint.y - w.y)
    return B.contains_point(reflected)


def central_symmetry_check_box(B: Bisector, box: Box) -> bool:
    """Box-enclosure variant: the reflected box must also meet the bisector."""
    if not B.box_meets_curve(box):
        raise PreconditionViolated("witness box does not meet the bisector")
    mx, my = 2 * B.midpoint.x, 2 * B.midpoint.y
    reflected = Box(mx - box.x_hi, mx - box.x_lo, my - box.y_hi, my - box.y_lo)
    return B.box_meets_curve(reflected)


# ---------------------------------------------------------------------------
# Inflection points


@dataclass
class InflectionReport:
    points: list[Box]
    count: int
    midpoint_included: bool


def _derivative_terms(signs: tuple[int, int], centers: tuple[Fraction, Fraction], p: int, order: int):
    """Term list for the order-th derivative of s1 (t-c1)^p - s2 (t-c2)^p."""
    coeff = 1
    for i in range(order):
        coeff *= p - i
    s1, s2 = signs
    c1, c2 = centers
    return [
        (Fraction(s1 * coeff), c1, p - order),
        (Fraction(-s2 * coeff), c2, p - order),
    ]


def _curvature_factors(bis: "Bisector", signs):
    """Per-axis derivative term lists for N = ax''*(by')^2 + by''*(ax')^2."""
    p = bis.p
    if p % 2 == 0:
        sx = (1, 1)
        sy = (1, 1)
    else:
        sx = (signs[0], signs[1])
        sy = (signs[2], signs[3])
    cx = (bis.u.x, bis.v.x)
    cy = (bis.u.y, bis.v.y)
    from math import lcm

    denom = lcm(
        bis.u.x.denominator,
        bis.v.x.denominator,
        bis.u.y.denominator,
        bis.v.y.denominator,
    )
    return (
        _derivative_terms(sx, cx, p, 2),  # ax''
        _derivative_terms(sy, cy, p, 1),  # by'
        _derivative_terms(sy, cy, p, 2),  # by''
        _derivative_terms(sx, cx, p, 1),  # ax'
        denom,
    )


def _iv_pow_int(lo: int, hi: int, k: int) -> tuple[int, int]:
    if k % 2 == 1 or lo >= 0:
        return lo**k, hi**k
    if hi <= 0:
        return hi**k, lo**k
    return 0, max(lo**k, hi**k)


def _iv_mul_int(alo: int, ahi: int, blo: int, bhi: int) -> tuple[int, int]:
    c = (alo * blo, alo * bhi, ahi * blo, ahi * bhi)
    return min(c), max(c)


def _int_terms_range(terms, L: int, H: int, Q: int):
    """Outward range of sum(coeff * (t - a)^k) over [L, H] at scale Q."""
    tlo = thi = 0
    for coeff, a, k in terms:
        A = int(a * Q)
        plo, phi = _iv_pow_int(L - A, H - A, k)
        c = int(coeff)
        if c >= 0:
            tlo += c * plo
            thi += c * phi
        else:
            tlo += c * phi
            thi += c * plo
    return tlo, thi


def _curvature_range(factors, x0, x1, y0, y1):
    """Outward-rounded sign range of N over the box, in scaled integers.

    Ranges are conservative (box bounds snap outward to the integer grid),
    which is all the exclusion test needs.
    """
    axx, byp, byy, axp, denom = factors
    widths = [v for v in (x1 - x0, y1 - y0) if v > 0]
    w = min(widths) if widths else None
    if w is None:
        shift = 16
    elif w >= 1:
        shift = 8
    else:
        shift = (w.denominator // w.numerator).bit_length() + 8
    Q = denom << shift
    Lx = (x0.numerator * Q) // x0.denominator
    Hx = -((-x1.numerator * Q) // x1.denominator)
    Ly = (y0.numerator * Q) // y0.denominator
    Hy = -((-y1.numerator * Q) // y1.denominator)
    a_lo, a_hi = _int_terms_range(axx, Lx, Hx, Q)
    bp_lo, bp_hi = _int_terms_range(byp, Ly, Hy, Q)
    bp2 = _iv_pow_int(bp_lo, bp_hi, 2)
    t1 = _iv_mul_int(a_lo, a_hi, bp2[0], bp2[1])
    b_lo, b_hi = _int_terms_range(byy, Ly, Hy, Q)
    ap_lo, ap_hi = _int_terms_range(axp, Lx, Hx, Q)
    ap2 = _iv_pow_int(ap_lo, ap_hi, 2)
    t2 = _iv_mul_int(b_lo, b_hi, ap2[0], ap2[1])
    return t1[0] + t2[0], t1[1] + t2[1]


def curvature_numerator(B: Bisector, piece: BisectorPiece) -> Poly2:
    """N(x, y) with curve curvature = -N / Q_y^3; degree < 3p."""
    Q = piece.poly
    qx, qy = Q.partial_x(), Q.partial_y()
    qxx, qyy = qx.partial_x(), qy.partial_y()
    return qxx * qy * qy + qyy * qx * qx


def _segment_hull(B: Bisector, budget: _Budget) -> Box:
    """A bounded rational box containing all bounded pieces of the curve."""
    u, v = B.u, B.v
    xlo, xhi = min(u.x, v.x), max(u.x, v.x)
    ylo, yhi = min(u.y, v.y), max(u.y, v.y)
    prec = max(B.diameter, Fraction(1))
    gx = []
    for y in (ylo, yhi):
        gx.append(_eval_curve_x(B, y, prec, budget))
    fy = []
    for x in (xlo, xhi):
        fy.append(_eval_curve_y(B, x, prec, budget))
    x_min = min([xlo] + [iv[0] for iv in gx])
    x_max = max([xhi] + [iv[1] for iv in gx])
    y_min = min([ylo] + [iv[0] for iv in fy])
    y_max = max([yhi] + [iv[1] for iv in fy])
    return Box(x_min, x_max, y_min, y_max)


def _piece_segment_window(B: Bisector, piece: BisectorPiece, budget: _Budget) -> Box:
    """A tight bounded box around a bounded piece's curve segment.

    Bounded segments start and end at crossings of the region's boundary
    lines, so enclosing the crossing coordinates bounds the segment.
    """
    region = piece.region
    tol = max(B.diameter, Fraction(1)) / 64
    xs: list[Fraction] = []
    ys: list[Fraction] = []
    for xb in (region.x_lo, region.x_hi):
        if xb is None:
            continue
        lo, hi = _eval_curve_y(B, xb, tol, budget)
        xs.append(xb)
        ys.extend((lo, hi))
    for yb in (region.y_lo, region.y_hi):
        if yb is None:
            continue
        lo, hi = _eval_curve_x(B, yb, tol, budget)
        ys.append(yb)
        xs.extend((lo, hi))
    window = Box(min(xs), max(xs), min(ys), max(ys))
    got = intersect_boxes(window, region)
    if got is None:
        raise ContractViolation("segment window misses its region")
    return got


def _split_box(b: Box, target: Fraction) -> list[Box]:
    wx, wy = b.widths()
    xs = [b.x_lo, (b.x_lo + b.x_hi) / 2, b.x_hi] if wx > target else [b.x_lo, b.x_hi]
    ys = [b.y_lo, (b.y_lo + b.y_hi) / 2, b.y_hi] if wy > target else [b.y_lo, b.y_hi]
    out = []
    for i in range(len(xs) - 1):
        for j in range(len(ys) - 1):
            out.append(Box(xs[i], xs[i + 1], ys[j], ys[j + 1]))
    return out


def _cluster_boxes(boxes: list[Box]) -> list[Box]:
    clusters: list[Box] = []
    members: list[list[Box]] = []
    for b in boxes:
        hit = [k for k, cb in enumerate(clusters) if cb.touches(b)]
        if not hit:
            clusters.append(b)
            members.append([b])
            continue
        base = hit[0]
        clusters[base] = clusters[base].hull(b)
        members[base].append(b)
        for k in reversed(hit[1:]):
            clusters[base] = clusters[base].hull(clusters[k])
            members[base].extend(members[k])
            del clusters[k]
            del members[k]
    # Merge until stable (hulls may newly touch).
    changed = True
    while changed:
        changed = False
        for i in range(len(clusters)):
            for j in range(i + 1, len(clusters)):
                if clusters[i].touches(clusters[j]):
                    clusters[i] = clusters[i].hull(clusters[j])
                    del clusters[j]
                    changed = True
                    break
            if changed:
                break
    return clusters


def _isolate_on_piece(
    B: Bisector,
    piece: BisectorPiece,
    domain: Box,
    extra_range,
    target: Fraction,
    budget: _Budget,
    f_cache: Optional[dict] = None,
) -> list[Box]:
    """Curve-hugging boxes of side <= target not excluded by the sign test.

    The bisector is a monotone graph, so subdividing the x-axis suffices:
    the curve's y-range over an x-interval is the hull of the endpoint
    enclosures, exactly.
    """
    if f_cache is None:
        f_cache = {}

    def f_at(x: Fraction, prec: Fraction, seed=None) -> tuple[Fraction, Fraction]:
        got = f_cache.get(x)
        if got is None:
            if seed is not None:
                # The parent's y-hull brackets every curve value inside it.
                got = _bisect_curve_y(B, B._hx.eval(x), seed[0], seed[1], prec, budget)
            else:
                got = _eval_curve_y(B, x, prec, budget)
            f_cache[x] = got
        elif got[1] - got[0] > prec:
            got = _bisect_curve_y(B, B._hx.eval(x), got[0], got[1], prec, budget)
            f_cache[x] = got
        return got

    out = []
    stack = [(domain.x_lo, domain.x_hi, None)]
    while stack:
        budget.tick()
        a, b, seed = stack.pop()
        width = b - a
        prec = max(width / 4, target / 8)
        ya = f_at(a, prec, seed)
        yb = f_at(b, prec, seed)
        y_lo, y_hi = min(ya[0], yb[0]), max(ya[1], yb[1])
        got = _intersect_iv(y_lo, y_hi, domain.y_lo, domain.y_hi)
        if got is None:
            continue
        y_lo, y_hi = got
        lo, hi = extra_range(Box(a, b, y_lo, y_hi))
        if lo > 0 or hi < 0:
            continue
        if width <= target:
            # Steep sections keep a larger y-extent here; the caller's
            # cluster refinement narrows it by shrinking the x-target.
            out.append(Box(a, b, y_lo, y_hi))
            continue
        mid = (a + b) / 2
        child_seed = (min(ya[0], yb[0]), max(ya[1], yb[1]))
        stack.append((a, mid, child_seed))
        stack.append((mid, b, child_seed))
    return out


def inflection_points(
    B: Bisector,
    precision: Optional[Fraction] = None,
    budget_limit: int = DEFAULT_BUDGET,
) -> InflectionReport:
    if B.p == 2:
        raise Unsupported("p = 2 bisectors are lines; no inflection analysis")
    if B.kind == "line":
        return InflectionReport(points=[], count=0, midpoint_included=False)
    prec = precision if precision is not None else B.default_precision()
    budget = _Budget(budget_limit)
    m = B.midpoint

    enclosures: list[Box] = []
    for piece in B.pieces:
        if not piece.bounded:
            continue
        domain = _piece_segment_window(B, piece, budget)
        factors = _curvature_factors(B, piece.signs)

        def n_range(b: Box, factors=factors):
            return _curvature_range(factors, b.x_lo, b.x_hi, b.y_lo, b.y_hi)

        target = prec / 4
        while True:
            boxes = _isolate_on_piece(B, piece, domain, n_range, target, budget)
            clusters = _cluster_boxes(boxes)
            if len(clusters) == 1 and all(
                w <= prec for w in clusters[0].widths()
            ):
                enclosures.append(clusters[0])
                break
            if not clusters:
                raise ContractViolation(
                    f"no inflection candidate in bounded region {piece.region_index}"
                )
            # Refine inside the candidate hull instead of rescanning the
            # whole region, and jump the target straight to the shrink
            # factor the cluster width demands.
            hull_box = clusters[0]
            for c in clusters[1:]:
                hull_box = hull_box.hull(c)
            domain = hull_box
            worst = max(max(c.widths()) for c in clusters)
            target = min(target / 2, target * prec / (2 * worst))
            budget.tick(len(boxes) + 1)

    mid_hits = [c for c in enclosures if c.contains(m)]
    midpoint_included = len(mid_hits) >= 1
    if midpoint_included:
        # The midpoint inflection is exactly verifiable: Q(m) = N(m) = 0.
        mid_piece = next(pc for pc in B.pieces if pc.region_index == (1, 1))
        n_poly = curvature_numerator(B, mid_piece)
        if mid_piece.poly.eval(m.x, m.y) != 0 or n_poly.eval(m.x, m.y) != 0:
            raise ContractViolation("midpoint failed the exact inflection test")
    if len(enclosures) != 3 or not midpoint_included:
        raise ContractViolation(
            f"inflection census failed: {len(enclosures)} enclosures, "
            f"midpoint_included={midpoint_included}"
        )
    return InflectionReport(points=enclosures, count=3, midpoint_included=True)


# ---------------------------------------------------------------------------
# Bisector intersections


@dataclass
class IntersectionEnclosure:
    box: Box
    confirmed: bool


def _line_coeffs_normalized(line):
    a, b, c = line
    for lead in (a, b, c):
        if lead != 0:
            return (a / lead, b / lead, c / lead)
    raise ContractViolation("degenerate line coefficients")


def _line_line_intersections(B1: Bisector, B2: Bisector):
    a1, b1, c1 = B1.line
    a2, b2, c2 = B2.line
    det = a1 * b2 - a2 * b1
    if det == 0:
        if _line_coeffs_normalized(B1.line) == _line_coeffs_normalized(B2.line):
            raise IdenticalCurves("bisectors are the same line")
        return []
    x = (-c1 * b2 + c2 * b1) / det
    y = (-a1 * c2 + a2 * c1) / det
    return [IntersectionEnclosure(Box(x, x, y, y), True)]


def _order_sign_at(
    B1: Bisector, B2: Bisector, x: Fraction, budget: _Budget
) -> int:
    """Sign of f1(x) - f2(x); 0 only when the curves meet exactly at x."""
    prec = max(B1.diameter, B2.diameter, Fraction(1))
    for _ in range(300):
        budget.tick()
        a = _eval_curve_y(B1, x, prec, budget)
        b = _eval_curve_y(B2, x, prec, budget)
        if a[0] > b[1]:
            return 1
        if a[1] < b[0]:
            return -1
        if a[0] == a[1] and b[0] == b[1] and a[0] == b[0]:
            return 0
        prec /= 4
    return 0  # unresolved: treat as a contact at x


def _opposite_orientation_intersection(
    B1: Bisector, B2: Bisector, precision: Fraction, budget: _Budget
) -> list[IntersectionEnclosure]:
    """Curves of opposite orientation cross exactly once; pure bisection.

    delta(x) = f1(x) - f2(x) is strictly monotone (decreasing when B1 is the
    decreasing curve), so a doubling search in the right direction brackets
    the single zero.
    """
    x0 = (B1.midpoint.x + B2.midpoint.x) / 2
    step = max(B1.diameter, B2.diameter, Fraction(1))
    s0 = _order_sign_at(B1, B2, x0, budget)
    if s0 == 0:
        ylo, yhi = _eval_curve_y(B1, x0, precision, budget)
        return [IntersectionEnclosure(Box(x0, x0, ylo, yhi), True)]
    delta_decreasing = bool(B1.decreasing)
    direction = 1 if (s0 > 0) == delta_decreasing else -1
    a, s_a = x0, s0
    while True:
        budget.tick()
        b = a + direction * step
        step *= 2
        s_b = _order_sign_at(B1, B2, b, budget)
        if s_b == 0:
            ylo, yhi = _eval_curve_y(B1, b, precision, budget)
            return [IntersectionEnclosure(Box(b, b, ylo, yhi), True)]
        if s_b != s_a:
            break
        a = b
    lo, hi = (a, b) if a < b else (b, a)
    s_lo = s_a if a < b else s_b
    while hi - lo > precision:
        budget.tick()
        mid = (lo + hi) / 2
        sm = _order_sign_at(B1, B2, mid, budget)
        if sm == 0:
            ylo, yhi = _eval_curve_y(B1, mid, precision, budget)
            return [IntersectionEnclosure(Box(mid, mid, ylo, yhi), True)]
        if sm == s_lo:
            lo = mid
        else:
            hi = mid
    y_a = _eval_curve_y(B1, lo, precision, budget)
    y_b = _eval_curve_y(B1, hi, precision, budget)
    return [
        IntersectionEnclosure(
            Box(lo, hi, min(y_a[0], y_b[0]), max(y_a[1], y_b[1])), True
        )
    ]


def _line_param(B: Bisector):
    """Parametrisation of a line bisector: by x if possible, else by y."""
    a, b, c = B.line
    if b != 0:
        return "x", (-a / b, -c / b)  # y = m x + k
    return "y", (Fraction(0), -c / a)  # x = k (vertical)


def _line_curve_intersections(
    line_b: Bisector, curve_b: Bisector, precision: Fraction, budget: _Budget
) -> list[IntersectionEnclosure]:
    axis, (m, k) = _line_param(line_b)
    out: list[IntersectionEnclosure] = []
    seen_exact: set[tuple[Fraction, Fraction]] = set()
    for piece in curve_b.pieces:
        if axis == "x":
            f = piece.poly.substitute_y_linear(m, k)
            t_lo, t_hi = piece.region.x_lo, piece.region.x_hi
            # y = m t + k must also stay inside the region's y-interval.
            y_lo, y_hi = piece.region.y_lo, piece.region.y_hi
            if m != 0:
                pre_a = None if y_lo is None else (y_lo - k) / m
                pre_b = None if y_hi is None else (y_hi - k) / m
                pre_lo, pre_hi = (pre_a, pre_b) if m > 0 else (pre_b, pre_a)
                got = _intersect_iv(t_lo, t_hi, pre_lo, pre_hi)
                if got is None:
                    continue
                t_lo, t_hi = got
            else:
                if (y_lo is not None and k < y_lo) or (y_hi is not None and k > y_hi):
                    continue
        else:
            f = piece.poly.swap_vars().substitute_y_linear(Fraction(0), k)
            t_lo, t_hi = piece.region.y_lo, piece.region.y_hi
            x_lo, x_hi = piece.region.x_lo, piece.region.x_hi
            if x_lo is not None and k < x_lo:
                continue
            if x_hi is not None and k > x_hi:
                continue
        if f.is_zero():
            raise ContractViolation("line lies inside a bisector piece polynomial")
        if f.degree < 1:
            continue
        budget.tick(f.degree + 1)
        fsf_all = square_free_part(f).primitive()
        for r_lo, r_hi in isolate_real_roots(f, t_lo, t_hi):
            fsf = _drop_endpoint_roots(fsf_all, r_lo, r_hi)
            r_lo, r_hi = refine_root(fsf, r_lo, r_hi, precision)
            # Strictly locate inside the half-open region strip; boundary
            # roots belong to one adjacent piece only, dedupe via exact hits.
            if r_lo == r_hi:
                t = r_lo
                if axis == "x":
                    pt = (t, m * t + k)
                else:
                    pt = (k, t)
                if not curve_b.contains_point(Point(pt[0], pt[1])):
                    continue
                if pt in seen_exact:
                    continue
                seen_exact.add(pt)
                out.append(
                    IntersectionEnclosure(Box(pt[0], pt[0], pt[1], pt[1]), True)
                )
            else:
                while (t_lo is not None and r_lo < t_lo) or (
                    t_hi is not None and r_hi > t_hi
                ):
                    budget.tick()
                    r_lo, r_hi = refine_root(fsf, r_lo, r_hi, (r_hi - r_lo) / 4)
                    if r_lo == r_hi:
                        break
                if axis == "x":
                    ys = sorted((m * r_lo + k, m * r_hi + k))
                    box = Box(r_lo, r_hi, ys[0], ys[1])
                else:
                    box = Box(k, k, r_lo, r_hi)
                out.append(IntersectionEnclosure(box, True))
    out.sort(key=lambda e: (e.box.x_lo, e.box.y_lo))
    return out


def _resultant_x_cap(p1: BisectorPiece, p2: BisectorPiece) -> Optional[tuple]:
    """Bound on the x-coordinates of common zeros of two piece polynomials."""
    res = resultant_wrt_y(p1.poly, p2.poly)
    if res.is_zero():
        raise DegeneratePosition(
            "bisector pieces share an algebraic component; unsupported degenerate pair"
        )
    if res.degree < 1:
        return None  # no common zeros anywhere
    bound = cauchy_root_bound(res)
    return (-bound, bound)


def _capped_overlap(
    B1: Bisector,
    p1: BisectorPiece,
    B2: Bisector,
    p2: BisectorPiece,
    budget: _Budget,
) -> Optional[Box]:
    """Bounded box containing every curve-curve intersection in the overlap."""
    overlap = intersect_boxes(p1.region, p2.region)
    if overlap is None:
        return None
    x_lo, x_hi = overlap.x_lo, overlap.x_hi
    y_lo, y_hi = overlap.y_lo, overlap.y_hi
    if x_lo is None or x_hi is None:
        if y_lo is not None and y_hi is not None:
            # Intersections lie on curve 1: x in g1([y_lo, y_hi]).
            prec = max(B1.diameter, Fraction(1))
            g_a = _eval_curve_x(B1, y_lo, prec, budget)
            g_b = _eval_curve_x(B1, y_hi, prec, budget)
            got = _intersect_iv(
                x_lo, x_hi, min(g_a[0], g_b[0]), max(g_a[1], g_b[1])
            )
            if got is None:
                return None
            x_lo, x_hi = got
        else:
            cap = _resultant_x_cap(p1, p2)
            if cap is None:
                return None
            got = _intersect_iv(x_lo, x_hi, cap[0], cap[1])
            if got is None:
                return None
            x_lo, x_hi = got
    if x_lo > x_hi:
        return None
    # x is bounded now; cap y through curve 1's monotone graph.
    prec = max(B1.diameter, Fraction(1))
    f_a = _eval_curve_y(B1, x_lo, prec, budget)
    f_b = _eval_curve_y(B1, x_hi, prec, budget)
    got = _intersect_iv(y_lo, y_hi, min(f_a[0], f_b[0]), max(f_a[1], f_b[1]))
    if got is None:
        return None
    y_lo, y_hi = got
    return Box(x_lo, x_hi, y_lo, y_hi)


def _subdivide_two_curves(
    B1: Bisector, B2: Bisector, domain: Box, target: Fraction, budget: _Budget
) -> list[Box]:
    out = []
    stack = [domain]
    while stack:
        budget.tick()
        b = stack.pop()
        if not (B1.box_meets_curve(b) and B2.box_meets_curve(b)):
            continue
        wx, wy = b.widths()
        if wx <= target and wy <= target:
            out.append(b)
            continue
        stack.extend(_split_box(b, target))
    return out


def bisector_intersections(
    B1: Bisector,
    B2: Bisector,
    precision: Optional[Fraction] = None,
    budget_limit: int = DEFAULT_BUDGET,
) -> list[IntersectionEnclosure]:
    """Enclosures of all intersection points of two distinct bisectors."""
    if B1.defining_pair() == B2.defining_pair():
        raise IdenticalCurves("same defining pair")
    if B1.kind == "line" and B2.kind == "line":
        return _line_line_intersections(B1, B2)
    prec = precision
    if prec is None:
        prec = min(
            B1.default_precision() if B1.kind == "curve" else B2.default_precision(),
            B2.default_precision() if B2.kind == "curve" else B1.default_precision(),
        )
    budget = _Budget(budget_limit)
    if B1.kind == "line":
        return _line_curve_intersections(B1, B2, prec, budget)
    if B2.kind == "line":
        return _line_curve_intersections(B2, B1, prec, budget)

    if B1.decreasing != B2.decreasing:
        return _opposite_orientation_intersection(B1, B2, prec, budget)

    domains = []
    for p1 in B1.pieces:
        for p2 in B2.pieces:
            capped = _capped_overlap(B1, p1, B2, p2, budget)
            if capped is not None:
                domains.append(capped)

    target = prec
    while True:
        boxes = []
        for d in domains:
            boxes.extend(_subdivide_two_curves(B1, B2, d, target, budget))
        clusters = _cluster_boxes(boxes)
        if all(max(c.widths()) <= prec for c in clusters):
            break
        target /= 2

    clusters.sort(key=lambda c: (c.x_lo, c.y_lo))
    # Candidate clusters cover every intersection, but a shallow crossing
    # also leaves stray near-approach boxes.  Count crossings by the order
    # of the two graphs between consecutive clusters: a sign flip across a
    # cluster certifies a crossing inside it; a flip cannot come from
    # anywhere else because the order function vanishes only at
    # intersections, and every intersection lies inside some cluster.
    out: list[IntersectionEnclosure] = []
    if not clusters:
        return out
    pad = max(prec, max(max(c.widths()) for c in clusters))
    cuts = [clusters[0].x_lo - pad]
    for left, right in zip(clusters, clusters[1:]):
        gap_lo, gap_hi = left.x_hi, right.x_lo
        cuts.append((gap_lo + gap_hi) / 2 if gap_lo < gap_hi else gap_hi)
    cuts.append(clusters[-1].x_hi + pad)
    signs = [_order_sign_at(B1, B2, t, budget) for t in cuts]
    for idx, c in enumerate(clusters):
        s_l, s_r = signs[idx], signs[idx + 1]
        if s_l != 0 and s_r != 0 and s_l != s_r:
            out.append(IntersectionEnclosure(c, True))
        elif not _refines_away(B1, B2, c, target, budget):
            out.append(IntersectionEnclosure(c, False))
    return out


def _refines_away(
    B1: Bisector, B2: Bisector, box: Box, target: Fraction, budget: _Budget
) -> bool:
    """Subdivide deeper; True if the near-approach boxes all get excluded."""
    for _ in range(12):
        target /= 2
        if not _subdivide_two_curves(B1, B2, box, target, budget):
            return True
    return False


def bezout_pair_ceiling(p: int) -> int:
    """Sanity ceiling for intersections of two degree-<=p curves."""
    return 2 * p * p


def distance_key_to_pair(B: Bisector, w: Point):
    """Exact equidistance witness: keys from w to u and to v (equal iff on B)."""
    m = PNorm(B.p)
    return lp_distance_key(w, B.u, m), lp_distance_key(w, B.v, m)


def _drop_endpoint_roots(poly: Poly1, r_lo: Fraction, r_hi: Fraction) -> Poly1:
    """Remove factors vanishing at an isolating interval's own endpoints."""
    if r_lo == r_hi:
        return poly
    q = poly
    for r in (r_lo, r_hi):
        while q.degree >= 1 and q.eval(r) == 0:
            q = q.divexact(Poly1([-r, Fraction(1)]))
    return q
