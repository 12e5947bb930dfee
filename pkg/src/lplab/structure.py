"""Structural analysis of near-extremal point sets under l_inf.

The pipeline mirrors the constructive side of the structure theorem for
sets spanning few distinct l_inf distances: extreme-point frame and the
nine-rectangle decomposition, an axis-parallel line cover extracted from
squares around the extreme points, rich-line filtering, per-line difference
sets, generalized arithmetic progression (GAP) fitting, a saved-line process
that reuses progressions across lines with matching difference sets, and a
partition of the cover by intercept structure.

Every asymptotic threshold of the underlying statement becomes an explicit
rational parameter (defaults 1/4): rho for rich lines, theta for the
difference-set and leftover-line tests, gamma for the heavy-point test and
beta for part sizes.  GAP extraction is a verified heuristic: whatever it
returns provably contains its input, and it may return None rather than an
unverified cover.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Optional

from .census import classify_pairs_linf
from .errors import (
    ContractViolation,
    EmptyAfterPruning,
    InvalidInput,
    PreconditionViolated,
    StallDetected,
)
from .geometry import Point, PointSet

# Quadruple tables of the nine-rectangle decomposition.  Entry j says on
# which side (V = vertical, H = horizontal) of a square centered at the j-th
# extreme point a point of the given rectangle sits.  Rectangles are indexed
# row-major: rows by the y-x ("minus") strips, columns by the x+y ("plus")
# strips.
QUADRUPLES_CASE1 = {
    1: "VHVH", 2: "VHHH", 3: "VHHV",
    4: "VVVH", 5: "VVHH", 6: "VVHV",
    7: "HVVH", 8: "HVHH", 9: "HVHV",
}
QUADRUPLES_CASE2 = {
    1: "VHVH", 2: "VHVV", 3: "VHHV",
    4: "VVVH", 5: "VVVV", 6: "VVHV",
    7: "HVVH", 8: "HVVV", 9: "HVHV",
}


@dataclass
class Frame:
    extremes: list[Point]  # p1..p4 in the paper's order
    plus_bounds: list[Fraction]  # I1+ <= I2+ <= I3+ <= I4+
    minus_bounds: list[Fraction]  # I1- <= I2- <= I3- <= I4-
    case_tag: str  # "case1" | "case2"
    swapped: bool  # symmetric variant handled via the (x,y)->(y,x) swap
    quadruples: dict[int, str] = field(default_factory=dict)

    def rectangle_of(self, pt: Point) -> int:
        """1-based rectangle index; strips are half-open [lo, hi) except the
        last, so every point lands in exactly one rectangle."""
        x, y = (pt.y, pt.x) if self.swapped else (pt.x, pt.y)
        col = _strip_index(x + y, self.plus_bounds)
        row = _strip_index(y - x, self.minus_bounds)
        return 3 * row + col + 1


def _strip_index(v: Fraction, bounds: list[Fraction]) -> int:
    if not bounds[0] <= v <= bounds[3]:
        raise ContractViolation("value outside the frame bounds")
    if v < bounds[1]:
        return 0
    if v < bounds[2]:
        return 1
    return 2


def _extreme_frame_oriented(P: PointSet) -> Optional[Frame]:
    """Frame for the main branch (y1 - x1 >= y2 - x2); None if it is the
    symmetric branch."""
    pts = list(P)
    plus = [p.x + p.y for p in pts]
    minus = [p.y - p.x for p in pts]
    i1p, i4p = min(plus), max(plus)
    # Preferred tie-breaks: minimise y1-x1 among the x+y minimisers, maximise
    # y2-x2 among the maximisers.  When both of the extreme x+y lines hold
    # several points with interleaved y-x spreads, that choice can miss the
    # main branch even though another choice satisfies it; fall back to the
    # branch-feasible choice in that case.
    lo_set = [p for p in pts if p.x + p.y == i1p]
    hi_set = [p for p in pts if p.x + p.y == i4p]
    p1 = min(lo_set, key=lambda p: p.y - p.x)
    p2 = max(hi_set, key=lambda p: p.y - p.x)
    if p1.y - p1.x < p2.y - p2.x:
        p1 = max(lo_set, key=lambda p: p.y - p.x)
        p2 = min(hi_set, key=lambda p: p.y - p.x)
    i1m, i4m = min(minus), max(minus)
    p3 = min((p for p in pts if p.y - p.x == i1m), key=lambda p: p.x + p.y)
    p4 = max((p for p in pts if p.y - p.x == i4m), key=lambda p: p.x + p.y)

    if p1.y - p1.x < p2.y - p2.x:
        return None
    i3m, i2m = p1.y - p1.x, p2.y - p2.x
    if p3.x + p3.y <= p4.x + p4.y:
        case = "case1"
        i2p, i3p = p3.x + p3.y, p4.x + p4.y
    else:
        case = "case2"
        i2p, i3p = p4.x + p4.y, p3.x + p3.y
    return Frame(
        extremes=[p1, p2, p3, p4],
        plus_bounds=[i1p, i2p, i3p, i4p],
        minus_bounds=[i1m, i2m, i3m, i4m],
        case_tag=case,
        swapped=False,
        quadruples=dict(QUADRUPLES_CASE1 if case == "case1" else QUADRUPLES_CASE2),
    )


def extreme_frame(P: PointSet) -> Frame:
    if P.n < 2:
        raise InvalidInput("frame needs at least two points")
    frame = _extreme_frame_oriented(P)
    if frame is not None:
        return frame
    frame = _extreme_frame_oriented(P.swap_axes())
    if frame is None:
        raise ContractViolation("both orientations rejected the main branch")
    frame.swapped = True
    frame.extremes = [Point(p.y, p.x) for p in frame.extremes]
    return frame


def frame_quadruple_holds(P: PointSet, frame: Frame) -> bool:
    """Check the side-letter table pointwise: alpha_j = V means the square
    around extreme j through the point has it on a vertical side, i.e.
    |dx| >= |dy| (non-strict; ties satisfy both letters).

    For a symmetric-variant frame the letters live in the swapped coordinate
    system, so the roles of dx and dy exchange.
    """
    extremes = frame.extremes
    for pt in P:
        quad = frame.quadruples[frame.rectangle_of(pt)]
        for j, letter in enumerate(quad):
            ex = extremes[j]
            if pt == ex:
                continue
            dx = abs(pt.x - ex.x)
            dy = abs(pt.y - ex.y)
            if frame.swapped:
                dx, dy = dy, dx
            if letter == "V" and dx < dy:
                return False
            if letter == "H" and dy < dx:
                return False
    return True


# ---------------------------------------------------------------------------
# Line cover


@dataclass
class LineCover:
    orientation: str  # "horizontal" | "vertical"
    intercepts: list[Fraction]  # sorted intercepts of the cover lines
    assignment: dict[int, int]  # point index -> line index
    points: PointSet
    rich_flags: list[bool] = field(default_factory=list)
    discarded: list[int] = field(default_factory=list)  # point indices

    def line_points(self, line_index: int) -> list[int]:
        return [i for i, li in self.assignment.items() if li == line_index]

    def coordinates_along(self, line_index: int) -> list[Fraction]:
        """Sorted positions of the line's points along the line."""
        pts = self.line_points(line_index)
        if self.orientation == "horizontal":
            coords = sorted(self.points[i].x for i in pts)
        else:
            coords = sorted(self.points[i].y for i in pts)
        return coords


def _intercept_family(P: PointSet, frame: Frame, horizontal: bool) -> set[Fraction]:
    """Intercepts of the lines through sides of squares centered at the
    extreme points and passing through a point of P."""
    out: set[Fraction] = set()
    for ex in set(frame.extremes):
        keys = set()
        for q in P:
            if q == ex:
                continue
            keys.add(max(abs(q.x - ex.x), abs(q.y - ex.y)))
        center = ex.y if horizontal else ex.x
        for d in keys:
            out.add(center - d)
            out.add(center + d)
    return out


def line_cover(P: PointSet) -> LineCover:
    if P.n < 2:
        raise InvalidInput("line cover needs at least two points")
    frame = extreme_frame(P)
    # Case 2 forces the orientation of the middle rectangle's quadruple, but
    # only when that rectangle actually holds points.
    forced: Optional[str] = None
    if frame.case_tag == "case2" and any(frame.rectangle_of(pt) == 5 for pt in P):
        forced = "horizontal" if frame.swapped else "vertical"

    choices = [forced] if forced else ["horizontal", "vertical"]

    best = None
    for orientation in choices:
        horizontal = orientation == "horizontal"
        family = _intercept_family(P, frame, horizontal)
        assignment: dict[int, int] = {}
        used: dict[Fraction, list[int]] = {}
        covered = True
        extremes = set(frame.extremes)
        for i, pt in enumerate(P):
            coord = pt.y if horizontal else pt.x
            if coord in family or pt in extremes:
                used.setdefault(coord, []).append(i)
            else:
                covered = False
                break
        if not covered:
            continue
        intercepts = sorted(used)
        index_of = {c: k for k, c in enumerate(intercepts)}
        for c, idxs in used.items():
            for i in idxs:
                assignment[i] = index_of[c]
        cover = LineCover(
            orientation=orientation,
            intercepts=intercepts,
            assignment=assignment,
            points=P,
        )
        if best is None or len(cover.intercepts) < len(best.intercepts):
            best = cover
    if best is None:
        raise ContractViolation("no orientation covers the point set")
    _verify_cover(best)
    return best


def _verify_cover(cover: LineCover) -> None:
    for i, pt in enumerate(cover.points):
        coord = pt.y if cover.orientation == "horizontal" else pt.x
        if coord != cover.intercepts[cover.assignment[i]]:
            raise ContractViolation(f"point {i} is not on its assigned line")


def rich_lines(cover: LineCover, rho: Fraction) -> LineCover:
    """Keep lines holding at least rho * sqrt(n) points (compared exactly
    via squaring); discarded points go to the ledger."""
    if not 0 < rho <= 1:
        raise PreconditionViolated("rho must be in (0, 1]")
    n = cover.points.n
    keep: list[int] = []
    for li in range(len(cover.intercepts)):
        count = len(cover.line_points(li))
        if count * count >= rho * rho * n:
            keep.append(li)
    if not keep:
        raise EmptyAfterPruning(f"rho={rho} prunes every line")
    remap = {old: new for new, old in enumerate(keep)}
    assignment = {}
    discarded = list(cover.discarded)
    for i, li in cover.assignment.items():
        if li in remap:
            assignment[i] = remap[li]
        else:
            discarded.append(i)
    return LineCover(
        orientation=cover.orientation,
        intercepts=[cover.intercepts[li] for li in keep],
        assignment=assignment,
        points=cover.points,
        rich_flags=[True] * len(keep),
        discarded=sorted(discarded),
    )


# ---------------------------------------------------------------------------
# Difference sets, energy, GAPs


def difference_set(A: list[Fraction]) -> set[Fraction]:
    """The signed difference set {a - a'} (contains 0 and is symmetric)."""
    if not A:
        raise InvalidInput("difference set of an empty list")
    vals = sorted(set(A))
    out: set[Fraction] = set()
    for a in vals:
        for b in vals:
            out.add(a - b)
    return out


@dataclass
class EnergyReport:
    size: int
    multiplicities: dict[Fraction, int]  # r(d) over signed differences
    energy: int
    delta: Fraction  # E / |A|^3

    @property
    def lower_bound(self) -> int:
        return self.size * self.size


def difference_energy(A: list[Fraction]) -> EnergyReport:
    """E(A) = #{(a1,a2,a3,a4): a1 - a2 = a3 - a4} via Sum_d r(d)^2."""
    if not A:
        raise InvalidInput("energy of an empty list")
    vals = sorted(set(A))
    mult: dict[Fraction, int] = {}
    for a in vals:
        for b in vals:
            d = a - b
            mult[d] = mult.get(d, 0) + 1
    energy = sum(r * r for r in mult.values())
    n = len(vals)
    return EnergyReport(
        size=n, multiplicities=mult, energy=energy, delta=Fraction(energy, n**3)
    )


@dataclass(frozen=True)
class GAP:
    base: Fraction
    generators: tuple[Fraction, ...]
    sizes: tuple[int, ...]

    @property
    def dimension(self) -> int:
        return len(self.generators)

    @property
    def size(self) -> int:
        out = 1
        for s in self.sizes:
            out *= s
        return out

    def elements(self) -> set[Fraction]:
        out = {self.base}
        for b, s in zip(self.generators, self.sizes):
            out = {v + k * b for v in out for k in range(s)}
        return out

    def contains_all(self, A: list[Fraction]) -> bool:
        elems = self.elements()
        return all(a in elems for a in A)


def _rational_gcd(values: list[Fraction]) -> Fraction:
    den = 1
    for v in values:
        den = den * v.denominator // gcd(den, v.denominator)
    nums = [int(v * den) for v in values]
    g = 0
    for v in nums:
        g = gcd(g, abs(v))
    return Fraction(g, den)


def _fit_dim1(vals: list[Fraction], size_budget: int) -> Optional[GAP]:
    if len(vals) == 1:
        return GAP(base=vals[0], generators=(), sizes=())
    diffs = [b - a for a, b in zip(vals, vals[1:])]
    g = _rational_gcd(diffs)
    if g == 0:
        return None
    span = (vals[-1] - vals[0]) / g
    count = int(span) + 1
    if count > size_budget:
        return None
    return GAP(base=vals[0], generators=(g,), sizes=(count,))


def _box_fit(vals, gens, size_budget) -> Optional[GAP]:
    """Try to place vals in a GAP with the given positive generators."""
    base = vals[0]
    reps = []
    for v in vals:
        target = v - base
        found = None
        # Enumerate small coefficient vectors; generators are positive and
        # sorted descending, so the search is a bounded digit expansion.
        stack = [(target, (), 0)]
        while stack:
            rem, ks, gi = stack.pop()
            if gi == len(gens):
                if rem == 0:
                    found = ks
                    break
                continue
            g = gens[gi]
            kmax = int(rem / g) if rem >= 0 else -1
            # Push ascending so the greedy (largest-coefficient) branch is
            # explored first; it keeps representations inside tight boxes.
            for k in range(0, min(kmax, size_budget) + 1):
                stack.append((rem - k * g, ks + (k,), gi + 1))
        if found is None:
            return None
        reps.append(found)
    sizes = tuple(max(r[i] for r in reps) + 1 for i in range(len(gens)))
    total = 1
    for s in sizes:
        total *= s
    if total > size_budget:
        return None
    gap = GAP(base=base, generators=tuple(gens), sizes=sizes)
    if not gap.contains_all(vals):
        raise ContractViolation("box fit produced a non-containing GAP")
    return gap


def gap_fit(A: list[Fraction], d_max: int = 3, size_budget: Optional[int] = None) -> Optional[GAP]:
    """Fit A into a GAP of dimension <= d_max and size <= size_budget.

    Returns None when the heuristic finds no cover within budget; any
    returned GAP is verified to contain A exactly.  Dimension-1 fits use the
    gcd of consecutive differences; higher dimensions search generator pairs
    and triples among the most frequent positive differences.
    """
    if not A:
        raise InvalidInput("gap_fit of an empty list")
    if d_max not in (1, 2, 3):
        raise PreconditionViolated("d_max must be 1, 2, or 3")
    vals = sorted(set(A))
    if size_budget is None:
        size_budget = 2 * len(vals)
    if size_budget < len(vals):
        raise PreconditionViolated("size budget below |A|")
    got = _fit_dim1(vals, size_budget)
    if got is not None:
        _check_gap(got, vals, d_max, size_budget)
        return got
    if d_max == 1 or len(vals) < 3:
        return None

    mult: dict[Fraction, int] = {}
    for i, a in enumerate(vals):
        for b in vals[i + 1 :]:
            d = b - a
            mult[d] = mult.get(d, 0) + 1
    candidates = sorted(mult, key=lambda d: (-mult[d], d))[:10]
    best: Optional[GAP] = None
    for i, g1 in enumerate(candidates):
        for g2 in candidates[i + 1 :]:
            gens = sorted((g1, g2), reverse=True)
            got = _box_fit(vals, gens, size_budget)
            if got is not None and (best is None or got.size < best.size):
                best = got
    if best is None and d_max >= 3:
        for i, g1 in enumerate(candidates[:6]):
            for j in range(i + 1, min(len(candidates), 6)):
                for k in range(j + 1, min(len(candidates), 6)):
                    gens = sorted((g1, candidates[j], candidates[k]), reverse=True)
                    got = _box_fit(vals, gens, size_budget)
                    if got is not None and (best is None or got.size < best.size):
                        best = got
    if best is not None:
        _check_gap(best, vals, d_max, size_budget)
    return best


def _check_gap(gap: GAP, vals: list[Fraction], d_max: int, size_budget: int) -> None:
    if gap.dimension > d_max or gap.size > size_budget:
        raise ContractViolation("GAP fit exceeded its stated bounds")
    if not gap.contains_all(vals):
        raise ContractViolation("GAP fit does not contain its input")


def best_translation(A: GAP, C: list[Fraction]) -> tuple[Fraction, int]:
    """Exact maximiser of |(r + A) cap C| over r in C - elements(A).

    Any nonzero overlap forces r into C - elements(A), so the candidate set
    contains an optimal translation; ties break to the smallest r.
    """
    if not C:
        raise InvalidInput("empty target set")
    elems = sorted(A.elements())
    cset = set(C)
    best_r: Optional[Fraction] = None
    best_overlap = -1
    for c in sorted(cset):
        for a in elems:
            r = c - a
            overlap = sum(1 for e in elems if e + r in cset)
            if overlap > best_overlap or (
                overlap == best_overlap and (best_r is None or r < best_r)
            ):
                best_overlap = overlap
                best_r = r
    return best_r, best_overlap


# ---------------------------------------------------------------------------
# Saved-line progressions


@dataclass
class LineAssignment:
    progression_index: int
    translation: Fraction
    overlap: int
    saved: bool


def saved_line_progressions(
    cover: LineCover,
    theta: Fraction = Fraction(1, 4),
    d_max: int = 3,
    size_budget: Optional[int] = None,
) -> tuple[list[GAP], dict[int, LineAssignment]]:
    """The saved-line process over the (rich) cover, in intercept order.

    A line joins a saved line's progression when its difference set adds at
    most theta * sqrt(n) new values; otherwise its own GAP fit is saved as a
    new progression.
    """
    if not 0 < theta < 1:
        raise PreconditionViolated("theta must be in (0, 1)")
    n = cover.points.n
    gaps: list[GAP] = []
    saved_diffsets: list[set[Fraction]] = []
    assignment: dict[int, LineAssignment] = {}
    for li in range(len(cover.intercepts)):
        coords = cover.coordinates_along(li)
        if not coords:
            continue
        dset = difference_set(coords)
        attached = False
        for j, saved in enumerate(saved_diffsets):
            extra = len(dset - saved)
            if extra * extra <= theta * theta * n:
                r, overlap = best_translation(gaps[j], coords)
                assignment[li] = LineAssignment(j, r, overlap, saved=False)
                attached = True
                break
        if attached:
            continue
        budget = size_budget
        if budget is None:
            budget = max(2 * len(coords), 4 * _isqrt_ceil(n))
        fitted = gap_fit(coords, d_max=d_max, size_budget=budget)
        if fitted is None:
            raise StallDetected(
                f"line {li} (intercept {cover.intercepts[li]}) admits no GAP "
                f"within budget {budget}"
            )
        gaps.append(fitted)
        saved_diffsets.append(dset)
        assignment[li] = LineAssignment(
            len(gaps) - 1, Fraction(0), len(coords), saved=True
        )
    return gaps, assignment


def _isqrt_ceil(n: int) -> int:
    from math import isqrt

    r = isqrt(n)
    return r if r * r == n else r + 1


# ---------------------------------------------------------------------------
# Intercept partition


@dataclass
class InterceptPart:
    line_indices: list[int]
    gap: GAP
    via: str  # "heavy-point" | "popularity-component"


@dataclass
class InterceptPartition:
    parts: list[InterceptPart]
    leftover_lines: list[int]
    thresholds: dict[str, Fraction]


def _heavy_point_part(
    cover: LineCover,
    active: list[int],
    gamma: Fraction,
    beta: Fraction,
) -> Optional[list[int]]:
    """Lines met by the largest same-x class of some point's horizontal
    partners, when such a point and class are big enough."""
    P = cover.points
    active_set = set(active)
    live_points = [i for i in range(P.n) if cover.assignment.get(i) in active_set]
    if not live_points:
        return None
    horiz_partners: dict[int, list[int]] = {i: [] for i in live_points}
    for a in range(len(live_points)):
        i = live_points[a]
        for b in range(a + 1, len(live_points)):
            j = live_points[b]
            dx = abs(P[i].x - P[j].x)
            dy = abs(P[i].y - P[j].y)
            along = dx if cover.orientation == "horizontal" else dy
            across = dy if cover.orientation == "horizontal" else dx
            if along >= across:
                horiz_partners[i].append(j)
                horiz_partners[j].append(i)
    best_i = max(live_points, key=lambda i: (len(horiz_partners[i]), -i))
    # The heavy-pair threshold is against the full point count, matching the
    # loop's other thresholds.
    if len(horiz_partners[best_i]) < gamma * P.n:
        return None
    classes: dict[Fraction, set[int]] = {}
    for j in horiz_partners[best_i]:
        key = P[j].x if cover.orientation == "horizontal" else P[j].y
        classes.setdefault(key, set()).add(cover.assignment[j])
    best_class = max(classes.values(), key=lambda lines: (len(lines), -min(lines)))
    if len(best_class) * len(best_class) < beta * beta * P.n:
        return None
    return sorted(best_class)


def _popularity_part(
    cover: LineCover,
    active: list[int],
    beta: Fraction,
) -> Optional[list[int]]:
    """Largest connected component of the intercept popularity graph:
    connected line pairs whose intercept difference repeats often."""
    P = cover.points
    active_set = set(active)
    by_line: dict[int, list[int]] = {li: [] for li in active}
    for i, li in cover.assignment.items():
        if li in active_set:
            by_line[li].append(i)
    connected: set[tuple[int, int]] = set()
    for a in range(len(active)):
        for b in range(a + 1, len(active)):
            la, lb = active[a], active[b]
            if _lines_connected(cover, by_line[la], by_line[lb]):
                connected.add((la, lb))
    diff_mult: dict[Fraction, int] = {}
    for la, lb in connected:
        d = abs(cover.intercepts[la] - cover.intercepts[lb])
        diff_mult[d] = diff_mult.get(d, 0) + 1
    adj: dict[int, set[int]] = {li: set() for li in active}
    for la, lb in connected:
        d = abs(cover.intercepts[la] - cover.intercepts[lb])
        if diff_mult[d] * diff_mult[d] >= beta * beta * P.n:
            adj[la].add(lb)
            adj[lb].add(la)
    seen: set[int] = set()
    best: list[int] = []
    for start in active:
        if start in seen:
            continue
        comp = []
        stack = [start]
        seen.add(start)
        while stack:
            v = stack.pop()
            comp.append(v)
            for w in adj[v]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        if len(comp) > len(best):
            best = comp
    if len(best) * len(best) < beta * beta * P.n:
        return None
    return sorted(best)


def _lines_connected(cover: LineCover, pts_a: list[int], pts_b: list[int]) -> bool:
    """Two cover lines are connected when some cross pair realises its
    distance across the lines (a 'vertical' pair for horizontal covers)."""
    P = cover.points
    for i in pts_a:
        for j in pts_b:
            dx = abs(P[i].x - P[j].x)
            dy = abs(P[i].y - P[j].y)
            across = dy if cover.orientation == "horizontal" else dx
            along = dx if cover.orientation == "horizontal" else dy
            if across >= along:
                return True
    return False


def intercept_partition(
    cover: LineCover,
    gamma: Fraction = Fraction(1, 4),
    beta: Fraction = Fraction(1, 4),
    theta: Fraction = Fraction(1, 4),
    d_max: int = 3,
    size_budget: Optional[int] = None,
) -> InterceptPartition:
    """Partition the cover lines into parts with GAP-structured intercepts.

    Repeats until fewer than theta * sqrt(n) lines remain: prefer the
    heavy-point extraction, else the popularity-component extraction; a
    round that cannot produce a part of size >= beta * sqrt(n) stalls.
    """
    for name, v in (("gamma", gamma), ("beta", beta), ("theta", theta)):
        if not 0 < v < 1:
            raise PreconditionViolated(f"{name} must be in (0, 1)")
    n = cover.points.n
    active = list(range(len(cover.intercepts)))
    parts: list[InterceptPart] = []
    while len(active) * len(active) >= theta * theta * n:
        lines = _heavy_point_part(cover, active, gamma, beta)
        via = "heavy-point"
        if lines is None:
            lines = _popularity_part(cover, active, beta)
            via = "popularity-component"
        if lines is None:
            raise StallDetected(
                f"no extraction found a part of size >= beta*sqrt(n) among "
                f"{len(active)} lines (gamma={gamma}, beta={beta})"
            )
        intercepts = [cover.intercepts[li] for li in lines]
        budget = size_budget
        if budget is None:
            budget = max(2 * len(intercepts), 4 * _isqrt_ceil(n))
        fitted = gap_fit(intercepts, d_max=d_max, size_budget=budget)
        if fitted is None:
            raise StallDetected(
                f"part intercepts admit no GAP within budget {budget}"
            )
        parts.append(InterceptPart(line_indices=lines, gap=fitted, via=via))
        active = [li for li in active if li not in set(lines)]
    return InterceptPartition(
        parts=parts,
        leftover_lines=active,
        thresholds={"gamma": gamma, "beta": beta, "theta": theta},
    )


# ---------------------------------------------------------------------------
# Full pipeline


@dataclass
class StructureReport:
    cover: LineCover
    rich_cover: LineCover
    progressions: list[GAP]
    line_assignments: dict[int, LineAssignment]
    chosen_progression: int
    survivors: list[int]  # point indices kept by the translation restriction
    discarded: list[int]  # ledger: every point not surviving
    partition: InterceptPartition
    thresholds: dict[str, Fraction]

    @property
    def survivor_fraction(self) -> Fraction:
        return Fraction(len(self.survivors), self.cover.points.n)


def corollary_pipeline(
    P: PointSet,
    rho: Fraction = Fraction(1, 4),
    theta: Fraction = Fraction(1, 4),
    gamma: Fraction = Fraction(1, 4),
    beta: Fraction = Fraction(1, 4),
) -> StructureReport:
    """Cover -> rich lines -> saved progressions -> pigeonhole the most
    popular progression -> per-line translation restriction -> intercept
    partition of the surviving cover."""
    cover = line_cover(P)
    rich = rich_lines(cover, rho)
    gaps, assignments = saved_line_progressions(rich, theta=theta)
    counts = [0] * len(gaps)
    for la in assignments.values():
        counts[la.progression_index] += 1
    chosen = max(range(len(gaps)), key=lambda j: (counts[j], -j))

    elems = gaps[chosen].elements()
    survivors: list[int] = []
    discarded = list(rich.discarded)
    surviving_assignment: dict[int, int] = {}
    kept_lines: list[int] = []
    for li in range(len(rich.intercepts)):
        la = assignments.get(li)
        if la is None or la.progression_index != chosen:
            discarded.extend(rich.line_points(li))
            continue
        kept_lines.append(li)
        for i in rich.line_points(li):
            coord = (
                rich.points[i].x
                if rich.orientation == "horizontal"
                else rich.points[i].y
            )
            if coord - la.translation in elems:
                survivors.append(i)
            else:
                discarded.append(i)
    if len(survivors) + len(discarded) != P.n:
        raise ContractViolation("pipeline point accounting failed")

    remap = {old: new for new, old in enumerate(kept_lines)}
    restricted = LineCover(
        orientation=rich.orientation,
        intercepts=[rich.intercepts[li] for li in kept_lines],
        assignment={
            i: remap[rich.assignment[i]] for i in survivors
        },
        points=rich.points,
        rich_flags=[True] * len(kept_lines),
        discarded=sorted(discarded),
    )
    partition = intercept_partition(restricted, gamma=gamma, beta=beta, theta=theta)
    return StructureReport(
        cover=cover,
        rich_cover=rich,
        progressions=gaps,
        line_assignments=assignments,
        chosen_progression=chosen,
        survivors=sorted(survivors),
        discarded=sorted(set(discarded)),
        partition=partition,
        thresholds={"rho": rho, "theta": theta, "gamma": gamma, "beta": beta},
    )
