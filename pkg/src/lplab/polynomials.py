"""Exact polynomial arithmetic over the rationals.

Univariate polynomials are dense coefficient lists (low degree first);
bivariate ones are sparse {(i, j): coeff} maps.  Everything any sign
decision rests on — evaluation, Sturm sequences, resultants, interval
ranges — is computed in Fraction arithmetic, so signs are exact.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .errors import ContractViolation

Q0 = Fraction(0)
Q1 = Fraction(1)


# ---------------------------------------------------------------------------
# Univariate


class Poly1:
    """Univariate polynomial, dense Fraction coefficients, c[i] * x^i."""

    __slots__ = ("c",)

    def __init__(self, coeffs: Sequence[Fraction | int]):
        c = [Fraction(v) for v in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.c = c

    @property
    def degree(self) -> int:
        return len(self.c) - 1  # -1 for the zero polynomial

    def is_zero(self) -> bool:
        return not self.c

    def __eq__(self, other) -> bool:
        return isinstance(other, Poly1) and self.c == other.c

    def __repr__(self) -> str:
        return f"Poly1({self.c})"

    def __add__(self, other: "Poly1") -> "Poly1":
        n = max(len(self.c), len(other.c))
        return Poly1(
            [
                (self.c[i] if i < len(self.c) else Q0)
                + (other.c[i] if i < len(other.c) else Q0)
                for i in range(n)
            ]
        )

    def __sub__(self, other: "Poly1") -> "Poly1":
        n = max(len(self.c), len(other.c))
        return Poly1(
            [
                (self.c[i] if i < len(self.c) else Q0)
                - (other.c[i] if i < len(other.c) else Q0)
                for i in range(n)
            ]
        )

    def __neg__(self) -> "Poly1":
        return Poly1([-v for v in self.c])

    def __mul__(self, other: "Poly1") -> "Poly1":
        if self.is_zero() or other.is_zero():
            return Poly1([])
        out = [Q0] * (len(self.c) + len(other.c) - 1)
        for i, a in enumerate(self.c):
            if a == 0:
                continue
            for j, b in enumerate(other.c):
                out[i + j] += a * b
        return Poly1(out)

    def scale(self, k: Fraction) -> "Poly1":
        return Poly1([k * v for v in self.c])

    def eval(self, x: Fraction) -> Fraction:
        acc = Q0
        for v in reversed(self.c):
            acc = acc * x + v
        return acc

    def derivative(self) -> "Poly1":
        return Poly1([i * v for i, v in enumerate(self.c)][1:])

    def divmod(self, other: "Poly1") -> tuple["Poly1", "Poly1"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.c)
        den = other.c
        dd = len(den) - 1
        lead = den[-1]
        quo = [Q0] * max(len(rem) - dd, 0)
        for i in range(len(rem) - 1, dd - 1, -1):
            f = rem[i] / lead
            if f == 0:
                continue
            quo[i - dd] = f
            for j, b in enumerate(den):
                rem[i - dd + j] -= f * b
        return Poly1(quo), Poly1(rem)

    def divexact(self, other: "Poly1") -> "Poly1":
        q, r = self.divmod(other)
        if not r.is_zero():
            raise ContractViolation("polynomial division expected to be exact")
        return q

    def range_on(self, lo: Fraction, hi: Fraction) -> tuple[Fraction, Fraction]:
        """Interval enclosure of the values on [lo, hi] (Horner over intervals)."""
        acc_lo, acc_hi = Q0, Q0
        for v in reversed(self.c):
            acc_lo, acc_hi = iv_mul(acc_lo, acc_hi, lo, hi)
            acc_lo += v
            acc_hi += v
        return acc_lo, acc_hi

    def primitive(self) -> "Poly1":
        """Integer-content-free rescaling (same roots, small coefficients)."""
        if not self.c:
            return self
        from math import gcd, lcm

        den = 1
        for v in self.c:
            den = lcm(den, v.denominator)
        ints = [int(v * den) for v in self.c]
        g = 0
        for v in ints:
            g = gcd(g, v)
        if g == 0:
            return self
        return Poly1([Fraction(v // g) for v in ints])


def poly1_from_roots_shift(a: Fraction, power: int, sign: int = 1) -> Poly1:
    """sign * (x - a)^power expanded exactly."""
    out = Poly1([1])
    base = Poly1([-a, 1])
    for _ in range(power):
        out = out * base
    return out.scale(Fraction(sign))


def _pseudo_rem_signed(f: Poly1, g: Poly1) -> Poly1:
    """A positive rational multiple of f mod g, via pseudo-division.

    Multiplying f by lc(g) before each reduction step keeps all arithmetic
    in (near-)integers, avoiding the coefficient blowup of the rational
    Euclidean algorithm; the accumulated multiplier's sign is corrected so
    the result is a positive multiple of the true remainder.
    """
    lc = g.c[-1]
    r = list(f.c)
    dg = g.degree
    steps = 0
    while len(r) - 1 >= dg and any(v != 0 for v in r):
        while r and r[-1] == 0:
            r.pop()
        if len(r) - 1 < dg:
            break
        lead = r[-1]
        shift = len(r) - 1 - dg
        r = [v * lc for v in r]
        for i, gv in enumerate(g.c):
            r[shift + i] -= lead * gv
        steps += 1
        while r and r[-1] == 0:
            r.pop()
    rem = Poly1(r)
    if lc < 0 and steps % 2 == 1:
        rem = -rem
    return rem


def sturm_sequence(f: Poly1) -> list[Poly1]:
    """Sturm chain with primitive pseudo-remainders (signs preserved)."""
    seq = [f.primitive(), f.derivative().primitive()]
    while not seq[-1].is_zero() and seq[-1].degree > 0:
        r = _pseudo_rem_signed(seq[-2], seq[-1])
        if r.is_zero():
            break
        seq.append((-r).primitive())
    if seq[-1].is_zero():
        seq.pop()
    return seq


def _sign_variations(values: Iterable[Fraction]) -> int:
    signs = [1 if v > 0 else -1 for v in values if v != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def count_distinct_roots(f: Poly1, a: Fraction, b: Fraction, seq=None) -> int:
    """Number of distinct real roots of f in (a, b]; needs f(a) != 0."""
    if seq is None:
        seq = sturm_sequence(f)
    va = _sign_variations(s.eval(a) for s in seq)
    vb = _sign_variations(s.eval(b) for s in seq)
    return va - vb


def cauchy_root_bound(f: Poly1) -> Fraction:
    """All real roots of f lie in [-B, B]."""
    if f.degree < 1:
        return Q1
    lead = abs(f.c[-1])
    return Q1 + max(abs(v) for v in f.c[:-1]) / lead


def square_free_part(f: Poly1) -> Poly1:
    if f.degree < 1:
        return f
    g = poly_gcd(f, f.derivative())
    if g.degree < 1:
        return f
    return f.divexact(g)


def poly_gcd(a: Poly1, b: Poly1) -> Poly1:
    """Monic gcd via a primitive pseudo-remainder sequence."""
    a, b = a.primitive(), b.primitive()
    while not b.is_zero():
        r = _pseudo_rem_signed(a, b).primitive()
        a, b = b, r
    if a.is_zero():
        return a
    return a.scale(1 / a.c[-1])


def isolate_real_roots(
    f: Poly1,
    lo: Fraction | None = None,
    hi: Fraction | None = None,
) -> list[tuple[Fraction, Fraction]]:
    """Disjoint intervals isolating the distinct real roots in (lo, hi].

    The window is half-open on the left: a root exactly at `lo` is not
    reported.  A root exactly at `hi` comes back as the degenerate pair
    (hi, hi); every other interval (x0, x1) has g(x0), g(x1) nonzero with a
    sign change across it.  Bounds default to the Cauchy bound.
    """
    if f.is_zero():
        raise ContractViolation("cannot isolate roots of the zero polynomial")
    g = square_free_part(f).primitive()
    if g.degree < 1:
        return []
    bound = cauchy_root_bound(g)
    a = lo if lo is not None else -bound
    b = hi if hi is not None else bound
    if a >= b:
        return []
    out: list[tuple[Fraction, Fraction]] = []
    if g.eval(a) == 0:
        g = g.divexact(Poly1([-a, Fraction(1)]))
    if g.degree >= 1 and g.eval(b) == 0:
        out.append((b, b))
        g = g.divexact(Poly1([-b, Fraction(1)]))
    if g.degree < 1:
        return sorted(out)
    seq = sturm_sequence(g)
    stack = [(a, b, count_distinct_roots(g, a, b, seq))]
    while stack:
        x0, x1, cnt = stack.pop()
        if cnt == 0:
            continue
        if cnt == 1:
            out.append((x0, x1))
            continue
        # Split at a non-root point (nudge off any root hit by the midpoint).
        shift = Fraction(0)
        while True:
            mid = (x0 + x1) / 2 + shift
            if x0 < mid < x1 and g.eval(mid) != 0:
                break
            shift = (x1 - x0) / 7 if shift == 0 else shift / 3
        left = count_distinct_roots(g, x0, mid, seq)
        stack.append((x0, mid, left))
        stack.append((mid, x1, cnt - left))
    out.sort()
    return out


def refine_root(
    f: Poly1, lo: Fraction, hi: Fraction, width: Fraction
) -> tuple[Fraction, Fraction]:
    """Shrink an isolating interval with a sign change to the given width."""
    if lo == hi:
        return lo, hi
    flo = f.eval(lo)
    if flo == 0:
        return lo, lo
    if f.eval(hi) == 0:
        return hi, hi
    while hi - lo > width:
        mid = (lo + hi) / 2
        fm = f.eval(mid)
        if fm == 0:
            return mid, mid
        if (fm > 0) == (flo > 0):
            lo, flo = mid, fm
        else:
            hi = mid
    return lo, hi


# ---------------------------------------------------------------------------
# Intervals


def iv_mul(alo, ahi, blo, bhi):
    cands = (alo * blo, alo * bhi, ahi * blo, ahi * bhi)
    return min(cands), max(cands)


def iv_pow(lo, hi, k: int):
    if k == 0:
        return Q1, Q1
    if k % 2 == 1 or lo >= 0:
        return lo**k, hi**k
    if hi <= 0:
        return hi**k, lo**k
    return Q0, max(lo**k, hi**k)


# ---------------------------------------------------------------------------
# Bivariate


class Poly2:
    """Sparse bivariate polynomial {(i, j): coeff} meaning x^i y^j."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict[tuple[int, int], Fraction] | None = None):
        self.terms = {k: Fraction(v) for k, v in (terms or {}).items() if v != 0}

    @staticmethod
    def const(v) -> "Poly2":
        return Poly2({(0, 0): Fraction(v)})

    @staticmethod
    def from_x(f: Poly1) -> "Poly2":
        return Poly2({(i, 0): v for i, v in enumerate(f.c)})

    @staticmethod
    def from_y(f: Poly1) -> "Poly2":
        return Poly2({(0, j): v for j, v in enumerate(f.c)})

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def total_degree(self) -> int:
        return max((i + j for i, j in self.terms), default=-1)

    def degree_in(self, var: int) -> int:
        return max((k[var] for k in self.terms), default=-1)

    def __eq__(self, other) -> bool:
        return isinstance(other, Poly2) and self.terms == other.terms

    def __add__(self, other: "Poly2") -> "Poly2":
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, Q0) + v
        return Poly2(out)

    def __sub__(self, other: "Poly2") -> "Poly2":
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, Q0) - v
        return Poly2(out)

    def __neg__(self) -> "Poly2":
        return Poly2({k: -v for k, v in self.terms.items()})

    def __mul__(self, other: "Poly2") -> "Poly2":
        out: dict[tuple[int, int], Fraction] = {}
        for (i1, j1), a in self.terms.items():
            for (i2, j2), b in other.terms.items():
                k = (i1 + i2, j1 + j2)
                out[k] = out.get(k, Q0) + a * b
        return Poly2(out)

    def scale(self, k) -> "Poly2":
        k = Fraction(k)
        return Poly2({key: k * v for key, v in self.terms.items()})

    def eval(self, x: Fraction, y: Fraction) -> Fraction:
        return sum((v * x**i * y**j for (i, j), v in self.terms.items()), Q0)

    def contains_point(self, pt) -> bool:
        return self.eval(pt.x, pt.y) == 0

    def partial_x(self) -> "Poly2":
        return Poly2({(i - 1, j): i * v for (i, j), v in self.terms.items() if i > 0})

    def partial_y(self) -> "Poly2":
        return Poly2({(i, j - 1): j * v for (i, j), v in self.terms.items() if j > 0})

    def as_poly_in_y(self) -> list[Poly1]:
        """Coefficients of y^j as univariate polynomials in x."""
        dy = self.degree_in(1)
        rows: list[dict[int, Fraction]] = [dict() for _ in range(dy + 1)]
        for (i, j), v in self.terms.items():
            rows[j][i] = v
        out = []
        for row in rows:
            deg = max(row, default=-1)
            out.append(Poly1([row.get(i, Q0) for i in range(deg + 1)]))
        return out

    def as_poly_in_x(self) -> list[Poly1]:
        return self.swap_vars().as_poly_in_y()

    def swap_vars(self) -> "Poly2":
        return Poly2({(j, i): v for (i, j), v in self.terms.items()})

    def substitute_y_linear(self, m: Fraction, c: Fraction) -> Poly1:
        """Univariate image of the substitution y = m*x + c."""
        line = Poly1([c, m])
        acc = Poly1([])
        for j, coeff_poly in enumerate(self.as_poly_in_y()):
            term = coeff_poly
            for _ in range(j):
                term = term * line
            acc = acc + term
        return acc

    def normalized(self) -> "Poly2":
        """Scale so the lexicographically largest monomial has coefficient 1."""
        if not self.terms:
            return self
        lead = self.terms[max(self.terms)]
        return self.scale(1 / lead)

    def sorted_terms(self) -> list[tuple[int, int, Fraction]]:
        return [(i, j, self.terms[(i, j)]) for i, j in sorted(self.terms)]

    def __repr__(self) -> str:
        bits = []
        for i, j, v in self.sorted_terms():
            mono = "".join(
                [f"x^{i}" if i > 1 else "x" * min(i, 1), f"y^{j}" if j > 1 else "y" * min(j, 1)]
            )
            bits.append(f"{v}{mono}" if mono else f"{v}")
        return " + ".join(bits) if bits else "0"


def _bareiss_det(mat: list[list[Poly1]]) -> Poly1:
    """Determinant of a Poly1 matrix by fraction-free elimination."""
    n = len(mat)
    m = [row[:] for row in mat]
    sign = 1
    prev = Poly1([1])
    for k in range(n - 1):
        if m[k][k].is_zero():
            pivot = next((r for r in range(k + 1, n) if not m[r][k].is_zero()), None)
            if pivot is None:
                return Poly1([])
            m[k], m[pivot] = m[pivot], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = m[i][j] * m[k][k] - m[i][k] * m[k][j]
                m[i][j] = num.divexact(prev)
            m[i][k] = Poly1([])
        prev = m[k][k]
    det = m[n - 1][n - 1]
    return det if sign == 1 else -det


def resultant_wrt_y(f: Poly2, g: Poly2) -> Poly1:
    """Res_y(f, g) as a polynomial in x via the Sylvester determinant."""
    fc = f.as_poly_in_y()
    gc = g.as_poly_in_y()
    df, dg = len(fc) - 1, len(gc) - 1
    if df < 0 or dg < 0:
        return Poly1([])
    if df == 0:
        out = Poly1([1])
        for _ in range(dg):
            out = out * fc[0]
        return out
    if dg == 0:
        out = Poly1([1])
        for _ in range(df):
            out = out * gc[0]
        return out
    size = df + dg
    zero = Poly1([])
    mat = [[zero] * size for _ in range(size)]
    for r in range(dg):
        for i, coeff in enumerate(reversed(fc)):
            mat[r][r + i] = coeff
    for r in range(df):
        for i, coeff in enumerate(reversed(gc)):
            mat[dg + r][r + i] = coeff
    return _bareiss_det(mat)


def resultant_wrt_x(f: Poly2, g: Poly2) -> Poly1:
    return resultant_wrt_y(f.swap_vars(), g.swap_vars())
