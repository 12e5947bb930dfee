from fractions import Fraction as F

import pytest

from lplab.census import distance_census
from lplab.errors import CapacityExceeded, InvalidParameter
from lplab.generators import grid, random_rational, row_construction, row_offset
from lplab.geometry import LINF, lp_distance_key


def brute_distinct_linf(P):
    keys = set()
    pts = list(P)
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            keys.add(lp_distance_key(pts[i], pts[j], LINF).key)
    return keys


class TestGrid:
    def test_k3(self):
        P = grid(3)
        assert P.n == 9
        keys = brute_distinct_linf(P)
        assert keys == {F(1), F(2)}
        assert len(keys) == 2  # = sqrt(9) - 1

    def test_k2_unit_square(self):
        assert brute_distinct_linf(grid(2)) == {F(1)}

    def test_k10_census(self):
        c = distance_census(grid(10), LINF)
        assert c.distinct_count == 9
        assert set(c.histogram) == {F(d) for d in range(1, 10)}

    def test_invalid(self):
        with pytest.raises(InvalidParameter):
            grid(1)


class TestRowConstruction:
    def test_k2(self):
        P = row_construction(2)
        assert P.n == 4
        assert len({p.x for p in P}) == 4  # all x distinct
        assert len(brute_distinct_linf(P)) == 2  # 2*sqrt(4) - 2

    def test_k3_values(self):
        P = row_construction(3)
        keys = brute_distinct_linf(P)
        same_line = {k for k in keys if k < 1}
        cross_line = {k for k in keys if k >= 1}
        assert same_line == {F(1, 90), F(2, 90)}
        assert cross_line == {F(1), F(2)}

    @pytest.mark.parametrize("k", [2, 3, 5, 8, 13])
    def test_x_coordinates_distinct(self, k):
        P = row_construction(k)
        xs = [p.x for p in P]
        assert len(set(xs)) == len(xs)

    @pytest.mark.parametrize("k", [2, 4, 7])
    def test_census_2k_minus_2(self, k):
        c = distance_census(row_construction(k), LINF)
        assert c.distinct_count == 2 * k - 2

    def test_cross_line_pairs_vertical(self):
        P = row_construction(4)
        for a in P:
            for b in P:
                if a.y != b.y:
                    assert abs(a.x - b.x) < 1 <= abs(a.y - b.y)

    def test_offsets_small(self):
        n = 16
        for a in range(1, 5):
            assert 0 < row_offset(a, n) < F(1, 2)


class TestRandomRational:
    def test_deterministic(self):
        a = random_rational(5, seed=1)
        b = random_rational(5, seed=1)
        assert a == b

    def test_lattice_capacity(self):
        # unit box at denominator 1 has exactly 4 lattice points
        P = random_rational(2, seed=0, box=(F(0), F(1), F(0), F(1)), denom_bound=1)
        assert P.n == 2
        assert all(p.x.denominator == 1 and p.y.denominator == 1 for p in P)
        with pytest.raises(CapacityExceeded):
            random_rational(5, seed=0, box=(F(0), F(1), F(0), F(1)), denom_bound=1)

    def test_pairwise_distinct_100(self):
        P = random_rational(100, seed=7)
        pts = list(P)
        assert len({(p.x, p.y) for p in pts}) == 100

    def test_denominators_bounded(self):
        P = random_rational(30, seed=3, denom_bound=12)
        for p in P:
            assert p.x.denominator <= 12 and p.y.denominator <= 12
