from fractions import Fraction as F
from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from lplab.census import (
    classify_pairs_linf,
    distance_census,
    incidences,
    _census_bigint,
)
from lplab.errors import InvalidInput, Unsupported
from lplab.generators import grid, random_rational, row_construction
from lplab.geometry import LINF, L1, PNorm, lp_distance_key, point_set
from lplab.pointio import common_denominator_scaling
from lplab.polynomials import Poly2

rationals = st.fractions(min_value=-30, max_value=30, max_denominator=24)


class TestDistanceCensus:
    def test_grid3_linf(self):
        c = distance_census(grid(3), LINF)
        assert c.distinct_count == 2

    def test_rows3_linf(self):
        c = distance_census(row_construction(3), LINF)
        assert c.distinct_count == 4

    def test_collinear_progression(self):
        P = point_set([(i, 0) for i in range(1, 6)])
        c = distance_census(P, PNorm(2))
        assert c.distinct_count == 4
        assert c.t_max == 4

    def test_multiplicity_sum(self):
        P = random_rational(40, seed=2, denom_bound=20)
        c = distance_census(P, PNorm(3))
        assert c.total_pairs == 40 * 39 // 2

    def test_per_point_bounds(self):
        P = random_rational(25, seed=5, denom_bound=9)
        c = distance_census(P, LINF)
        for _, d_u in c.per_point:
            assert d_u <= c.total_pairs
        assert c.t_max == max(d for _, d in c.per_point)

    def test_too_small(self):
        with pytest.raises(InvalidInput):
            distance_census(point_set([(0, 0)]), LINF)

    def test_bigint_path_agrees(self):
        P = random_rational(18, seed=9, denom_bound=13)
        scaled, _ = common_denominator_scaling(P)
        for m in (LINF, PNorm(2), PNorm(3)):
            c = distance_census(P, m)
            hist, per_point = _census_bigint(scaled, m)
            assert sum(hist.values()) == c.total_pairs
            assert len(hist) == c.distinct_count
            assert per_point == c.per_point

    def test_threads_agree(self):
        P = random_rational(60, seed=4, denom_bound=30)
        a = distance_census(P, LINF, threads=1)
        b = distance_census(P, LINF, threads=4)
        assert a.histogram == b.histogram and a.per_point == b.per_point

    @given(st.lists(st.tuples(rationals, rationals), min_size=2, max_size=10, unique=True))
    @settings(max_examples=40, deadline=None)
    def test_translation_and_swap_invariance(self, coords):
        P = point_set(coords)
        for m in (LINF, L1, PNorm(3)):
            base = distance_census(P, m)
            moved = distance_census(P.translate(F(7, 3), F(-2, 5)), m)
            swapped = distance_census(P.swap_axes(), m)
            assert base.histogram == moved.histogram == swapped.histogram

    @given(st.lists(st.tuples(rationals, rationals), min_size=2, max_size=10, unique=True))
    @settings(max_examples=40, deadline=None)
    def test_reflection_invariance(self, coords):
        P = point_set(coords)
        R = point_set([(-x, y) for x, y in coords])
        for m in (LINF, PNorm(2)):
            assert distance_census(P, m).histogram == distance_census(R, m).histogram

    def test_l1_linf_equivalence(self):
        from lplab.geometry import l1_to_linf_transform

        P = random_rational(50, seed=12, denom_bound=17)
        c1 = distance_census(P, L1)
        c2 = distance_census(l1_to_linf_transform(P), LINF)
        assert c1.histogram == c2.histogram
        assert c1.distinct_count == c2.distinct_count


class TestClassifyPairs:
    def test_horizontal_only(self):
        pc = classify_pairs_linf(point_set([(0, 0), (2, 1)]))
        assert (pc.horizontal_count, pc.vertical_count, pc.both_count) == (1, 0, 0)

    def test_tie_is_both(self):
        pc = classify_pairs_linf(point_set([(0, 0), (1, 1)]))
        assert (pc.horizontal_count, pc.vertical_count, pc.both_count) == (1, 1, 1)

    def test_grid3_both_count_oracle(self):
        # Independent brute-force oracle over all pairs.
        pts = list(grid(3))
        brute = sum(
            1 for a, b in combinations(pts, 2) if abs(a.x - b.x) == abs(a.y - b.y)
        )
        pc = classify_pairs_linf(grid(3))
        assert pc.both_count == brute == 10

    @given(st.lists(st.tuples(rationals, rationals), min_size=2, max_size=12, unique=True))
    @settings(max_examples=40, deadline=None)
    def test_inclusion_exclusion(self, coords):
        P = point_set(coords)
        pc = classify_pairs_linf(P)
        assert pc.total_pairs == P.n * (P.n - 1) // 2
        assert sum(pc.horizontal_degree) == 2 * pc.horizontal_count
        assert sum(pc.vertical_degree) == 2 * pc.vertical_count


class TestIncidences:
    def test_two_vertical_lines(self):
        lines = [
            Poly2({(1, 0): F(1), (0, 0): F(-1)}),  # x - 1
            Poly2({(1, 0): F(1), (0, 0): F(-2)}),  # x - 2
        ]
        assert incidences(grid(3), lines) == 6

    def test_empty_curve_list(self):
        assert incidences(grid(3), []) == 0

    def test_antidiagonal(self):
        curve = Poly2({(1, 0): F(1), (0, 1): F(1), (0, 0): F(-4)})  # x + y - 4
        # oracle: enumerate lattice solutions in {1..3}^2
        brute = sum(1 for x in range(1, 4) for y in range(1, 4) if x + y == 4)
        assert incidences(grid(3), [curve]) == brute == 3

    def test_bisector_curve_payload(self):
        from lplab.bisector import build_bisector

        B = build_bisector(point_set([(0, 0), (0, 2)])[0], point_set([(0, 0), (0, 2)])[1], 3)
        P = point_set([(7, 1), (0, 0), (3, 1)])
        assert incidences(P, [B]) == 2  # (7,1) and (3,1) are on y = 1

    def test_unsupported_payload(self):
        with pytest.raises(Unsupported):
            incidences(grid(2), ["not a curve"])
