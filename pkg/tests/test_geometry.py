from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from lplab.errors import InvalidInput, InvalidParameter
from lplab.geometry import (
    EQUAL,
    GREATER,
    LINF,
    L1,
    PNorm,
    PointSet,
    compare_distances,
    l1_to_linf_transform,
    lp_distance_key,
    point,
    point_set,
)

rationals = st.fractions(
    min_value=-50, max_value=50, max_denominator=40
)


def pt(x, y):
    return point(F(x), F(y))


class TestDistanceKey:
    def test_345_squared(self):
        assert lp_distance_key(pt(0, 0), pt(3, 4), PNorm(2)).key == 25

    def test_cube_sum(self):
        assert lp_distance_key(pt(0, 0), pt(1, 1), PNorm(3)).key == 2

    def test_linf_max(self):
        assert lp_distance_key(pt(0, 0), pt(3, 4), LINF).key == 4

    def test_key_nonnegative_zero_iff_equal(self):
        assert lp_distance_key(pt(2, 3), pt(2, 3), PNorm(5)).key == 0
        assert lp_distance_key(pt(2, 3), pt(2, F(7, 2)), LINF).key > 0

    @given(rationals, rationals, rationals, rationals, st.integers(1, 6))
    @settings(max_examples=60, deadline=None)
    def test_symmetry(self, ax, ay, bx, by, p):
        u, v = point(ax, ay), point(bx, by)
        for m in (PNorm(p), LINF):
            assert lp_distance_key(u, v, m) == lp_distance_key(v, u, m)


class TestCompareDistances:
    def test_coordinate_symmetry_p3(self):
        a = (pt(0, 0), pt(1, 0))
        b = (pt(0, 0), pt(0, 1))
        assert compare_distances(a, b, PNorm(3)) == EQUAL

    def test_diagonal_longer_p4(self):
        a = (pt(0, 0), pt(1, 1))
        b = (pt(0, 0), pt(1, 0))
        assert compare_distances(a, b, PNorm(4)) == GREATER

    def test_345_equal_p2(self):
        a = (pt(0, 0), pt(3, 4))
        b = (pt(0, 0), pt(5, 0))
        assert compare_distances(a, b, PNorm(2)) == EQUAL


class TestTransform:
    def test_single_pair(self):
        P = point_set([(0, 0), (1, 2)])
        T = l1_to_linf_transform(P)
        assert list(T) == [pt(0, 0), pt(-1, 3)]
        assert lp_distance_key(P[0], P[1], L1).key == 3
        assert lp_distance_key(T[0], T[1], LINF).key == 3

    def test_origin_fixed(self):
        P = point_set([(0, 0)])
        assert list(l1_to_linf_transform(P)) == [pt(0, 0)]

    def test_three_point_multiset(self):
        P = point_set([(1, 1), (2, 3), (4, 0)])
        T = l1_to_linf_transform(P)
        src = sorted(
            lp_distance_key(P[i], P[j], L1).key
            for i in range(3)
            for j in range(i + 1, 3)
        )
        img = sorted(
            lp_distance_key(T[i], T[j], LINF).key
            for i in range(3)
            for j in range(i + 1, 3)
        )
        assert src == img

    @given(st.lists(st.tuples(rationals, rationals), min_size=2, max_size=8, unique=True))
    @settings(max_examples=60, deadline=None)
    def test_isometry_pairwise(self, coords):
        P = point_set(coords)
        T = l1_to_linf_transform(P)
        for i in range(P.n):
            for j in range(i + 1, P.n):
                assert (
                    lp_distance_key(P[i], P[j], L1).key
                    == lp_distance_key(T[i], T[j], LINF).key
                )


class TestPointSet:
    def test_duplicate_rejected(self):
        with pytest.raises(InvalidInput):
            point_set([(0, 0), (0, 0)])

    def test_empty_rejected(self):
        with pytest.raises(InvalidInput):
            PointSet([])

    def test_bad_p(self):
        with pytest.raises(InvalidParameter):
            PNorm(0)
        with pytest.raises(InvalidParameter):
            PNorm(-3)

    def test_parse(self):
        assert PNorm.parse("inf").is_inf
        assert PNorm.parse("p:3").p == 3
        assert PNorm.parse("2").p == 2
