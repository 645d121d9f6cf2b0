from fractions import Fraction as F

import pytest
from hypothesis import assume, given, strategies as st

from conftest import positive_rationals, rationals
from shapelift.exactgeom import (
    ConvexPolygon,
    DomainError,
    Interval,
    IntervalSet,
    Point,
    PolyPath,
    Segment,
    Trend,
    affine_sign_set,
    format_rational,
    ge,
    linear_extrema_on_path,
    lt,
    parse_rational,
    polygon_contains,
    region_param_set,
    scaling_limit,
    segment_ratio_trend,
)

points = st.builds(Point, rationals(0, 10), rationals(0, 10))


def P(r, s):
    return Point.of(F(r), F(s))


def test_parse_and_format_round_trip():
    assert parse_rational("3/6") == F(1, 2)
    assert parse_rational(" -7 ") == -7
    assert format_rational(F(4, 2)) == "2"
    assert format_rational(F(-3, 9)) == "-1/3"
    for bad in ("", "1.5", "1/0", "a/b"):
        with pytest.raises(ValueError):
            parse_rational(bad)


@given(rationals())
def test_format_parse_inverse(x):
    assert parse_rational(format_rational(x)) == x


def test_ratio_trend_examples():
    assert segment_ratio_trend(Segment(P(7, 8), P("5/2", 16))) is Trend.NON_INCREASING
    assert segment_ratio_trend(Segment(P(1, 1), P(2, 2))) is Trend.CONSTANT
    assert segment_ratio_trend(Segment(P(1, 2), P(2, 2))) is Trend.NON_DECREASING
    with pytest.raises(DomainError):
        segment_ratio_trend(Segment(P(1, 0), P(2, 2)))


@given(points, points)
def test_ratio_trend_matches_sampling(p0, p1):
    assume(p0 != p1 and p0.s > 0 and p1.s > 0)
    trend = segment_ratio_trend(Segment(p0, p1))
    ratios = []
    for i in range(101):
        u = F(i, 100)
        ratios.append((p0.r + (p1.r - p0.r) * u) / (p0.s + (p1.s - p0.s) * u))
    steps = [b - a for a, b in zip(ratios, ratios[1:])]
    if trend is Trend.CONSTANT:
        assert all(d == 0 for d in steps)
    elif trend is Trend.NON_INCREASING:
        assert all(d < 0 for d in steps)
    else:
        assert all(d > 0 for d in steps)


def test_linear_extrema_examples():
    assert linear_extrema_on_path(2, 1, PolyPath([P("9/10", "13/10"), P("9/10", "7/2")])) == (F(31, 10), F(53, 10))
    assert linear_extrema_on_path(0, 0, PolyPath([P(1, 2), P(3, 4)])) == (0, 0)
    assert linear_extrema_on_path(1, 1, PolyPath([P(7, 8), P("5/2", 16), P("1/2", 22)])) == (15, F(45, 2))


def test_polygon_contains_examples():
    tri = ConvexPolygon([(0, 0), (3, 0), (0, 3)])
    assert polygon_contains(tri, P("1/2", "3/2"), strict=True)
    assert polygon_contains(tri, tri, strict=False)
    q11 = ConvexPolygon([(0, 0), (2, 0), (1, 2), (0, 2)])
    assert not polygon_contains(tri, q11, strict=True)
    assert polygon_contains(tri, Segment(P(0, 1), P(1, 1)), strict=True)


def test_polygon_rejects_bad_input():
    with pytest.raises(DomainError):
        ConvexPolygon([(0, 0), (1, 1), (2, 2)])
    with pytest.raises(DomainError):
        ConvexPolygon([(0, 0), (0, 1), (1, 0)])  # clockwise
    with pytest.raises(DomainError):
        ConvexPolygon([(0, 0), (1, 0), (1, 0), (0, 1)])


def _ccw_triangle(a, b, c):
    area2 = (b.r - a.r) * (c.s - a.s) - (b.s - a.s) * (c.r - a.r)
    return [a, b, c] if area2 > 0 else [a, c, b]


triangles = st.tuples(points, points, points).filter(
    lambda t: (t[1].r - t[0].r) * (t[2].s - t[0].s) != (t[1].s - t[0].s) * (t[2].r - t[0].r))


@given(triangles, positive_rationals(10))
def test_polygon_contains_iff_vertices(tri, size):
    outer = ConvexPolygon([(0, 0), (size, 0), (size, size), (0, size)])
    inner = ConvexPolygon(_ccw_triangle(*tri))
    for strict in (False, True):
        assert polygon_contains(outer, inner, strict) == all(polygon_contains(outer, v, strict) for v in inner.vertices)


@given(rationals(), rationals(), rationals(), points, points, st.booleans())
def test_affine_sign_set_matches_dense_sampling(al, be, ga, p0, p1, strict):
    assume(p0 != p1)
    h = ge(al, be, -ga) if not strict else lt(-al, -be, ga)
    got = region_param_set(((h,),), PolyPath([p0, p1]))
    for i in range(201):
        t = F(i, 200)
        pt = Point(p0.r + (p1.r - p0.r) * t, p0.s + (p1.s - p0.s) * t)
        assert got.contains(t) == h.holds(pt)


def test_affine_sign_set_root_handling():
    assert affine_sign_set(F(-1), F(1), F(0), strict=True) == IntervalSet([Interval(F(1, 2), F(1), False, True)])
    assert affine_sign_set(F(-1), F(1), F(0), strict=False) == IntervalSet([Interval(F(1, 2), F(1))])
    assert affine_sign_set(F(0), F(0), F(3), strict=True) == IntervalSet()
    assert affine_sign_set(F(0), F(0), F(3), strict=False) == IntervalSet.closed(3, 4)


intervals = st.builds(
    lambda a, b, lc, hc: Interval(min(a, b), max(a, b), lc or a == b, hc or a == b),
    rationals(0, 4, 4), rationals(0, 4, 4), st.booleans(), st.booleans())


@given(st.lists(intervals, max_size=4), st.lists(intervals, max_size=4))
def test_interval_set_algebra_is_pointwise(xs, ys):
    A, B = IntervalSet(xs), IntervalSet(ys)
    union, inter, comp = A | B, A & B, A.complement(F(0), F(4))
    for i in range(0, 65):
        t = F(i, 16)
        a = any(iv.contains(t) for iv in xs)
        b = any(iv.contains(t) for iv in ys)
        assert union.contains(t) == (a or b)
        assert inter.contains(t) == (a and b)
        assert comp.contains(t) == (not a)
    picked = A.pick()
    assert (picked is None) == (not xs) or A.contains(picked)


def test_interval_set_merges_touching_pieces():
    s = IntervalSet([Interval(F(0), F(1), True, False), Interval(F(1), F(2))])
    assert len(s.intervals) == 1 and s.covers(F(0), F(2))
    gap = IntervalSet([Interval(F(0), F(1), True, False), Interval(F(1), F(2), False, True)])
    assert len(gap.intervals) == 2 and not gap.covers(F(0), F(2))


def test_path_parameterization():
    path = PolyPath([P(0, 0), P(2, 0), P(2, 2)])
    assert path.T == 2
    assert path.point_at(F(1, 2)) == P(1, 0)
    assert path.point_at(F(3, 2)) == P(2, 1)
    sub = path.subpath(F(1, 2), F(3, 2))
    assert sub.vertices == (P(1, 0), P(2, 0), P(2, 1))
    with pytest.raises(DomainError):
        PolyPath([P(1, 1), P(1, 1)])
    with pytest.raises(DomainError):
        path.point_at(F(3))


def test_scaling_limit_of_unit_quadrilateral():
    q11 = [P(0, 0), P(2, 0), P(1, 2), P(0, 2)]
    tri = ConvexPolygon([(0, 0), (3, 0), (0, 3)]).region(strict=True)
    assert scaling_limit(tri, q11) == 1
    box = ConvexPolygon([(0, 0), (1, 0), (1, 2), (0, 2)]).region(strict=True)
    assert scaling_limit(box, q11) == F(1, 2)
