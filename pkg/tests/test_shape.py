from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from conftest import positive_rationals
from shapelift.domains import OPEN, Ball, Ellipsoid, Polydisk, moment_contains
from shapelift.exactgeom import DomainError, Point, region_contains
from shapelift.shape import (
    Family,
    ShapeRegion,
    emb_knotted_member,
    knotted_member,
    knotted_region,
    shape_member,
    shape_region,
    unknotted_threshold,
)

P = Point.of
families = st.one_of(
    st.builds(Ball, positive_rationals(8)),
    st.builds(lambda a, k: Ellipsoid(a, a * k), positive_rationals(4), st.integers(2, 5)),
    st.builds(lambda c, e: Polydisk(c, c + e), positive_rationals(4), positive_rationals(4).map(lambda x: x - F(1, 8))),
)
pos = positive_rationals(12, 10)


def test_shape_examples():
    assert shape_member(Ball(F(301, 100)), P(1, 2))
    assert not shape_member(Ball(F(301, 100)), P(2, 3))
    assert shape_member(Ellipsoid(1, 3), P(F(3, 10), 50))


def test_knotted_examples():
    assert knotted_member(Ball(3), P(F(9, 10), F(13, 10)))
    assert knotted_member(Ellipsoid(1, 3), P(F(9, 20), F(3, 2)))
    assert not knotted_member(Ball(3), P(F(1, 2), 1))
    with pytest.raises(DomainError):
        knotted_member(Ball(3), P(2, 1))


def test_emb_knotted_examples():
    assert emb_knotted_member(Polydisk(1, 2), 4, P(F(3, 5), F(3, 2)))
    assert not knotted_member(Polydisk(1, 2), P(F(3, 5), F(3, 2)))
    assert emb_knotted_member(Ball(2), 4, P(F(1, 2), F(6, 5)))
    assert not emb_knotted_member(Ball(2), 4, P(F(1, 4), F(1, 2)))
    with pytest.raises(DomainError):
        emb_knotted_member(Ball(5), 4, P(1, 2))


def test_thresholds():
    assert unknotted_threshold(Family.BALL, 2) == 2
    assert unknotted_threshold("ellipsoid", 3, 2) == F(3, 2)
    assert unknotted_threshold(Family.POLYDISK, 1, 1) == 1
    with pytest.raises(DomainError):
        unknotted_threshold(Family.BALL, 0)


def test_shape_region_requires_integral_ellipsoid():
    with pytest.raises(DomainError):
        ShapeRegion(Ellipsoid(2, 3))
    with pytest.raises(DomainError):
        ShapeRegion(Ellipsoid(1, 1))


@given(families, pos, pos)
def test_knotted_implies_shape_and_open_image(X, r, s):
    if r > s:
        r, s = s, r
    p = Point(r, s)
    if knotted_member(X, p):
        assert shape_member(X, p) and moment_contains(X, p, OPEN)
    assert region_contains(knotted_region(X), p) == knotted_member(X, p)


@given(families, pos, pos)
def test_shape_is_swap_symmetric_and_matches_region(X, r, s):
    assert shape_member(X, Point(r, s)) == shape_member(X, Point(s, r))
    lo, hi = min(r, s), max(r, s)
    assert region_contains(shape_region(X), Point(lo, hi)) == shape_member(X, Point(lo, hi))


@given(positive_rationals(4), st.integers(2, 5), pos, pos)
def test_ellipsoid_shape_outside_strip_is_open_image(a, k, r, s):
    X = Ellipsoid(a, k * a)
    if r > s:
        r, s = s, r
    if r >= a / 2:
        assert shape_member(X, Point(r, s)) == moment_contains(X, Point(r, s), OPEN)


def test_emb_knotted_sees_strictly_more_points():
    cases = [(Ball(2), 4), (Ellipsoid(F(3, 2), 3), 4), (Polydisk(1, 2), 4)]
    for X, x in cases:
        extra = 0
        for i in range(1, 100):
            for j in range(i, i + 75):
                p = P(F(i, 50), F(j, 50))
                e = emb_knotted_member(X, x, p)
                if e and not knotted_member(X, p):
                    extra += 1
        assert extra > 0, X
