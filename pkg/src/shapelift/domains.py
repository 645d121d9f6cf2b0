"""Toric domains in dimension four, described by their moment images.

``Ball(R)`` has image the triangle ``r + s < R``; ``Ellipsoid(a, b)`` the
half-open triangle ``{0 <= r, 0 <= s < b - b r / a}``; ``Polydisk(c, d)`` the
box ``[0, c) x [0, d)``; ``ToricPL`` the region under a strictly decreasing
piecewise-linear profile.  Images are exposed as :data:`Region` values so the
path machinery can intersect them exactly with a path.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .exactgeom import (
    ConvexPolygon,
    DomainError,
    HalfPlane,
    Number,
    Point,
    Region,
    format_rational,
    ge,
    gt,
    q,
    region_contains,
    shoelace_area,
)


@dataclass(frozen=True)
class MomentQuery:
    closure: bool = False
    reduced: bool = False
    positive: bool = False


OPEN = MomentQuery()
OPEN_PLUS = MomentQuery(reduced=True, positive=True)
CLOSED = MomentQuery(closure=True)

QUADRANT = (ge(1, 0, 0), ge(0, 1, 0))
REDUCED = ge(-1, 1, 0)  # s - r >= 0
POSITIVE = (gt(1, 0, 0), gt(0, 1, 0))


def _positive(name: str, x: Number) -> Fraction:
    v = q(x)
    if v <= 0:
        raise DomainError(f"{name} must be positive, got {v}")
    return v


@dataclass(frozen=True)
class Ball:
    R: Fraction

    def __init__(self, R: Number):
        object.__setattr__(self, "R", _positive("R", R))

    def polygon(self) -> ConvexPolygon:
        return ConvexPolygon([(0, 0), (self.R, 0), (0, self.R)])

    def scaled(self, lam: Fraction) -> "Ball":
        return Ball(self.R * lam)

    def params(self) -> dict:
        return {"R": self.R}


@dataclass(frozen=True)
class Ellipsoid:
    a: Fraction
    b: Fraction

    def __init__(self, a: Number, b: Number):
        a, b = _positive("a", a), _positive("b", b)
        if b < a:
            raise DomainError(f"ellipsoid needs a <= b, got a={a}, b={b}")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    @property
    def k(self) -> int | None:
        """``b / a`` when it is a positive integer."""
        ratio = self.b / self.a
        return int(ratio) if ratio.denominator == 1 else None

    def polygon(self) -> ConvexPolygon:
        return ConvexPolygon([(0, 0), (self.a, 0), (0, self.b)])

    def scaled(self, lam: Fraction) -> "Ellipsoid":
        return Ellipsoid(self.a * lam, self.b * lam)

    def params(self) -> dict:
        return {"a": self.a, "b": self.b}


@dataclass(frozen=True)
class Polydisk:
    c: Fraction
    d: Fraction

    def __init__(self, c: Number, d: Number):
        c, d = _positive("c", c), _positive("d", d)
        if d < c:
            raise DomainError(f"polydisk needs c <= d, got c={c}, d={d}")
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "d", d)

    def polygon(self) -> ConvexPolygon:
        return ConvexPolygon([(0, 0), (self.c, 0), (self.c, self.d), (0, self.d)])

    def scaled(self, lam: Fraction) -> "Polydisk":
        return Polydisk(self.c * lam, self.d * lam)

    def params(self) -> dict:
        return {"c": self.c, "d": self.d}


@dataclass(frozen=True)
class ToricPL:
    """Region under the graph through ``(0, s0), ..., (rn, 0)``, strictly decreasing."""

    profile: tuple[Point, ...]

    def __init__(self, profile):
        pts = tuple(p if isinstance(p, Point) else Point.of(*p) for p in profile)
        if len(pts) < 2:
            raise DomainError("profile needs at least two points")
        if pts[0].r != 0 or pts[-1].s != 0:
            raise DomainError("profile must start on the s-axis and end on the r-axis")
        for p0, p1 in zip(pts, pts[1:]):
            if not (p0.r < p1.r and p0.s > p1.s):
                raise DomainError(f"profile not strictly decreasing between {p0} and {p1}")
        object.__setattr__(self, "profile", pts)

    def height(self, r: Fraction) -> Fraction | None:
        """Profile value at ``r``, or None outside ``[0, rn]``."""
        pts = self.profile
        if r < 0 or r > pts[-1].r:
            return None
        for p0, p1 in zip(pts, pts[1:]):
            if r <= p1.r:
                return p0.s + (p1.s - p0.s) * (r - p0.r) / (p1.r - p0.r)
        return pts[-1].s

    def contains_segment(self, u: Point, v: Point) -> bool:
        """Exact test that a segment lies in the open image (quadrant axes allowed)."""
        if not (_pl_open(self, u) and _pl_open(self, v)):
            return False
        lo, hi = sorted((u.r, v.r))
        for p in self.profile[1:-1]:
            if lo < p.r < hi:
                s_at = u.s + (v.s - u.s) * (p.r - u.r) / (v.r - u.r)
                if s_at >= p.s:
                    return False
        return True

    def scaled(self, lam: Fraction) -> "ToricPL":
        return ToricPL([p.scale(lam) for p in self.profile])

    def params(self) -> dict:
        return {"profile": self.profile}


ToricDomain = Union[Ball, Ellipsoid, Polydisk, ToricPL]
CONVEX_FAMILIES = (Ball, Ellipsoid, Polydisk)


def _pl_open(X: ToricPL, p: Point) -> bool:
    if p.r < 0 or p.s < 0:
        return False
    h = X.height(p.r)
    return h is not None and p.s < h


def moment_region(X: ToricDomain, closure: bool = False) -> Region:
    """The moment image as a union of half-plane conjunctions."""
    if isinstance(X, CONVEX_FAMILIES):
        return X.polygon().region(strict=not closure)
    terms = []
    for p0, p1 in zip(X.profile, X.profile[1:]):
        # below the line through p0, p1: (p1 - p0) x (p - p0) <= 0
        dr, ds = p1.r - p0.r, p1.s - p0.s
        under = HalfPlane(ds, -dr, dr * p0.s - ds * p0.r, not closure)
        terms.append((ge(1, 0, p0.r), ge(-1, 0, -p1.r), ge(0, 1, 0), under))
    return tuple(terms)


def reduced_region(X: ToricDomain, query: MomentQuery = OPEN_PLUS) -> Region:
    extra: tuple[HalfPlane, ...] = ()
    if query.reduced:
        extra += (REDUCED,)
    if query.positive:
        extra += POSITIVE
    return tuple(term + extra for term in moment_region(X, query.closure))


def moment_contains(X: ToricDomain, p: Point, query: MomentQuery = OPEN) -> bool:
    if query.reduced and p.r > p.s:
        return False
    if query.positive and (p.r <= 0 or p.s <= 0):
        return False
    return region_contains(moment_region(X, query.closure), p)


def segment_in_image(X: ToricDomain, u: Point, v: Point) -> bool:
    """Whether the closed segment ``uv`` lies in the open moment image."""
    if isinstance(X, ToricPL):
        return X.contains_segment(u, v)
    return moment_contains(X, u) and moment_contains(X, v)


def q_polygon(a: Number, b: Number) -> ConvexPolygon:
    """The quadrilateral ``0 <= y <= a + b, 0 <= x <= 2a - a y / (a + b)``."""
    a, b = q(a), q(b)
    if a <= 0:
        raise DomainError(f"q(a, b) needs a > 0, got {a}")
    if b < a:
        raise DomainError(f"q(a, b) needs b >= a, got a={a}, b={b}")
    return ConvexPolygon([(0, 0), (2 * a, 0), (a, a + b), (0, a + b)])


def volume(X: ToricDomain) -> Fraction:
    """Area of the moment image."""
    if isinstance(X, Ball):
        return X.R * X.R / 2
    if isinstance(X, Ellipsoid):
        return X.a * X.b / 2
    if isinstance(X, Polydisk):
        return X.c * X.d
    return shoelace_area((Point(Fraction(0), Fraction(0)),) + X.profile)


def image_vertices(X: ToricDomain) -> list[Point]:
    """Vertices of the closed moment image, counterclockwise from the origin."""
    if isinstance(X, CONVEX_FAMILIES):
        return list(X.polygon().vertices)
    return [Point(Fraction(0), Fraction(0))] + list(X.profile[::-1])


def bounding_box(X: ToricDomain) -> tuple[Fraction, Fraction]:
    vs = image_vertices(X)
    return max(v.r for v in vs), max(v.s for v in vs)


def inside_halfplanes(X: ToricDomain) -> tuple[HalfPlane, ...]:
    """Strict half-planes cutting out the open image of a convex domain."""
    if not isinstance(X, CONVEX_FAMILIES):
        raise DomainError("only defined for convex domains")
    return X.polygon().halfplanes(strict=True)


# --- JSON --------------------------------------------------------------------


def domain_to_json(X: ToricDomain) -> dict:
    if isinstance(X, Ball):
        return {"type": "ball", "R": format_rational(X.R)}
    if isinstance(X, Ellipsoid):
        return {"type": "ellipsoid", "a": format_rational(X.a), "b": format_rational(X.b)}
    if isinstance(X, Polydisk):
        return {"type": "polydisk", "c": format_rational(X.c), "d": format_rational(X.d)}
    return {"type": "toric_pl", "profile": [p.to_json() for p in X.profile]}


def domain_from_json(obj: dict) -> ToricDomain:
    if not isinstance(obj, dict) or "type" not in obj:
        raise ValueError("domain JSON must be an object with a 'type' field")
    kind = obj["type"]
    try:
        if kind == "ball":
            return Ball(q(obj["R"]))
        if kind == "ellipsoid":
            return Ellipsoid(q(obj["a"]), q(obj["b"]))
        if kind == "polydisk":
            return Polydisk(q(obj["c"]), q(obj["d"]))
        if kind == "toric_pl":
            return ToricPL([Point.from_json(p) for p in obj["profile"]])
    except KeyError as exc:
        raise ValueError(f"domain of type {kind!r} is missing field {exc}") from None
    raise ValueError(f"unknown domain type {kind!r}")


def describe(X: ToricDomain) -> str:
    if isinstance(X, Ball):
        return f"B4({format_rational(X.R)})"
    if isinstance(X, Ellipsoid):
        return f"E({format_rational(X.a)},{format_rational(X.b)})"
    if isinstance(X, Polydisk):
        return f"P({format_rational(X.c)},{format_rational(X.d)})"
    return "X_Omega[" + ",".join(f"({format_rational(p.r)},{format_rational(p.s)})" for p in X.profile) + "]"

