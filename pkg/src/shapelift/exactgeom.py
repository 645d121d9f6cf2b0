"""Exact rational geometry in the moment plane.

Everything here works over :class:`fractions.Fraction`.  A point is ``(r, s)``;
a :class:`PolyPath` is parameterized by ``t`` in ``[0, n]`` where ``n`` is the
number of segments, segment ``i`` covering ``[i, i + 1]`` affinely.  Regions
are unions of conjunctions of half-planes, which lets us compute the exact set
of parameters where a path is inside a region.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, NamedTuple, Sequence, Union

Rational = Fraction
Number = Union[int, Fraction, str]


class DomainError(ValueError):
    """An input violates the precondition of an operation."""


def q(x: Number) -> Fraction:
    """Coerce ``x`` to an exact Fraction.  Floats are refused."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool) or isinstance(x, float):
        raise TypeError(f"refusing inexact value {x!r}")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return parse_rational(x)
    raise TypeError(f"cannot make a rational from {x!r}")


def parse_rational(text: str) -> Fraction:
    """Parse ``"p/q"`` or ``"p"``.  Decimal notation is rejected to keep inputs exact."""
    t = text.strip()
    if not t:
        raise ValueError("empty rational")
    num, sep, den = t.partition("/")
    try:
        n = int(num)
        d = int(den) if sep else 1
    except ValueError:
        raise ValueError(f"malformed rational {text!r} (expected 'p/q' or 'p')") from None
    if d == 0:
        raise ValueError(f"zero denominator in {text!r}")
    return Fraction(n, d)


def format_rational(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


class Point(NamedTuple):
    r: Fraction
    s: Fraction

    @classmethod
    def of(cls, r: Number, s: Number) -> "Point":
        return cls(q(r), q(s))

    def __add__(self, other):  # type: ignore[override]
        return Point(self.r + other.r, self.s + other.s)

    def __sub__(self, other):
        return Point(self.r - other.r, self.s - other.s)

    def scale(self, lam: Fraction) -> "Point":
        return Point(self.r * lam, self.s * lam)

    def to_json(self) -> list[str]:
        return [format_rational(self.r), format_rational(self.s)]

    @classmethod
    def from_json(cls, obj) -> "Point":
        parts = obj.split(",") if isinstance(obj, str) else list(obj)
        if len(parts) != 2:
            raise ValueError(f"a point needs two coordinates, got {obj!r}")
        return cls(q(parts[0]), q(parts[1]))


def cross(u: Point, v: Point) -> Fraction:
    return u.r * v.s - u.s * v.r


def lerp(p0: Point, p1: Point, u: Fraction) -> Point:
    return Point(p0.r + (p1.r - p0.r) * u, p0.s + (p1.s - p0.s) * u)


@dataclass(frozen=True)
class Segment:
    p0: Point
    p1: Point

    def __post_init__(self):
        if self.p0 == self.p1:
            raise DomainError("degenerate segment")


@dataclass(frozen=True)
class PolyPath:
    """Oriented piecewise-linear path; ``t`` runs over ``[0, len(vertices) - 1]``."""

    vertices: tuple[Point, ...]

    def __init__(self, vertices: Iterable):
        vs = tuple(v if isinstance(v, Point) else Point.of(*v) for v in vertices)
        if len(vs) < 2:
            raise DomainError("a path needs at least two vertices")
        for a, b in zip(vs, vs[1:]):
            if a == b:
                raise DomainError(f"repeated consecutive vertex {a}")
        object.__setattr__(self, "vertices", vs)

    @property
    def T(self) -> Fraction:
        return Fraction(len(self.vertices) - 1)

    @property
    def segments(self) -> list[Segment]:
        return [Segment(a, b) for a, b in zip(self.vertices, self.vertices[1:])]

    def point_at(self, t: Fraction) -> Point:
        t = q(t)
        if t < 0 or t > self.T:
            raise DomainError(f"parameter {t} outside [0, {self.T}]")
        i = min(int(t), len(self.vertices) - 2)
        return lerp(self.vertices[i], self.vertices[i + 1], t - i)

    def start(self) -> Point:
        return self.vertices[0]

    def end(self) -> Point:
        return self.vertices[-1]

    def reversed(self) -> "PolyPath":
        return PolyPath(self.vertices[::-1])

    def subpath(self, t0: Fraction, t1: Fraction) -> "PolyPath":
        """The restriction to ``[t0, t1]`` (re-parameterized from 0)."""
        t0, t1 = q(t0), q(t1)
        if not 0 <= t0 < t1 <= self.T:
            raise DomainError(f"bad sub-interval [{t0}, {t1}]")
        pts = [self.point_at(t0)]
        pts += [self.vertices[i] for i in range(len(self.vertices)) if t0 < i < t1]
        end = self.point_at(t1)
        if end != pts[-1]:
            pts.append(end)
        return PolyPath(pts)

    def to_json(self) -> list[list[str]]:
        return [v.to_json() for v in self.vertices]

    @classmethod
    def from_json(cls, obj) -> "PolyPath":
        if isinstance(obj, dict):
            obj = obj["vertices"]
        return cls([Point.from_json(v) for v in obj])


class Trend(enum.Enum):
    NON_INCREASING = "non_increasing"
    NON_DECREASING = "non_decreasing"
    CONSTANT = "constant"


def segment_ratio_trend(seg: Segment) -> Trend:
    """Monotonicity of ``r/s`` along a segment with ``s > 0`` at both ends.

    ``d/dt (r/s)`` has numerator ``dr*s0 - r0*ds``, constant along the segment.
    """
    p0, p1 = seg.p0, seg.p1
    if p0.s <= 0 or p1.s <= 0:
        raise DomainError("ratio trend needs s > 0 at both endpoints")
    sign = (p1.r - p0.r) * p0.s - p0.r * (p1.s - p0.s)
    if sign < 0:
        return Trend.NON_INCREASING
    if sign > 0:
        return Trend.NON_DECREASING
    return Trend.CONSTANT


def linear_extrema_on_path(alpha: Number, beta: Number, path: PolyPath) -> tuple[Fraction, Fraction]:
    alpha, beta = q(alpha), q(beta)
    vals = [alpha * v.r + beta * v.s for v in path.vertices]
    return min(vals), max(vals)


# --- half-planes and regions -------------------------------------------------


@dataclass(frozen=True)
class HalfPlane:
    """``alpha*r + beta*s + gamma > 0`` if strict, else ``>= 0``."""

    alpha: Fraction
    beta: Fraction
    gamma: Fraction
    strict: bool = False

    def value(self, p: Point) -> Fraction:
        return self.alpha * p.r + self.beta * p.s + self.gamma

    def holds(self, p: Point) -> bool:
        v = self.value(p)
        return v > 0 if self.strict else v >= 0

    def closed(self) -> "HalfPlane":
        return HalfPlane(self.alpha, self.beta, self.gamma, False)

    def negated(self) -> "HalfPlane":
        return HalfPlane(-self.alpha, -self.beta, -self.gamma, not self.strict)


def hp(alpha: Number, beta: Number, gamma: Number, strict: bool = False) -> HalfPlane:
    return HalfPlane(q(alpha), q(beta), q(gamma), strict)


def lt(alpha: Number, beta: Number, bound: Number) -> HalfPlane:
    """``alpha*r + beta*s < bound``."""
    return hp(-q(alpha), -q(beta), q(bound), True)


def le(alpha: Number, beta: Number, bound: Number) -> HalfPlane:
    return hp(-q(alpha), -q(beta), q(bound), False)


def gt(alpha: Number, beta: Number, bound: Number) -> HalfPlane:
    return hp(q(alpha), q(beta), -q(bound), True)


def ge(alpha: Number, beta: Number, bound: Number) -> HalfPlane:
    return hp(q(alpha), q(beta), -q(bound), False)


# A region is a union of terms; each term is a conjunction of half-planes.
Term = tuple[HalfPlane, ...]
Region = tuple[Term, ...]


def region_contains(region: Region, p: Point) -> bool:
    return any(all(h.holds(p) for h in term) for term in region)


def region_and(region: Region, extra: Sequence[HalfPlane]) -> Region:
    return tuple(tuple(term) + tuple(extra) for term in region)


def region_closure(region: Region) -> Region:
    return tuple(tuple(h.closed() for h in term) for term in region)


# --- exact parameter sets ----------------------------------------------------


@dataclass(frozen=True, order=True)
class Interval:
    lo: Fraction
    hi: Fraction
    lo_closed: bool = True
    hi_closed: bool = True

    def __post_init__(self):
        if self.lo > self.hi or (self.lo == self.hi and not (self.lo_closed and self.hi_closed)):
            raise ValueError(f"empty interval {self}")

    def contains(self, t: Fraction) -> bool:
        if t < self.lo or t > self.hi:
            return False
        if t == self.lo and not self.lo_closed:
            return False
        if t == self.hi and not self.hi_closed:
            return False
        return True


def _interval(lo, hi, lc, hc) -> Interval | None:
    if lo > hi or (lo == hi and not (lc and hc)):
        return None
    return Interval(lo, hi, lc, hc)


class IntervalSet:
    """A finite union of disjoint intervals of rationals, kept sorted and merged."""

    __slots__ = ("intervals",)

    def __init__(self, intervals: Iterable[Interval] = ()):
        self.intervals: tuple[Interval, ...] = self._normalize(intervals)

    @staticmethod
    def _normalize(intervals: Iterable[Interval]) -> tuple[Interval, ...]:
        ivs = sorted(intervals, key=lambda iv: (iv.lo, not iv.lo_closed))
        out: list[Interval] = []
        for iv in ivs:
            if out:
                last = out[-1]
                touching = iv.lo < last.hi or (iv.lo == last.hi and (last.hi_closed or iv.lo_closed))
                if touching:
                    if iv.hi > last.hi or (iv.hi == last.hi and iv.hi_closed):
                        hi, hc = iv.hi, iv.hi_closed or (iv.hi == last.hi and last.hi_closed)
                    else:
                        hi, hc = last.hi, last.hi_closed
                    out[-1] = Interval(last.lo, hi, last.lo_closed, hc)
                    continue
            out.append(iv)
        return tuple(out)

    @classmethod
    def closed(cls, lo: Number, hi: Number) -> "IntervalSet":
        return cls([Interval(q(lo), q(hi))])

    @classmethod
    def points(cls, ts: Iterable[Fraction]) -> "IntervalSet":
        return cls(Interval(t, t) for t in ts)

    def __bool__(self) -> bool:
        return bool(self.intervals)

    def __eq__(self, other) -> bool:
        return isinstance(other, IntervalSet) and self.intervals == other.intervals

    def __repr__(self) -> str:
        parts = []
        for iv in self.intervals:
            parts.append(f"{'[' if iv.lo_closed else '('}{iv.lo}, {iv.hi}{']' if iv.hi_closed else ')'}")
        return "IntervalSet(" + " u ".join(parts) + ")"

    def __or__(self, other: "IntervalSet") -> "IntervalSet":
        return IntervalSet(self.intervals + other.intervals)

    def __and__(self, other: "IntervalSet") -> "IntervalSet":
        out = []
        for a in self.intervals:
            for b in other.intervals:
                if a.lo > b.lo or (a.lo == b.lo and not a.lo_closed):
                    lo, lc = a.lo, a.lo_closed
                else:
                    lo, lc = b.lo, b.lo_closed
                if a.hi < b.hi or (a.hi == b.hi and not a.hi_closed):
                    hi, hc = a.hi, a.hi_closed
                else:
                    hi, hc = b.hi, b.hi_closed
                iv = _interval(lo, hi, lc, hc)
                if iv is not None:
                    out.append(iv)
        return IntervalSet(out)

    def complement(self, lo: Fraction, hi: Fraction) -> "IntervalSet":
        """Complement inside the closed interval ``[lo, hi]``."""
        out = []
        cur, cur_closed = lo, True
        for iv in self.intervals:
            piece = _interval(cur, iv.lo, cur_closed, not iv.lo_closed)
            if piece is not None and piece.hi >= lo:
                out.append(piece)
            cur, cur_closed = iv.hi, not iv.hi_closed
        piece = _interval(cur, hi, cur_closed, True)
        if piece is not None:
            out.append(piece)
        return IntervalSet(out) & IntervalSet.closed(lo, hi)

    def contains(self, t: Fraction) -> bool:
        return any(iv.contains(t) for iv in self.intervals)

    def covers(self, lo: Fraction, hi: Fraction) -> bool:
        # components are merged, so a covered interval sits inside one of them
        return any(iv.contains(lo) and iv.contains(hi) for iv in self.intervals)

    def component_containing(self, t: Fraction) -> Interval | None:
        for iv in self.intervals:
            if iv.contains(t):
                return iv
        return None

    def after(self, t: Fraction, closed: bool = True) -> "IntervalSet":
        """Intersection with ``[t, +inf)`` (or ``(t, +inf)``)."""
        if not self.intervals:
            return IntervalSet()
        big = max(self.intervals[-1].hi, t)
        iv = _interval(t, big, closed, True)
        return self & IntervalSet([iv]) if iv is not None else IntervalSet()

    def before(self, t: Fraction) -> "IntervalSet":
        if not self.intervals:
            return IntervalSet()
        return self & IntervalSet([Interval(min(self.intervals[0].lo, t), t)])

    def pick(self) -> Fraction | None:
        """A canonical rational member: the earliest one if attained, else a midpoint."""
        if not self.intervals:
            return None
        iv = self.intervals[0]
        if iv.lo_closed:
            return iv.lo
        if iv.hi_closed and iv.hi == iv.lo:
            return iv.hi
        return (iv.lo + iv.hi) / 2

    def sample(self, per_interval: int = 16) -> list[Fraction]:
        """Rational sample points: closed endpoints plus an even subdivision."""
        out = []
        for iv in self.intervals:
            if iv.lo_closed:
                out.append(iv.lo)
            for i in range(1, per_interval):
                t = iv.lo + (iv.hi - iv.lo) * Fraction(i, per_interval)
                if iv.contains(t):
                    out.append(t)
            if iv.hi_closed and iv.hi != iv.lo:
                out.append(iv.hi)
        return sorted(set(out))


def affine_sign_set(f0: Fraction, f1: Fraction, lo: Fraction, strict: bool) -> IntervalSet:
    """Parameters ``t`` in ``[lo, lo+1]`` where ``f0 + (f1-f0)(t-lo)`` is ``> 0`` (or ``>= 0``)."""
    hi = lo + 1
    ok = (lambda v: v > 0) if strict else (lambda v: v >= 0)
    if f0 == f1:
        return IntervalSet.closed(lo, hi) if ok(f0) else IntervalSet()
    root = lo + f0 / (f0 - f1)
    if f1 > f0:
        iv = _interval(max(root, lo), hi, not strict or root < lo, True)
    else:
        iv = _interval(lo, min(root, hi), True, not strict or root > hi)
    return IntervalSet([iv]) if iv is not None else IntervalSet()


def term_param_set(term: Term, p0: Point, p1: Point, lo: Fraction) -> IntervalSet:
    acc = IntervalSet.closed(lo, lo + 1)
    for h in term:
        acc = acc & affine_sign_set(h.value(p0), h.value(p1), lo, h.strict)
        if not acc:
            break
    return acc


def region_param_set(region: Region, path: PolyPath) -> IntervalSet:
    """Exact set of ``t`` with ``path(t)`` in ``region``."""
    out = IntervalSet()
    vs = path.vertices
    for i in range(len(vs) - 1):
        lo = Fraction(i)
        for term in region:
            out = out | term_param_set(term, vs[i], vs[i + 1], lo)
    return out


def form_param_set(alpha: Number, beta: Number, gamma: Number, path: PolyPath, strict: bool) -> IntervalSet:
    return region_param_set(((hp(alpha, beta, gamma, strict),),), path)


def region_contains_segment(region: Region, a: Point, b: Point) -> bool:
    if a == b:
        return region_contains(region, a)
    return region_param_set(region, PolyPath([a, b])).covers(Fraction(0), Fraction(1))


def region_contains_polygon(region: Region, vertices: Sequence[Point]) -> bool:
    """Containment of a convex polygon in a simply connected region: its boundary suffices."""
    n = len(vertices)
    return all(region_contains_segment(region, vertices[i], vertices[(i + 1) % n]) for i in range(n))


# --- convex polygons ---------------------------------------------------------


@dataclass(frozen=True)
class ConvexPolygon:
    vertices: tuple[Point, ...]

    def __init__(self, vertices: Iterable):
        vs = tuple(v if isinstance(v, Point) else Point.of(*v) for v in vertices)
        if len(vs) < 3:
            raise DomainError("a polygon needs at least 3 vertices")
        n = len(vs)
        if any(vs[i] == vs[(i + 1) % n] for i in range(n)):
            raise DomainError("polygon has a repeated vertex")
        crosses = [cross(vs[(i + 1) % n] - vs[i], vs[(i + 2) % n] - vs[(i + 1) % n]) for i in range(n)]
        if any(c < 0 for c in crosses):
            raise DomainError("polygon vertices are not counterclockwise convex")
        if all(c == 0 for c in crosses):
            raise DomainError("polygon is degenerate (collinear)")
        object.__setattr__(self, "vertices", vs)

    def edges(self) -> list[tuple[Point, Point]]:
        n = len(self.vertices)
        return [(self.vertices[i], self.vertices[(i + 1) % n]) for i in range(n)]

    def halfplanes(self, strict: bool) -> Term:
        """Left-of-edge half-planes.

        With ``strict`` the edges are open except those lying on a coordinate axis:
        moment polygons live in the closed quadrant, and the axes are never part
        of the boundary of the toric domain they describe.
        """
        out = []
        for a, b in self.edges():
            # cross(b - a, p - a) >= 0
            d = b - a
            on_axis = (a.r == 0 and b.r == 0) or (a.s == 0 and b.s == 0)
            out.append(HalfPlane(-d.s, d.r, d.s * a.r - d.r * a.s, strict and not on_axis))
        return tuple(out)

    def region(self, strict: bool) -> Region:
        return (self.halfplanes(strict),)

    def area(self) -> Fraction:
        return shoelace_area(self.vertices)


def shoelace_area(vertices: Sequence[Point]) -> Fraction:
    n = len(vertices)
    twice = sum(cross(vertices[i], vertices[(i + 1) % n]) for i in range(n))
    return abs(Fraction(twice) / 2)


def polygon_contains(outer: ConvexPolygon, inner: Union[Point, Segment, ConvexPolygon], strict: bool = False) -> bool:
    """Exact containment in a convex polygon; vertices of the inner object suffice."""
    term = outer.halfplanes(strict)
    if isinstance(inner, Point):
        pts: Sequence[Point] = (inner,)
    elif isinstance(inner, Segment):
        pts = (inner.p0, inner.p1)
    else:
        pts = inner.vertices
    return all(h.holds(p) for p in pts for h in term)


def clip_polygon(vertices: Sequence[Point], term: Term) -> list[Point]:
    """Sutherland-Hodgman clip of a convex polygon by closed half-planes (for drawing)."""
    poly = list(vertices)
    for h in term:
        if not poly:
            break
        out = []
        n = len(poly)
        for i in range(n):
            a, b = poly[i], poly[(i + 1) % n]
            va, vb = h.value(a), h.value(b)
            if va >= 0:
                out.append(a)
            if (va >= 0) != (vb >= 0):
                out.append(lerp(a, b, va / (va - vb)))
        dedup = []
        for p in out:
            if not dedup or dedup[-1] != p:
                dedup.append(p)
        if len(dedup) > 1 and dedup[0] == dedup[-1]:
            dedup.pop()
        poly = dedup
    return poly


def line_intersection(h1: HalfPlane, h2: HalfPlane) -> Point | None:
    det = h1.alpha * h2.beta - h1.beta * h2.alpha
    if det == 0:
        return None
    r = (-h1.gamma * h2.beta + h1.beta * h2.gamma) / det
    s = (-h1.alpha * h2.gamma + h1.gamma * h2.alpha) / det
    return Point(r, s)


def scaling_limit(region: Region, shape: Sequence[Point]) -> Fraction | None:
    """Supremum of ``lam`` with ``lam * shape`` inside ``region``.

    Assumes the containment is monotone in ``lam`` (star-shaped region, shape
    through the origin) and holds for small ``lam``.  The first failure happens
    at a contact event between a scaled vertex and a boundary line, or a region
    corner and a scaled edge; both give rational ``lam``.  Returns ``None`` if
    containment never fails.
    """
    cands: set[Fraction] = set()
    lines = {h for term in region for h in term}
    for h in lines:
        for v in shape:
            den = h.alpha * v.r + h.beta * v.s
            if den != 0:
                lam = -h.gamma / den
                if lam > 0:
                    cands.add(lam)
    corners = []
    for term in region:
        for i, h1 in enumerate(term):
            for h2 in term[i + 1:]:
                c = line_intersection(h1, h2)
                if c is not None:
                    corners.append(c)
    n = len(shape)
    for i in range(n):
        u, w = shape[i], shape[(i + 1) % n]
        d = w - u
        for c in corners:
            # cross(d*lam, c - lam*u) = 0  ->  lam * cross(d, c) - lam^2 * cross(d, u) = 0
            cdu = cross(d, u)
            if cdu != 0:
                lam = cross(d, c) / cdu
                if lam > 0:
                    cands.add(lam)
    for lam in sorted(cands):
        if not region_contains_polygon(region, [v.scale(lam) for v in shape]):
            return lam
    return None
