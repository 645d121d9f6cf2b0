"""Embedding obstructions from oriented paths that cannot be lifted.

Setting: a toric domain ``X`` and a target ellipsoid ``E(a, b)`` with
``k = b/a`` an integer.  A witness is an inner ellipsoid ``E`` (given by the legs
of its moment triangle) together with a path that starts inside ``mu(E)``, stays
in ``mu(X)`` on the far side of the line ``(k+1) r + s = b``, has non-increasing
ratio ``r/s`` and ends outside ``mu(E(a, b))``.  A verified witness shows that
``X`` does not embed symplectically into ``E(a, b)``.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .domains import (
    Ball,
    Ellipsoid,
    ToricDomain,
    bounding_box,
    image_vertices,
    moment_contains,
    moment_region,
    segment_in_image,
    CLOSED,
)
from .exactgeom import (
    DomainError,
    Number,
    Point,
    PolyPath,
    Trend,
    format_rational,
    q,
    region_contains_polygon,
    segment_ratio_trend,
)


@dataclass(frozen=True)
class ObstructionInstance:
    X: ToricDomain
    a: Fraction
    b: Fraction

    def __init__(self, X: ToricDomain, target: Union[Ball, Ellipsoid]):
        if isinstance(target, Ball):
            a = b = target.R
        elif isinstance(target, Ellipsoid):
            a, b = target.a, target.b
        else:
            raise DomainError("target must be a ball or an ellipsoid")
        if (b / a).denominator != 1:
            raise DomainError(f"target needs b/a integral, got {b / a}")
        object.__setattr__(self, "X", X)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    @property
    def k(self) -> int:
        return int(self.b / self.a)

    @property
    def target(self) -> Ellipsoid:
        return Ellipsoid(self.a, self.b)

    @property
    def excluded_a(self) -> Fraction:
        """First parameter of the excluded ellipsoid ``E(ak/(k+1), b)``."""
        return self.a * self.k / (self.k + 1)

    def beyond_line(self, p: Point) -> bool:
        return (self.k + 1) * p.r + p.s >= self.b


@dataclass(frozen=True)
class Witness:
    e_r: Fraction
    e_s: Fraction
    path: PolyPath

    @classmethod
    def of(cls, inner: Union[Ball, Ellipsoid, tuple], path) -> "Witness":
        if isinstance(inner, Ball):
            legs = (inner.R, inner.R)
        elif isinstance(inner, Ellipsoid):
            legs = (inner.a, inner.b)
        else:
            legs = tuple(q(x) for x in inner)
        if min(legs) <= 0:
            raise DomainError("inner ellipsoid needs positive legs")
        p = path if isinstance(path, PolyPath) else PolyPath(path)
        return cls(legs[0], legs[1], p)

    def triangle(self) -> list[Point]:
        z = Fraction(0)
        return [Point(z, z), Point(self.e_r, z), Point(z, self.e_s)]

    def in_inner(self, p: Point) -> bool:
        return p.r >= 0 and p.s >= 0 and p.r / self.e_r + p.s / self.e_s < 1

    def to_json(self) -> dict:
        return {"E": [format_rational(self.e_r), format_rational(self.e_s)],
                "path": self.path.to_json()}

    @classmethod
    def from_json(cls, obj: dict) -> "Witness":
        return cls.of(tuple(q(x) for x in obj["E"]), PolyPath.from_json(obj["path"]))


def contained_in_target(inst: ObstructionInstance) -> bool:
    """Whether ``mu(X)`` lies inside ``mu(E(a, b))`` (the target is convex, so vertices decide)."""
    return all(moment_contains(inst.target, v, CLOSED) for v in image_vertices(inst.X))


def witness_clauses(inst: ObstructionInstance, w: Witness) -> dict[str, bool]:
    """Every clause of the witness conditions, evaluated exactly."""
    tri = w.triangle()
    vs = w.path.vertices
    out = {
        "source_not_in_target": not contained_in_target(inst),
        "inner_in_source": region_contains_polygon(moment_region(inst.X, closure=True), tri),
        "inner_in_target": w.e_r <= inst.a and w.e_s <= inst.b,
        "inner_escapes_excluded": w.e_r > inst.excluded_a or w.e_s > inst.b,
        "reduced": all(0 < v.r <= v.s for v in vs),
        "path_in_source": all(segment_in_image(inst.X, u, v) for u, v in zip(vs, vs[1:])),
        "beyond_line": all(inst.beyond_line(v) for v in vs),
        "starts_in_inner": w.in_inner(vs[0]),
        "ends_outside_target": not moment_contains(inst.target, vs[-1]),
    }
    out["ratio_non_increasing"] = out["reduced"] and all(
        segment_ratio_trend(s) is not Trend.NON_DECREASING for s in w.path.segments)
    return out


def verify_witness(inst: ObstructionInstance, w: Witness) -> bool:
    return all(witness_clauses(inst, w).values())


# --- search ------------------------------------------------------------------


STENCIL = tuple((di, dj) for di in range(-2, 3) for dj in range(-2, 3) if (di, dj) != (0, 0))


def _inner_candidates(inst: ObstructionInstance, h: Fraction) -> list[tuple[Fraction, Fraction]]:
    """Grid triangles inside both images that poke out of the excluded ellipsoid."""
    source = moment_region(inst.X, closure=True)
    rmax, smax = bounding_box(inst.X)
    top_r = min(inst.a, rmax)
    out = []
    i = int(top_r / h)
    while i * h > inst.excluded_a:
        e_r = i * h
        j = int(min(inst.b, smax) / h)
        while j > 0:
            e_s = j * h
            z = Fraction(0)
            if region_contains_polygon(source, [Point(z, z), Point(e_r, z), Point(z, e_s)]):
                out.append((e_r, e_s))
                break
            j -= 1
        i -= 1
    return out


def _grid_path(inst: ObstructionInstance, h: Fraction, inner: tuple[Fraction, Fraction],
               max_nodes: int = 200_000) -> PolyPath | None:
    """Breadth-first search on the grid ``h Z^2`` for an admissible path."""
    e_r, e_s = inner
    rmax, smax = bounding_box(inst.X)
    imax, jmax = int(rmax / h) + 1, int(smax / h) + 1
    node_ok: dict[tuple[int, int], bool] = {}

    def point(n):
        return Point(n[0] * h, n[1] * h)

    def ok(n) -> bool:
        if n not in node_ok:
            i, j = n
            p = point(n)
            node_ok[n] = (0 < i <= j and i <= imax and j <= jmax
                          and inst.beyond_line(p) and moment_contains(inst.X, p))
        return node_ok[n]

    starts = []
    for i in range(1, int(e_r / h) + 1):
        for j in range(i, int(e_s / h) + 1):
            n = (i, j)
            if ok(n) and (i * h) / e_r + (j * h) / e_s < 1:
                starts.append(n)
    parent: dict[tuple[int, int], tuple[int, int] | None] = {n: None for n in starts}
    queue = deque(starts)
    target = inst.target
    while queue and len(parent) < max_nodes:
        n = queue.popleft()
        if not moment_contains(target, point(n)):
            chain = []
            while n is not None:
                chain.append(point(n))
                n = parent[n]
            chain.reverse()
            return PolyPath(_drop_collinear(chain)) if len(chain) > 1 else None
        i, j = n
        for di, dj in STENCIL:
            m = (i + di, j + dj)
            if m in parent or not ok(m):
                continue
            # ratio r/s non-increasing along the step: di*j - i*dj <= 0
            if di * j - i * dj > 0:
                continue
            if not segment_in_image(inst.X, point(n), point(m)):
                continue
            parent[m] = n
            queue.append(m)
    return None


def _drop_collinear(pts: list[Point]) -> list[Point]:
    out = [pts[0]]
    for p, nxt in zip(pts[1:], pts[2:] + [None]):
        if nxt is not None:
            a = out[-1]
            if (p.r - a.r) * (nxt.s - p.s) == (p.s - a.s) * (nxt.r - p.r):
                continue
        out.append(p)
    return out


def search_witness(inst: ObstructionInstance, grid: Number = Fraction(1, 4)) -> Witness | None:
    """Best-effort grid search; any result is re-verified before being returned."""
    h = q(grid)
    if h <= 0:
        raise DomainError("grid step must be positive")
    if contained_in_target(inst):
        return None
    for inner in _inner_candidates(inst, h):
        path = _grid_path(inst, h, inner)
        if path is None:
            continue
        w = Witness(inner[0], inner[1], path)
        if verify_witness(inst, w):
            return w
    return None


@dataclass(frozen=True)
class ObstructedEmbedding:
    witness: Witness
    verdict: str = "obstructed"


@dataclass(frozen=True)
class Inconclusive:
    verdict: str = "inconclusive"


def conclude(inst: ObstructionInstance, w: Witness | None = None,
             grid: Number | None = Fraction(1, 4)) -> Union[ObstructedEmbedding, Inconclusive]:
    """Obstructed if the given witness (or, failing that, a searched one) verifies."""
    if w is not None and verify_witness(inst, w):
        return ObstructedEmbedding(w)
    if grid is not None:
        found = search_witness(inst, grid)
        if found is not None:
            return ObstructedEmbedding(found)
    return Inconclusive()
