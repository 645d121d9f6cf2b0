"""ECH capacity sequences of ellipsoids and lattice counts under rational lines.

``N(a, b)`` is the non-decreasing sequence (with repetitions, index origin 0)
of all ``m a + n b`` with ``m, n >= 0``.  ``R_{a,b}(t)`` counts lattice points
``(i, j) >= 0`` with ``a i + b j <= t``.  Both views are linked by
``N(a, b)_k = min{t : R_{a,b}(t) >= k + 1}``.  Rational inputs are cleared to
integers by a common denominator before any counting.
"""
from __future__ import annotations

import enum
import heapq
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

from .exactgeom import ConvexPolygon, DomainError, Number, Point, q, shoelace_area


def _scale(*xs: Fraction) -> tuple[list[int], int]:
    """Integers proportional to ``xs`` and the common denominator used."""
    L = math.lcm(*(x.denominator for x in xs))
    return [int(x * L) for x in xs], L


# --- capacity sequences --------------------------------------------------------


@dataclass(frozen=True)
class CapSequence:
    a: Fraction
    b: Fraction
    entries: tuple[Fraction, ...]

    def __getitem__(self, k: int) -> Fraction:
        return self.entries[k]

    def __len__(self) -> int:
        return len(self.entries)


def _int_sequence(A: int, B: int, K: int) -> list[int]:
    # each (m, n) is pushed exactly once: from (m-1, n), or from (0, n-1) when m = 0
    heap = [(0, 0, 0)]
    out = []
    while len(out) <= K:
        v, m, n = heapq.heappop(heap)
        out.append(v)
        heapq.heappush(heap, (v + A, m + 1, n))
        if m == 0:
            heapq.heappush(heap, (v + B, 0, n + 1))
    return out


def cap_sequence(a: Number, b: Number, K: int) -> CapSequence:
    """The first ``K + 1`` entries of ``N(a, b)``."""
    a, b = q(a), q(b)
    if a <= 0 or b <= 0:
        raise DomainError(f"capacity sequence needs a, b > 0, got {a}, {b}")
    if K < 0:
        raise DomainError("K must be nonnegative")
    (A, B), L = _scale(a, b)
    return CapSequence(a, b, tuple(Fraction(v, L) for v in _int_sequence(A, B, K)))


def ech_capacity(a: Number, b: Number, k: int) -> Fraction:
    return cap_sequence(a, b, k)[k]


# --- lattice counts ------------------------------------------------------------


class CountMode(enum.Enum):
    ROW_SUM = "row_sum"
    COLUMN_SUM = "column_sum"
    BRUTE_FORCE = "brute_force"


def lattice_count(a: Number, b: Number, t: Number, mode: CountMode = CountMode.ROW_SUM) -> int:
    """``#{(i, j) in Z_{>=0}^2 : a i + b j <= t}``."""
    a, b, t = q(a), q(b), q(t)
    if a <= 0 or b <= 0:
        raise DomainError(f"lattice count needs a, b > 0, got {a}, {b}")
    if t < 0:
        return 0
    (A, B, T), _ = _scale(a, b, t)
    mode = CountMode(mode)
    if mode is CountMode.ROW_SUM:
        return sum((T - j * B) // A + 1 for j in range(T // B + 1))
    if mode is CountMode.COLUMN_SUM:
        return sum((T - i * A) // B + 1 for i in range(T // A + 1))
    return sum(1 for i in range(T // A + 1) for j in range(T // B + 1) if A * i + B * j <= T)


def lattice_count_below(a: Number, b: Number, t: Number) -> int:
    """``#{(i, j) : a i + b j < t}``; on the integer scale, ``< T`` is ``<= T - 1``."""
    a, b, t = q(a), q(b), q(t)
    (A, B, T), _ = _scale(a, b, t)
    return lattice_count(A, B, T - 1) if T > 0 else 0


def closed_form_R(k: int, A: int) -> int:
    """Shared value of ``R_{k,(k+1)^2}(A k (k+1))`` and ``R_{k+1,k(k+1)}(A k (k+1))``."""
    if k < 1 or A < 0:
        raise DomainError(f"need k >= 1 and A >= 0, got k={k}, A={A}")
    return k * A * (A + 1) // 2 + A + 1


# --- Pick's theorem ----------------------------------------------------------


@dataclass(frozen=True)
class LatticeCensus:
    interior: int
    boundary: int
    area: Fraction


def _integral_vertices(vertices: Sequence) -> list[Point]:
    pts = [v if isinstance(v, Point) else Point.of(*v) for v in vertices]
    if any(p.r.denominator != 1 or p.s.denominator != 1 for p in pts):
        raise DomainError("Pick's theorem needs integer vertices")
    return pts


def lattice_census(vertices: Sequence) -> LatticeCensus:
    """Count interior and boundary lattice points of a convex lattice polygon by enumeration."""
    pts = _integral_vertices(vertices)
    poly = ConvexPolygon(pts)
    closed = poly.halfplanes(strict=False)
    r0, r1 = int(min(p.r for p in pts)), int(max(p.r for p in pts))
    s0, s1 = int(min(p.s for p in pts)), int(max(p.s for p in pts))
    interior = boundary = 0
    for i in range(r0, r1 + 1):
        for j in range(s0, s1 + 1):
            p = Point(Fraction(i), Fraction(j))
            if not all(h.holds(p) for h in closed):
                continue
            if any(h.value(p) == 0 for h in closed):
                boundary += 1
            else:
                interior += 1
    return LatticeCensus(interior, boundary, poly.area())


def boundary_points(vertices: Sequence) -> int:
    """Boundary lattice points via ``gcd`` of edge vectors (independent of :func:`lattice_census`)."""
    pts = _integral_vertices(vertices)
    n = len(pts)
    return sum(math.gcd(int(pts[(i + 1) % n].r - pts[i].r), int(pts[(i + 1) % n].s - pts[i].s))
               for i in range(n))


def pick_check(vertices: Sequence, interior: int | None = None, boundary: int | None = None) -> bool:
    """``I + B/2 = area + 1``; missing counts are obtained by enumeration."""
    pts = _integral_vertices(vertices)
    if interior is None or boundary is None:
        census = lattice_census(pts)
        interior = census.interior if interior is None else interior
        boundary = census.boundary if boundary is None else boundary
    return interior + Fraction(boundary, 2) == shoelace_area(pts) + 1


def cut_trapezoid(k: int, A: int) -> list[Point]:
    """Lattice trapezoid cut from the triangle of ``R_{k+1,k(k+1)}(A k (k+1))``.

    Vertices ``(0,0), (A(k+1), 0), (B(k+1), bk), (0, bk)`` with ``b = A // (k+1)``,
    ``B = A - b(k+1)``.  Degenerate (rejected) when ``b = 0``.
    """
    b = A // (k + 1)
    B = A - b * (k + 1)
    if b == 0:
        raise DomainError(f"trapezoid degenerates for k={k}, A={A} (A < k + 1)")
    return [Point.of(x, y) for x, y in ((0, 0), (A * (k + 1), 0), (B * (k + 1), b * k), (0, b * k))]


def trapezoid_count(k: int, A: int) -> int:
    """Closed-form lattice count of :func:`cut_trapezoid` (interior plus boundary)."""
    b = A // (k + 1)
    B = A - b * (k + 1)
    return b * k * (k + 1) * (A + B) // 2 + 1 + (A + B + b) * (k + 1) // 2


# --- the embedding criterion -----------------------------------------------------


@dataclass(frozen=True)
class NoObstructionUpTo:
    K: int
    volume_source: Fraction
    volume_target: Fraction
    note: str = "finite horizon: no obstruction found, this does not certify an embedding"


@dataclass(frozen=True)
class ObstructedAt:
    k: int
    N_source_k: Fraction
    N_target_k: Fraction


@dataclass(frozen=True)
class ObstructedByVolume:
    volume_source: Fraction
    volume_target: Fraction


EmbeddingReport = Union[NoObstructionUpTo, ObstructedAt, ObstructedByVolume]


def embedding_check(c: Number, d: Number, a: Number, b: Number, K: int) -> EmbeddingReport:
    """Compare ``N(c, d)`` against ``N(a, b)`` for indices ``0..K`` (E(c,d) into E(a,b))."""
    c, d, a, b = q(c), q(d), q(a), q(b)
    if min(a, b, c, d) <= 0:
        raise DomainError("ellipsoid parameters must be positive")
    if K < 1:
        raise DomainError("K must be at least 1")
    src, tgt = cap_sequence(c, d, K), cap_sequence(a, b, K)
    for k in range(K + 1):
        if src[k] > tgt[k]:
            return ObstructedAt(k, src[k], tgt[k])
    vs, vt = c * d / 2, a * b / 2
    if vs > vt:
        return ObstructedByVolume(vs, vt)
    return NoObstructionUpTo(K, vs, vt)


def report_to_json(rep: EmbeddingReport) -> dict:
    if isinstance(rep, ObstructedAt):
        return {"verdict": "obstructed_at", "k": rep.k,
                "N_source_k": str(rep.N_source_k), "N_target_k": str(rep.N_target_k)}
    if isinstance(rep, ObstructedByVolume):
        return {"verdict": "obstructed_by_volume",
                "volume_source": str(rep.volume_source), "volume_target": str(rep.volume_target)}
    return {"verdict": "no_obstruction_up_to", "K": rep.K, "note": rep.note,
            "volume_source": str(rep.volume_source), "volume_target": str(rep.volume_target)}


# --- the integer claim and the ellipsoid proposition -------------------------------


class ClaimViolation(RuntimeError):
    """A computed instance contradicts the B, C dichotomy."""


@dataclass(frozen=True)
class ClaimBC:
    b: int
    c: int
    B: int
    C: int


def claim_bc(k: int, A: int) -> ClaimBC:
    if k < 1 or A < 0:
        raise DomainError(f"need k >= 1 and A >= 0, got k={k}, A={A}")
    b, B = divmod(A, k + 1)
    c, C = divmod(A * k, k + 1)
    if not ((B == 0 and C == 0) or B + C == k + 1):
        raise ClaimViolation(f"k={k}, A={A}: B={B}, C={C}")
    if B > 0 and (B * k) // (k + 1) != B - 1:
        raise ClaimViolation(f"k={k}, A={A}: floor(Bk/(k+1)) != B - 1")
    return ClaimBC(b, c, B, C)


def verify_prop_embedding(k: int, T: Number) -> bool:
    """``R_{k,(k+1)^2}(t) >= R_{k+1,k(k+1)}(t)`` for every ``t <= T``.

    The right-hand count only jumps at multiples of ``k + 1`` and the left-hand
    count is non-decreasing, so checking ``t = j (k+1)`` suffices.
    """
    T = q(T)
    if k < 1 or T <= 0:
        raise DomainError(f"need k >= 1 and T > 0, got k={k}, T={T}")
    step = k + 1
    j = 0
    while j * step <= T:
        t = j * step
        if lattice_count(k, (k + 1) ** 2, t) < lattice_count(k + 1, k * (k + 1), t):
            return False
        j += 1
    return True
