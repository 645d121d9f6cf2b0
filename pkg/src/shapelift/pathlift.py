"""Deciding whether a path of area classes lifts to an isotopy of Lagrangian tori.

A path ``gamma`` starts at a product torus inside the reduced moment image
``mu(X)+``.  Two sufficient conditions and one obstruction are implemented:

* :func:`sufficiency_II` - the family-specific "flexible" criterion for balls,
  integral ellipsoids and polydisks;
* :func:`general_criterion` - containment of the quadrilateral ``q(a, b)`` in
  the interior of the moment image, valid for any toric domain, with automatic
  splitting into sub-paths at re-entries;
* :func:`obstruction_I` - non-increasing ratio ``r/s`` plus a linear form
  staying above the obstructing line.

Every clause is affine in ``t`` on each segment, so feasible parameter sets
are computed exactly as unions of rational intervals.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Sequence, Union

from .domains import (
    CONVEX_FAMILIES,
    Ball,
    Ellipsoid,
    Polydisk,
    ToricDomain,
    moment_region,
    reduced_region,
    OPEN_PLUS,
)
from .exactgeom import (
    DomainError,
    HalfPlane,
    IntervalSet,
    Point,
    PolyPath,
    Region,
    Trend,
    form_param_set,
    gt,
    le,
    linear_extrema_on_path,
    lt,
    q,
    region_contains,
    region_contains_polygon,
    region_param_set,
    scaling_limit,
    segment_ratio_trend,
)
from .shape import ShapeRegion, obstructing_form, shape_region

# ToricPL domains have no affine description of "q(r, s) inside the image";
# candidate parameters are sampled this densely per interval and checked exactly.
PL_SAMPLES = 16


# --- verdict types -----------------------------------------------------------


@dataclass(frozen=True)
class LiftCertificate:
    kind: str  # "type_i", "type_ii" or "concatenation"
    t0: Fraction
    t1: Fraction
    t_star: Fraction | None = None
    criterion: str = ""  # "sufficiency" or "q_containment" for type_ii pieces
    parts: tuple["LiftCertificate", ...] = ()

    @property
    def breakpoints(self) -> list[Fraction]:
        return [p.t1 for p in self.parts[:-1]]

    def to_json(self) -> dict:
        out: dict = {"kind": self.kind, "t0": str(self.t0), "t1": str(self.t1)}
        if self.t_star is not None:
            out["t_star"] = str(self.t_star)
        if self.criterion:
            out["criterion"] = self.criterion
        if self.parts:
            out["parts"] = [p.to_json() for p in self.parts]
            out["breakpoints"] = [str(b) for b in self.breakpoints]
        return out


@dataclass(frozen=True)
class ObstructionWitness:
    family: str
    trends: tuple[Trend, ...]
    form: tuple[int, int, Fraction]
    form_min: Fraction
    prefix_end: Fraction

    @property
    def threshold(self) -> Fraction:
        return self.form[2]

    def to_json(self) -> dict:
        a, b, thr = self.form
        return {
            "family": self.family,
            "trends": [t.value for t in self.trends],
            "form": f"{a}*r + {b}*s >= {thr}",
            "form_min": str(self.form_min),
            "prefix_end": str(self.prefix_end),
        }


@dataclass(frozen=True)
class Lifts:
    certificate: LiftCertificate
    verdict: str = field(default="lifts", init=False)


@dataclass(frozen=True)
class Obstructed:
    witness: ObstructionWitness
    verdict: str = field(default="obstructed", init=False)


@dataclass(frozen=True)
class Undetermined:
    reason: str = ""
    verdict: str = field(default="undetermined", init=False)


LiftVerdict = Union[Lifts, Obstructed, Undetermined]


def verdict_to_json(v: LiftVerdict) -> dict:
    if isinstance(v, Lifts):
        return {"verdict": "lifts", "certificate": v.certificate.to_json()}
    if isinstance(v, Obstructed):
        return {"verdict": "obstructed", "witness": v.witness.to_json()}
    return {"verdict": "undetermined", "reason": v.reason}


# --- family data -------------------------------------------------------------


def _family(X: ToricDomain) -> str:
    if isinstance(X, Ball):
        return "ball"
    if isinstance(X, Ellipsoid):
        if X.k is None or X.k < 2:
            raise DomainError("path-lifting criteria need b/a an integer >= 2 (use Ball for b = a)")
        return "ellipsoid"
    if isinstance(X, Polydisk):
        return "polydisk"
    raise DomainError("the family-specific criteria apply to balls, integral ellipsoids and polydisks only")


def flexible_region(X: ToricDomain) -> Region:
    """Where a sufficient ``t_*`` may sit (the second clause of the sufficiency criterion)."""
    fam = _family(X)
    if fam == "ball":
        return ((lt(2, 1, X.R),),)
    if fam == "ellipsoid":
        k = X.k
        return (
            (le(k - 1, -1, 0), lt(k + 1, 1, X.b)),
            (gt(k - 1, -1, 0), lt(2, 0, X.a)),
        )
    return ((lt(1, 1, X.d),),)


def suffix_strip(X: ToricDomain) -> Fraction:
    """Bound on ``r`` along the path after ``t_*``."""
    fam = _family(X)
    if fam == "ball":
        return X.R / 3
    if fam == "ellipsoid":
        return X.a / 2
    return X.c / 2


Q_UNIT = (Point(Fraction(0), Fraction(0)), Point(Fraction(2), Fraction(0)),
          Point(Fraction(1), Fraction(2)), Point(Fraction(0), Fraction(2)))


@lru_cache(maxsize=256)
def q_strip(X: ToricDomain) -> Fraction:
    """Supremum of ``rho`` with ``q(rho, rho)`` inside the open image (exact)."""
    lim = scaling_limit(moment_region(X, closure=False), Q_UNIT)
    if lim is None:
        raise DomainError("moment image is unbounded")
    return lim


def q_condition_region(X: ToricDomain) -> Region | None:
    """``{(r, s) : q(r, s) inside the open image}`` for convex images, else None.

    q's vertices ``(0,0), (2r,0), (r,r+s), (0,r+s)`` are linear in ``(r, s)``,
    so composing them with the image's half-planes gives half-planes again.
    """
    if not isinstance(X, CONVEX_FAMILIES):
        return None
    verts = (((0, 0), (0, 0)), ((2, 0), (0, 0)), ((1, 0), (1, 1)), ((0, 0), (1, 1)))
    term = []
    for h in X.polygon().halfplanes(strict=True):
        for (vr_r, vr_s), (vs_r, vs_s) in verts:
            term.append(HalfPlane(h.alpha * vr_r + h.beta * vs_r,
                                  h.alpha * vr_s + h.beta * vs_s, h.gamma, h.strict))
    return (tuple(term),)


def q_inside(X: ToricDomain, p: Point) -> bool:
    """Exact test of ``q(r, s)`` inside the open image, any toric domain."""
    if p.r <= 0 or p.s < p.r:
        return False
    region = q_condition_region(X)
    if region is not None:
        return region_contains(region, p)
    verts = [Point(Fraction(0), Fraction(0)), Point(2 * p.r, Fraction(0)),
             Point(p.r, p.r + p.s), Point(Fraction(0), p.r + p.s)]
    return region_contains_polygon(moment_region(X, closure=False), verts)


# --- parameter-set analysis of one path ---------------------------------------


class _PathAnalysis:
    """Exact parameter sets for the clauses of the general criterion."""

    def __init__(self, X: ToricDomain, path: PolyPath):
        self.X, self.path, self.T = X, path, path.T
        self.P = region_param_set(reduced_region(X, OPEN_PLUS), path)
        self.rho = q_strip(X)
        self.C = form_param_set(-1, 0, self.rho, path, strict=True)

    @cached_property
    def _q_exact(self) -> IntervalSet | None:
        region = q_condition_region(self.X)
        return None if region is None else region_param_set(region, self.path)

    def q_ok(self, cand: IntervalSet) -> IntervalSet:
        """Members of ``cand`` where ``q(r_t, s_t)`` sits in the open image."""
        if self._q_exact is not None:
            return cand & self._q_exact
        good = [t for t in cand.sample(PL_SAMPLES) if q_inside(self.X, self.path.point_at(t))]
        return IntervalSet.points(good)


def _require_start(Pset: IntervalSet, where: str) -> None:
    if not Pset.contains(Fraction(0)):
        raise DomainError(f"{where}: path must start in the reduced moment image")


def _check_quadrant(path: PolyPath, strict: bool, where: str) -> None:
    # r > 0 and r <= s (or r < s) are half-planes, so vertices decide
    for v in path.vertices:
        if v.r <= 0 or v.s <= 0:
            raise DomainError(f"{where}: path leaves the open quadrant at {v}")
        if (v.r >= v.s) if strict else (v.r > v.s):
            cmp = "r < s" if strict else "r <= s"
            raise DomainError(f"{where}: path violates {cmp} at {v}")


def _single(kind, t0, t1, t_star=None, criterion=""):
    return LiftCertificate(kind, Fraction(t0), Fraction(t1), t_star, criterion)


def _bundle(parts: list[LiftCertificate]) -> LiftCertificate:
    if len(parts) == 1:
        return parts[0]
    return LiftCertificate("concatenation", parts[0].t0, parts[-1].t1, parts=tuple(parts))


# --- sufficiency for the three families -------------------------------------


def sufficiency_II(X: ToricDomain, path: PolyPath) -> LiftCertificate | None:
    _family(X)
    _check_quadrant(path, strict=False, where="sufficiency_II")
    P = region_param_set(reduced_region(X, OPEN_PLUS), path)
    _require_start(P, "sufficiency_II")
    T = path.T
    prefix = IntervalSet([P.component_containing(Fraction(0))])
    flexible = region_param_set(flexible_region(X), path)
    tail = form_param_set(-1, 0, suffix_strip(X), path, strict=True).component_containing(T)
    if tail is None:
        return None
    feasible = prefix & flexible & IntervalSet([tail])
    t_star = feasible.pick()
    if t_star is None:
        return None
    return _single("type_ii", 0, T, t_star, "sufficiency")


# --- general q-containment criterion -----------------------------------------


def general_criterion(X: ToricDomain, path: PolyPath,
                      breakpoints: Sequence[Fraction] | None = None) -> LiftCertificate | None:
    """Certificate from q-containment, splitting at ``breakpoints`` or automatically.

    ``breakpoints=None`` chooses them; an empty sequence means a single sub-path.
    """
    _check_quadrant(path, strict=True, where="general_criterion")
    an = _PathAnalysis(X, path)
    _require_start(an.P, "general_criterion")
    if breakpoints is None:
        parts = _auto_parts(an)
    else:
        parts = _fixed_parts(an, [q(b) for b in breakpoints])
    return None if parts is None else _bundle(parts)


def _auto_parts(an: _PathAnalysis) -> list[LiftCertificate] | None:
    T, P, C = an.T, an.P, an.C
    parts: list[LiftCertificate] = []
    t0 = Fraction(0)
    while True:
        comp = P.component_containing(t0)
        if comp.contains(T):
            parts.append(_single("type_i", t0, T))
            return parts
        starts = IntervalSet([comp]).after(t0)
        # a last sub-path may end anywhere, no condition at its end point
        tail = C.component_containing(T)
        if tail is not None:
            t_star = an.q_ok(starts & IntervalSet([tail])).pick()
            if t_star is not None:
                parts.append(_single("type_ii", t0, T, t_star, "q_containment"))
                return parts
        # otherwise hand over to a later visit of the reduced image
        later = P.after(comp.hi, closed=not comp.hi_closed)
        best = None
        for K in C.intervals:
            Kset = IntervalSet([K])
            t_star = an.q_ok(starts & Kset).pick()
            if t_star is None:
                continue
            t1 = an.q_ok(later & Kset).pick()
            if t1 is not None and (best is None or t1 < best[0]):
                best = (t1, t_star)
        if best is None:
            return None
        t1, t_star = best
        parts.append(_single("type_ii", t0, t1, t_star, "q_containment"))
        t0 = t1


def _fixed_parts(an: _PathAnalysis, bps: list[Fraction]) -> list[LiftCertificate] | None:
    T = an.T
    if any(not 0 < b < T for b in bps) or any(b0 >= b1 for b0, b1 in zip(bps, bps[1:])):
        raise DomainError("breakpoints must increase strictly inside (0, T)")
    ends = [Fraction(0)] + bps + [T]
    parts = []
    for i, (lo, hi) in enumerate(zip(ends, ends[1:])):
        last = i == len(ends) - 2
        if not an.P.contains(lo):
            return None
        if an.P.covers(lo, hi):
            parts.append(_single("type_i", lo, hi))
            continue
        if not last and not an.q_ok(IntervalSet.points([hi])):
            return None
        tail = an.C.component_containing(hi)
        if tail is None:
            return None
        starts = IntervalSet([an.P.component_containing(lo)]) & IntervalSet.closed(lo, hi)
        t_star = an.q_ok(starts & IntervalSet([tail])).pick()
        if t_star is None:
            return None
        parts.append(_single("type_ii", lo, hi, t_star, "q_containment"))
    return parts


def recheck(X: ToricDomain, path: PolyPath, cert: LiftCertificate) -> bool:
    """Re-verify a certificate clause by clause at its recorded parameters."""
    pieces = list(cert.parts) if cert.kind == "concatenation" else [cert]
    if pieces[0].t0 != 0 or pieces[-1].t1 != path.T:
        return False
    if any(a.t1 != b.t0 for a, b in zip(pieces, pieces[1:])):
        return False
    P = region_param_set(reduced_region(X, OPEN_PLUS), path)
    for i, piece in enumerate(pieces):
        last = i == len(pieces) - 1
        if piece.kind == "type_i":
            if not P.covers(piece.t0, piece.t1):
                return False
            continue
        t = piece.t_star
        if t is None or not piece.t0 <= t <= piece.t1 or not P.covers(piece.t0, t):
            return False
        at = path.point_at(t)
        if piece.criterion == "sufficiency":
            ok = region_contains(flexible_region(X), at)
            width = suffix_strip(X)
        else:
            ok = q_inside(X, at)
            width = q_strip(X)
            if not last:
                ok = ok and q_inside(X, path.point_at(piece.t1))
        strip = form_param_set(-1, 0, width, path, strict=True)
        if not (ok and strip.covers(t, piece.t1)):
            return False
    return True


# --- obstruction --------------------------------------------------------------


def obstruction_I(X: ToricDomain, path: PolyPath) -> ObstructionWitness | None:
    fam = _family(X)
    _check_quadrant(path, strict=False, where="obstruction_I")
    if not region_param_set(shape_region(X), path).covers(Fraction(0), path.T):
        raise DomainError("obstruction_I: path leaves the reduced shape invariant")
    mu_plus = reduced_region(X, OPEN_PLUS)
    if not region_contains(mu_plus, path.start()):
        raise DomainError("obstruction_I: path must start in the reduced moment image")
    if region_contains(mu_plus, path.end()):
        raise DomainError("obstruction_I: path must end outside the reduced moment image")
    trends = tuple(segment_ratio_trend(s) for s in path.segments)
    if any(t is Trend.NON_DECREASING for t in trends):
        return None
    alpha, beta, thr = obstructing_form(X)
    lo, _ = linear_extrema_on_path(alpha, beta, path)
    if lo < thr:
        return None
    return ObstructionWitness(fam, trends, (alpha, beta, thr), lo, path.T)


def _obstructed_prefix(X: ToricDomain, path: PolyPath) -> ObstructionWitness | None:
    """Obstruction of the longest initial piece satisfying the hypotheses.

    A lift of the whole path restricts to a lift of every initial piece, so an
    obstructed prefix obstructs the path.  Later pieces prove nothing.
    """
    alpha, beta, thr = obstructing_form(X)
    above = form_param_set(alpha, beta, -thr, path, strict=False).component_containing(Fraction(0))
    if above is None:
        return None
    limit = above.hi
    for i, seg in enumerate(path.segments):
        if segment_ratio_trend(seg) is Trend.NON_DECREASING:
            limit = min(limit, Fraction(i))
            break
    if limit == 0:
        return None
    P = region_param_set(reduced_region(X, OPEN_PLUS), path)
    outside = P.complement(Fraction(0), limit)
    if not outside:
        return None
    tau = outside.intervals[-1].hi
    w = obstruction_I(X, path.subpath(0, tau) if tau < path.T else path)
    return None if w is None else replace(w, prefix_end=tau)


# --- orchestration -------------------------------------------------------------


def classify(X: ToricDomain, path: PolyPath) -> LiftVerdict:
    if isinstance(X, ShapeRegion):
        X = X.domain
    family_known = isinstance(X, CONVEX_FAMILIES)
    _check_quadrant(path, strict=False, where="classify")
    P = region_param_set(reduced_region(X, OPEN_PLUS), path)
    _require_start(P, "classify")
    if family_known:
        _family(X)
        if not region_param_set(shape_region(X), path).covers(Fraction(0), path.T):
            raise DomainError("classify: path leaves the reduced shape invariant")
    if P.covers(Fraction(0), path.T):
        return Lifts(_single("type_i", 0, path.T))
    if family_known:
        cert = sufficiency_II(X, path)
        if cert is not None:
            return Lifts(cert)
    if all(v.r < v.s for v in path.vertices):
        cert = general_criterion(X, path)
        if cert is not None:
            return Lifts(cert)
    if family_known:
        w = _obstructed_prefix(X, path)
        if w is not None:
            return Obstructed(w)
    return Undetermined("neither the sufficient criteria nor the obstruction apply")


def halfplane_persists(M: int, N: int, path: PolyPath) -> bool:
    """Whether ``M r + N s > 0`` holds along the whole path."""
    return form_param_set(M, N, 0, path, strict=True).covers(Fraction(0), path.T)


def ratio_non_increasing(path: PolyPath) -> bool:
    return all(segment_ratio_trend(s) is not Trend.NON_DECREASING for s in path.segments)


__all__ = [
    "LiftCertificate", "ObstructionWitness", "Lifts", "Obstructed", "Undetermined",
    "LiftVerdict", "verdict_to_json", "flexible_region", "suffix_strip", "q_strip",
    "q_condition_region", "q_inside", "sufficiency_II", "general_criterion", "recheck",
    "obstruction_I", "classify", "halfplane_persists", "ratio_non_increasing"
]
