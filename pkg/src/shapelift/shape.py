"""Reduced Hamiltonian shape invariants and knotted-torus regions.

All predicates are exact.  Strictness matters: shape regions are open, the
knotted regions mix ``<=`` (the strip) with ``>`` (the obstructing line).
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

from .domains import Ball, Ellipsoid, Polydisk, ToricDomain, moment_contains, OPEN
from .exactgeom import DomainError, Number, Point, Region, ge, gt, lt, le, q


@dataclass(frozen=True)
class ShapeRegion:
    """A ball, integral ellipsoid (``b = k a`` with ``k >= 2``) or polydisk."""

    domain: ToricDomain

    def __post_init__(self):
        X = self.domain
        if isinstance(X, Ellipsoid):
            if X.k is None or X.k < 2:
                raise DomainError(
                    f"shape region needs b/a an integer >= 2, got {X.b / X.a} (use Ball for b = a)")
        elif not isinstance(X, (Ball, Polydisk)):
            raise DomainError("shape regions are only known for balls, integral ellipsoids and polydisks")

    @property
    def k(self) -> int | None:
        return self.domain.k if isinstance(self.domain, Ellipsoid) else None


def as_region(X) -> ShapeRegion:
    return X if isinstance(X, ShapeRegion) else ShapeRegion(X)


def flexible_strip(X: ToricDomain) -> Fraction:
    """Width of the strip ``r < w`` of small tori inside the shape invariant."""
    if isinstance(X, Ball):
        return X.R / 2
    if isinstance(X, Ellipsoid):
        return X.a / 2
    return X.c / 2


def shape_region(X: ToricDomain) -> Region:
    """Sh+ as a region in ``{0 < r <= s}``."""
    w = flexible_strip(X)
    base = (gt(1, 0, 0), gt(0, 1, 0), ge(-1, 1, 0))
    if isinstance(X, Ball):
        image = (lt(1, 1, X.R),)
    elif isinstance(X, Ellipsoid):
        image = (lt(X.b, X.a, X.a * X.b),)  # r/a + s/b < 1
    else:
        image = (lt(1, 0, X.c), lt(0, 1, X.d))
    return (base + image, base + (lt(1, 0, w),))


def shape_member(region, p: Point) -> bool:
    X = as_region(region).domain
    if p.r <= 0 or p.s <= 0:
        raise DomainError(f"shape membership needs positive coordinates, got {p}")
    r, s = (p.r, p.s) if p.r <= p.s else (p.s, p.r)
    if isinstance(X, Ball):
        return r + s < X.R or r < X.R / 2
    if isinstance(X, Ellipsoid):
        return r / X.a + s / X.b < 1 or r < X.a / 2
    return (r < X.c and s < X.d) or r < X.c / 2


def _reduced(p: Point, what: str) -> None:
    if p.r <= 0 or p.s <= 0:
        raise DomainError(f"{what} needs positive coordinates, got {p}")
    if p.r > p.s:
        raise DomainError(f"{what} is stated for r <= s only, got {p}")


def knotted_region(X: ToricDomain) -> Region:
    """Points whose fiber contains a knotted torus, as a region (within r <= s)."""
    base = (gt(1, 0, 0), gt(0, 1, 0), ge(-1, 1, 0))
    if isinstance(X, Ball):
        extra = (lt(1, 1, X.R), le(3, 0, X.R), gt(2, 1, X.R))
    elif isinstance(X, Ellipsoid):
        extra = (lt(X.b, X.a, X.a * X.b), le(2, 0, X.a), gt(X.k + 1, 1, X.b))
    else:
        extra = (lt(1, 0, X.c), lt(0, 1, X.d), le(2, 0, X.c), gt(1, 1, X.d))
    return (base + extra,)


def knotted_member(region, p: Point) -> bool:
    sr = as_region(region)
    X = sr.domain
    _reduced(p, "knotted_member")
    r, s = p
    if not moment_contains(X, p, OPEN):
        return False
    if isinstance(X, Ball):
        return 3 * r <= X.R and 2 * r + s > X.R
    if isinstance(X, Ellipsoid):
        return 2 * r <= X.a and (sr.k + 1) * r + s > X.b
    return 2 * r <= X.c and r + s > X.d


def obstructing_form(X: ToricDomain) -> tuple[int, int, Fraction]:
    """``(alpha, beta, threshold)`` of the line ``alpha r + beta s = threshold`` bounding the flexible zone."""
    if isinstance(X, Ball):
        return 2, 1, X.R
    if isinstance(X, Ellipsoid):
        k = X.k
        if k is None:
            raise DomainError("obstructing line needs an integral ellipsoid")
        return k + 1, 1, X.b
    if isinstance(X, Polydisk):
        return 1, 1, X.d
    raise DomainError("no obstructing line for a general toric domain")


def _check_emb_hypotheses(X: ToricDomain, x: Fraction) -> None:
    if isinstance(X, Ball):
        ok = 1 < X.R < x
        want = "1 < R < x"
    elif isinstance(X, Ellipsoid):
        ok = 1 < X.a and X.b < x
        want = "1 < a and b = k a < x"
    else:
        ok = 1 <= X.c <= X.d < x
        want = "1 <= c <= d < x"
    if not ok:
        raise DomainError(f"hypotheses {want} fail for {X} with x={x}")


def emb_knotted_member(target, x: Number, p: Point) -> bool:
    """Region where the image of L(r, s) under an embedding ``E(1, x) -> target`` is knotted.

    Only the region is decided; whether such an embedding exists is a separate
    question (see :func:`shapelift.echlattice.embedding_check`).
    """
    X = as_region(target).domain
    x = q(x)
    _check_emb_hypotheses(X, x)
    _reduced(p, "emb_knotted_member")
    if not (moment_contains(Ellipsoid(1, x), p) and moment_contains(X, p)):
        return False
    alpha, beta, thr = obstructing_form(X)
    return alpha * p.r + beta * p.s > thr


class Family(enum.Enum):
    BALL = "ball"
    ELLIPSOID = "ellipsoid"
    POLYDISK = "polydisk"


def unknotted_threshold(family: Family | str, x: Number, k: Number = 1) -> Fraction:
    """Smallest capacity compatible with the product tori of ``E(1, x)`` staying unknotted."""
    family = Family(family)
    x, k = q(x), q(k)
    if x <= 0:
        raise DomainError(f"x must be positive, got {x}")
    if family is Family.BALL:
        return 3 * x / (x + 1)
    if family is Family.ELLIPSOID:
        if k.denominator != 1 or k < 2:
            raise DomainError(f"ellipsoid family needs an integer k >= 2, got {k}")
        return 2 * x / (x + k - 1)
    if k <= 0:
        raise DomainError(f"polydisk family needs k > 0, got {k}")
    return 2 * x / (x + 2 * k - 1)
