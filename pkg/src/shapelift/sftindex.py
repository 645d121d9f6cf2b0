"""Index and area bookkeeping for punctured holomorphic curves and buildings.

These are calculators: they evaluate the Fredholm index formulas and the
matching rules for buildings from given end data.  Nothing here constructs or
claims the existence of curves.

Sign convention: a negative end on an orbit "of type (-m, -n)" is written
``gamma_(m, n)`` in the literature, while the index formulas consume integer
pairs directly.  :func:`formula_pair` makes the translation explicit.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .exactgeom import DomainError, Number, q


def _integral(x: Fraction) -> int | Fraction:
    return int(x) if x.denominator == 1 else x


def formula_pair(m: int, n: int) -> tuple[int, int]:
    """Pair entering the index formulas for the orbit labelled ``gamma_(m, n)``, i.e. ``(-m, -n)``."""
    return -m, -n


@dataclass(frozen=True)
class EndData:
    cz_plus_halfdim: tuple[Fraction, ...] = ()
    neg_pairs: tuple[tuple[int, int], ...] = ()
    c1: int = 0

    def __init__(self, cz_plus_halfdim: Sequence[Number] = (), neg_pairs=(), c1: int = 0):
        object.__setattr__(self, "cz_plus_halfdim", tuple(q(x) for x in cz_plus_halfdim))
        object.__setattr__(self, "neg_pairs", tuple((int(m), int(n)) for m, n in neg_pairs))
        object.__setattr__(self, "c1", int(c1))


def index_general(ends: EndData, neg_cz_minus_halfdim: Sequence[Number] = ()) -> int | Fraction:
    """``(s+ + s- - 2) + 2 c1 + sum(CZ+ + dim/2) - sum(CZ- - dim/2)``."""
    neg = [q(x) for x in neg_cz_minus_halfdim]
    s_plus, s_minus = len(ends.cz_plus_halfdim), len(neg)
    total = (s_plus + s_minus - 2) + 2 * ends.c1 + sum(ends.cz_plus_halfdim, Fraction(0)) - sum(neg, Fraction(0))
    return _integral(total)


def index_torus_ends(pos_terms: Sequence[Number], neg_pairs: Sequence[tuple[int, int]]) -> int | Fraction:
    """Index with negative ends on a flat torus: ``(s+ + s- - 2) + sum pos + 2 sum (m + n)``."""
    pos = [q(x) for x in pos_terms]
    total = (len(pos) + len(neg_pairs) - 2) + sum(pos, Fraction(0)) + 2 * sum(m + n for m, n in neg_pairs)
    return _integral(total)


def index_bidegree(neg_pairs: Sequence[tuple[int, int]], d1: int, d2: int) -> int:
    """Index of a curve of bidegree ``(d1, d2)`` with negative torus ends: ``(s- - 2) + 4(d1 + d2) + 2 sum (m + n)``."""
    return (len(neg_pairs) - 2) + 4 * (d1 + d2) + 2 * sum(m + n for m, n in neg_pairs)


def plane_area(r: Number, s: Number, m: int, n: int) -> Fraction:
    r, s = q(r), q(s)
    if r <= 0 or s <= 0:
        raise DomainError("torus areas must be positive")
    return r * m + s * n


@dataclass(frozen=True)
class TreeCounts:
    """Decomposition of one component: ``Q`` symplectization curves with ``s`` positive ends each, ``R`` cobordism curves."""

    Q: int
    R: int
    s: tuple[int, ...]
    neg_ends: int = 0

    def __post_init__(self):
        if len(self.s) != self.Q:
            raise DomainError(f"need one positive-end count per symplectization curve ({self.Q}), got {len(self.s)}")


@dataclass(frozen=True)
class BuildingData:
    component_indices: tuple[int, ...]
    matched_leaf_dims: tuple[int, ...] = ()
    component_areas: tuple[Fraction, ...] = ()
    tree: tuple[TreeCounts, ...] = field(default=())

    def __init__(self, component_indices, matched_leaf_dims=(), component_areas=(), tree=()):
        object.__setattr__(self, "component_indices", tuple(int(x) for x in component_indices))
        object.__setattr__(self, "matched_leaf_dims", tuple(int(x) for x in matched_leaf_dims))
        object.__setattr__(self, "component_areas", tuple(q(x) for x in component_areas))
        object.__setattr__(self, "tree", tuple(tree))


def building_totals(b: BuildingData) -> tuple[Fraction, int]:
    """Total area and index: areas add, indices add minus the matched leaf dimensions."""
    if b.matched_leaf_dims and len(b.matched_leaf_dims) != len(b.component_indices) - 1:
        raise DomainError("a connected building matches components - 1 times")
    area = sum(b.component_areas, Fraction(0))
    return area, sum(b.component_indices) - sum(b.matched_leaf_dims)


def tree_identity(t: TreeCounts) -> bool:
    """Euler characteristic of the decomposition tree: ``R + Q - (sum s - 1) = 1``."""
    return t.R + t.Q - (sum(t.s) - 1) == 1


def tree_homology_check(b: BuildingData, per_component_neg_sums: Sequence[int],
                        ind_C0_minus_ends: int) -> bool:
    """Bookkeeping behind the sign of the homology sum of the non-root components.

    ``b.component_indices`` lists ``ind(C_0), ind(C_1), ..., ind(C_k)`` and
    ``b.tree`` the counts for ``C_1..C_k``.  For each ``i >= 1`` we need
    ``ind(C_i) - e_i = 2 * sum_i``; given ``ind(C_0) - #ends(C_0) >= 0`` the total
    ``sum_i`` must be ``<= 0``.
    """
    k = len(b.component_indices) - 1
    if len(b.tree) != k or len(per_component_neg_sums) != k:
        raise DomainError(f"need tree counts and homology sums for each of the {k} components")
    if ind_C0_minus_ends < 0:
        raise DomainError("the root component must have index at least its number of negative ends")
    for i, t in enumerate(b.tree, start=1):
        if not tree_identity(t):
            raise DomainError(f"component {i}: counts Q={t.Q}, R={t.R}, s={t.s} do not form a tree")
    for ind, t, total in zip(b.component_indices[1:], b.tree, per_component_neg_sums):
        if ind - t.neg_ends != 2 * total:
            return False
    return sum(per_component_neg_sums) <= 0


def chain_building(k: int) -> BuildingData:
    """``k + 2`` index-one curves matched along ``k + 1`` one-dimensional leaf spaces."""
    if k < 1:
        raise DomainError("k must be positive")
    return BuildingData([1] * (k + 2), [1] * (k + 1))
