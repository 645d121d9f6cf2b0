"""The reproduction suite run by ``shapelift verify``.

Each check is a zero-argument function returning ``(passed, detail)``; the
CLI times them and runs them in parallel.  Random instances use fixed seeds
so the output is stable across runs.
"""
from __future__ import annotations

import random
from fractions import Fraction as F
from typing import Callable

from .domains import Ball, Ellipsoid, Polydisk, ToricPL, bounding_box, volume
from .echlattice import (
    CountMode,
    NoObstructionUpTo,
    boundary_points,
    cap_sequence,
    claim_bc,
    closed_form_R,
    ech_capacity,
    embedding_check,
    lattice_census,
    lattice_count,
    lattice_count_below,
    pick_check,
    verify_prop_embedding,
)
from .exactgeom import DomainError, Point, PolyPath
from .obstruct import ObstructionInstance, Witness, search_witness, verify_witness
from .pathlift import (
    Lifts,
    Obstructed,
    classify,
    general_criterion,
    halfplane_persists,
    obstruction_I,
    sufficiency_II,
)
from .sftindex import BuildingData, EndData, building_totals, chain_building, index_bidegree, index_general
from .shape import knotted_member, shape_member

Result = tuple[bool, str]


def path(*pts) -> PolyPath:
    return PolyPath([(F(r), F(s)) for r, s in pts])


PL_SOURCE = ToricPL([(0, 24), (2, 17), (19, 0)])
PL_WITNESS = Witness.of(Ball(16), path((7, 8), ("5/2", 16), (2, "84/5"), ("1/2", 22)))
LOOP = path(("3/10", "4/5"), ("3/10", 3), ("9/20", "16/5"), ("9/20", "3/2"))


def shape_boundary_pair() -> Result:
    B = Ball(F(301, 100))
    a = shape_member(B, Point.of(1, 2))
    b = shape_member(B, Point.of(2, 3))
    return a and not b, f"(1,2) member={a}, (2,3) member={b}"


def closed_form_counts() -> Result:
    bad = []
    for k in range(1, 7):
        for A in range(13):
            t = A * k * (k + 1)
            want = closed_form_R(k, A)
            left = lattice_count(k, (k + 1) ** 2, t, CountMode.BRUTE_FORCE)
            right = lattice_count(k + 1, k * (k + 1), t, CountMode.BRUTE_FORCE)
            if not want == left == right:
                bad.append((k, A))
    return not bad, f"78 (k, A) pairs, 156 equalities, failures={bad}"


def prop_embedding() -> Result:
    props = [verify_prop_embedding(k, 30 * k * (k + 1)) for k in range(1, 6)]
    seq_ok = []
    for k in range(1, 4):
        lhs, rhs = cap_sequence(k, (k + 1) ** 2, 2000), cap_sequence(k + 1, k * (k + 1), 2000)
        seq_ok.append(all(x <= y for x, y in zip(lhs.entries, rhs.entries)))
    return all(props) and all(seq_ok), f"lattice {props}, sequences {seq_ok}"


def volume_filling() -> Result:
    v1, v2 = volume(Ellipsoid(1, 4)), volume(Ball(2))
    rep = embedding_check(1, 4, 2, 2, 2000)
    ok = v1 == v2 == 2 and isinstance(rep, NoObstructionUpTo) and rep.K == 2000
    return ok, f"vol E(1,4)={v1}, vol B(2)={v2}, report={type(rep).__name__}"


def ech_remark() -> Result:
    c1, c2 = ech_capacity(1, 3, 3), ech_capacity(F(6, 5), F(12, 5), 3)
    return c1 == 3 and c2 == F(12, 5) and c1 > c2, f"c_3(E(1,3))={c1}, c_3(E(6/5,12/5))={c2}"


def pl_domain_obstruction() -> Result:
    inst = ObstructionInstance(PL_SOURCE, Ball(20))
    given = verify_witness(inst, PL_WITNESS)
    found = search_witness(inst, F(1, 4))
    searched = found is not None and verify_witness(inst, found)
    return given and searched, f"given witness {given}, searched witness {searched}"


def fiber_disconnection() -> Result:
    E = Ellipsoid(1, 3)
    direct = classify(E, path(("9/20", "3/2"), ("9/20", "16/5")))
    detour = classify(E, path(("9/20", "3/2"), ("3/10", "4/5"), ("3/10", "16/5")))
    knotted = knotted_member(E, Point.of(F(9, 20), F(3, 2)))
    ok = isinstance(direct, Obstructed) and isinstance(detour, Lifts) and knotted
    return ok, f"direct={direct.verdict}, detour={detour.verdict}, knotted={knotted}"


def orientation_asymmetry() -> Result:
    E = Ellipsoid(1, 3)
    forward = general_criterion(E, LOOP)
    back = LOOP.reversed()
    leg = obstruction_I(E, back.subpath(0, 1))
    verdict = classify(E, back)
    ok = forward is not None and leg is not None and isinstance(verdict, Obstructed)
    return ok, f"forward certificate={forward is not None}, reverse leg witness={leg is not None}, reverse={verdict.verdict}"


def _outcome(fn, X, p):
    try:
        return "lifts" if fn(X, p) is not None else "none"
    except DomainError:
        return "error"


def specialization_grid(n: int = 50) -> Result:
    mismatches = compared = 0
    for X in (Ball(3), Ellipsoid(1, 3), Polydisk(1, 2)):
        rmax, smax = bounding_box(X)
        for i in range(1, n + 1):
            r = rmax * i / n
            for j in range(1, n + 1):
                s = smax * j / n
                if r >= s:
                    continue
                p = PolyPath([(r, s), (r, smax + 1)])
                compared += 1
                if _outcome(sufficiency_II, X, p) != _outcome(general_criterion, X, p):
                    mismatches += 1
    return mismatches == 0, f"{compared} vertical paths, mismatches={mismatches}"


def _rand_rational(rng: random.Random, hi_num: int = 30, hi_den: int = 7) -> F:
    return F(rng.randint(1, hi_num), rng.randint(1, hi_den))


def oracle_rowsum(rng: random.Random, n: int = 500) -> bool:
    for _ in range(n):
        a, b = _rand_rational(rng), _rand_rational(rng)
        t = min(a, b) * F(rng.randint(0, 2000), 10)
        if lattice_count(a, b, t, CountMode.ROW_SUM) != lattice_count(a, b, t, CountMode.BRUTE_FORCE):
            return False
    return True


def oracle_sequence_vs_count(rng: random.Random, n: int = 50, K: int = 200) -> bool:
    for _ in range(n):
        a, b = _rand_rational(rng), _rand_rational(rng)
        seq = cap_sequence(a, b, K)
        for k, v in enumerate(seq.entries):
            if not (lattice_count(a, b, v) >= k + 1 > lattice_count_below(a, b, v)):
                return False
    return True


def oracle_claim() -> bool:
    for k in range(1, 11):
        for A in range(51):
            claim_bc(k, A)
    return True


def random_lattice_polygon(rng: random.Random) -> list[tuple[int, int]]:
    if rng.random() < 0.5:
        while True:
            pts = [(rng.randint(0, 12), rng.randint(0, 12)) for _ in range(3)]
            (x0, y0), (x1, y1), (x2, y2) = pts
            area2 = (x1 - x0) * (y2 - y0) - (y1 - y0) * (x2 - x0)
            if area2 > 0:
                return pts
            if area2 < 0:
                return pts[::-1]
    w, h = rng.randint(1, 14), rng.randint(1, 8)
    return [(0, 0), (w, 0), (rng.randint(1, w), h), (0, h)]


def oracle_pick(rng: random.Random, n: int = 100) -> bool:
    for _ in range(n):
        v = random_lattice_polygon(rng)
        census = lattice_census(v)
        if census.boundary != boundary_points(v) or not pick_check(v, census.interior, census.boundary):
            return False
    return True


def random_ratio_path(rng: random.Random, start: tuple[F, F], steps: int) -> PolyPath:
    """Path in ``0 < r <= s`` whose ratio ``r/s`` never increases."""
    pts = [start]
    ratio = start[0] / start[1]
    for _ in range(steps):
        ratio = ratio * F(rng.randint(1, 20), 20)
        s = _rand_rational(rng, 60, 4)
        nxt = (ratio * s, s)
        if nxt != pts[-1]:
            pts.append(nxt)
    if len(pts) == 1:
        pts.append((start[0], start[1] * 2))
    return PolyPath(pts)


def oracle_persistence(rng: random.Random, n: int = 1000) -> bool:
    done = 0
    while done < n:
        M = rng.randint(-20, 0)
        N = rng.randint(0, -M) if M < 0 else 0
        s0 = _rand_rational(rng, 40, 4)
        r0 = s0 * F(rng.randint(1, 20), 20)
        if M * r0 + N * s0 <= 0:
            continue
        p = random_ratio_path(rng, (r0, s0), rng.randint(1, 5))
        if not halfplane_persists(M, N, p):
            return False
        done += 1
    return True


def oracle_suites() -> Result:
    rng = random.Random(20240611)
    results = {
        "rowsum": oracle_rowsum(rng),
        "sequence": oracle_sequence_vs_count(rng),
        "claim": oracle_claim(),
        "pick": oracle_pick(rng),
        "persistence": oracle_persistence(rng),
    }
    return all(results.values()), ", ".join(f"{k}={v}" for k, v in results.items())


def sft_arithmetic() -> Result:
    torus = [index_general(EndData([2 * k + 3]), [2 * k + 2]) for k in range(1, 7)]
    bideg = index_bidegree([(0, -1)], 0, 1)
    totals = [building_totals(chain_building(k))[1] for k in range(1, 7)]
    pair = building_totals(BuildingData([1, 1], [1], [F(1, 2), F(1, 2)]))
    ok = torus == [1] * 6 and bideg == 1 and totals == [1] * 6 and pair == (1, 1)
    return ok, f"torus-end index {torus}, bidegree index {bideg}, building index {totals}"


CHECKS: list[tuple[int, str, Callable[[], Result]]] = [
    (1, "shape invariant boundary pair", shape_boundary_pair),
    (2, "lattice closed form", closed_form_counts),
    (3, "ellipsoid embedding proposition", prop_embedding),
    (4, "volume-filling embedding", volume_filling),
    (5, "ECH capacity inequality", ech_remark),
    (6, "PL domain obstruction witness", pl_domain_obstruction),
    (7, "fiber disconnection", fiber_disconnection),
    (8, "orientation asymmetry", orientation_asymmetry),
    (9, "specialization equivalence", specialization_grid),
    (10, "oracle suites", oracle_suites),
    (11, "index arithmetic", sft_arithmetic),
]


def run_check(number: int) -> tuple[int, str, bool, str]:
    for num, name, fn in CHECKS:
        if num == number:
            try:
                ok, detail = fn()
            except Exception as exc:  # a crash is a failed check, reported not raised
                ok, detail = False, f"{type(exc).__name__}: {exc}"
            return num, name, ok, detail
    raise KeyError(number)
