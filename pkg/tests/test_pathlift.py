import random
from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from shapelift.domains import Ball, Ellipsoid, Polydisk, ToricPL, bounding_box
from shapelift.exactgeom import DomainError, PolyPath
from shapelift.pathlift import (
    Lifts,
    Obstructed,
    Undetermined,
    classify,
    general_criterion,
    halfplane_persists,
    obstruction_I,
    ratio_non_increasing,
    recheck,
    sufficiency_II,
    verdict_to_json,
)


def path(*pts):
    return PolyPath([(F(r), F(s)) for r, s in pts])


E13 = Ellipsoid(1, 3)
LOOP = path(("3/10", "4/5"), ("3/10", 3), ("9/20", "16/5"), ("9/20", "3/2"))


# --- pointwise oracle written from the clause statements -----------------------

def in_mu_plus(X, r, s):
    if not (0 < r <= s):
        return False
    if isinstance(X, Ball):
        return r + s < X.R
    if isinstance(X, Ellipsoid):
        return r < X.a and s < X.b - X.b * r / X.a
    return r < X.c and s < X.d


def flexible_at(X, r, s):
    if isinstance(X, Ball):
        return 2 * r + s < X.R
    if isinstance(X, Ellipsoid):
        k = X.b / X.a
        return ((k - 1) * r <= s and (k + 1) * r + s < X.b) or ((k - 1) * r > s and 2 * r < X.a)
    return r + s < X.d


def strip_width(X):
    return X.R / 3 if isinstance(X, Ball) else X.a / 2 if isinstance(X, Ellipsoid) else X.c / 2


def oracle_feasible(X, p, t):
    """Exact for convex images: segments with both ends in a convex set stay inside."""
    here = p.point_at(t)
    before = [v for i, v in enumerate(p.vertices) if i <= t] + [here]
    after = [v for i, v in enumerate(p.vertices) if i >= t] + [here]
    return (flexible_at(X, *here) and all(in_mu_plus(X, *v) for v in before)
            and all(v.r < strip_width(X) for v in after))


def random_domain(rng):
    kind = rng.randrange(3)
    if kind == 0:
        return Ball(F(rng.randint(4, 40), rng.randint(1, 6)))
    if kind == 1:
        a = F(rng.randint(2, 20), rng.randint(1, 6))
        return Ellipsoid(a, a * rng.randint(2, 4))
    c = F(rng.randint(2, 20), rng.randint(1, 6))
    return Polydisk(c, c + F(rng.randint(0, 20), rng.randint(1, 6)))


def random_reduced_path(rng, X, n):
    rmax, smax = bounding_box(X)
    hi = max(rmax, smax) * F(5, 4)
    pts = []
    while len(pts) < n:
        s = hi * F(rng.randint(1, 64), 64)
        r = s * F(rng.randint(1, 64), 64)
        if not pts or (r, s) != pts[-1]:
            pts.append((r, s))
    return PolyPath(pts)


def random_path_from_mu_plus(rng, X):
    while True:
        p = random_reduced_path(rng, X, rng.randint(2, 5))
        if in_mu_plus(X, *p.start()):
            return p


# --- examples -------------------------------------------------------------------

def test_obstruction_examples():
    w = obstruction_I(Ball(3), path(("9/10", "13/10"), ("9/10", "7/2")))
    assert w is not None and w.form_min == F(31, 10) and w.form_min >= w.threshold
    w = obstruction_I(E13, path(("9/20", "3/2"), ("9/20", "16/5")))
    assert w is not None and w.form_min == F(33, 10)
    assert obstruction_I(Ball(3), path(("1/2", 1), ("1/2", "7/2"))) is None


def test_obstruction_preconditions():
    with pytest.raises(DomainError, match="start"):
        obstruction_I(Ball(3), path((1, 3), (1, 4)))
    with pytest.raises(DomainError, match="end outside"):
        obstruction_I(Ball(3), path((1, 1), (1, "3/2")))
    with pytest.raises(DomainError, match="shape"):
        obstruction_I(Ball(3), path(("7/5", "3/2"), ("8/5", "9/5")))


def test_sufficiency_examples():
    c = sufficiency_II(Ball(3), path(("1/2", 1), ("1/2", "7/2")))
    assert c is not None and c.t_star == 0
    c = sufficiency_II(E13, path(("2/5", "3/5"), ("2/5", "7/2")))
    assert c is not None and c.t_star == 0
    assert sufficiency_II(Ball(3), path(("6/5", "13/10"), ("6/5", "7/2"))) is None
    with pytest.raises(DomainError):
        sufficiency_II(Ball(3), path((2, 2), (2, 3)))


def test_general_criterion_examples():
    p = path(("1/2", 1), ("1/2", "7/2"))
    assert general_criterion(Ball(3), p) is not None
    forward = general_criterion(E13, LOOP)
    assert forward is not None and 0 <= forward.t_star <= 1
    assert general_criterion(Polydisk(1, 2), path(("2/5", "1/2"), ("2/5", "5/2"))) is not None
    with pytest.raises(DomainError):
        general_criterion(Ball(3), path((1, 1), (1, 4)))


def test_classify_examples():
    assert isinstance(classify(Ball(3), path(("1/2", 1), (1, "3/2"))), Lifts)
    assert isinstance(classify(E13, path(("9/20", "3/2"), ("9/20", "16/5"))), Obstructed)
    detour = classify(E13, path(("9/20", "3/2"), ("3/10", "4/5"), ("3/10", "16/5")))
    assert isinstance(detour, Lifts)
    assert verdict_to_json(detour)["verdict"] == "lifts"
    # leaves the image at r = 2/5, inside the r < a/2 strip of the shape invariant
    assert isinstance(classify(E13, path(("2/5", "3/5"), ("2/5", "7/2"))), Lifts)


def test_reversed_loop_is_obstructed():
    back = LOOP.reversed()
    assert obstruction_I(E13, back.subpath(0, 1)) is not None
    assert isinstance(classify(E13, back), Obstructed)
    assert isinstance(classify(E13, LOOP), Lifts)


def test_undetermined_zone_exists():
    # starts above the obstructing line but the ratio grows: neither criterion applies
    v = classify(Ball(3), path(("9/10", "13/10"), ("7/5", "8/5")))
    assert isinstance(v, Undetermined)


def test_explicit_breakpoints():
    p = path(("1/2", 1), ("1/2", "7/2"))
    single = general_criterion(Ball(3), p, [])
    assert single is not None and single.kind == "type_ii"
    with pytest.raises(DomainError):
        general_criterion(Ball(3), p, [F(2)])
    # exit, re-entry, then a Type-I stretch beyond the r < a/2 strip: needs a handover
    X = Ellipsoid(1, 3)
    zig = path(("3/10", "4/5"), ("3/10", 3), ("3/10", 1), ("3/5", 1))
    auto = general_criterion(X, zig)
    assert auto.kind == "concatenation" and recheck(X, zig, auto)
    # the handover set is the open interval (8/5, 8/3); its midpoint is chosen
    assert auto.breakpoints == [F(32, 15)]
    assert [p.kind for p in auto.parts] == ["type_ii", "type_i"]
    assert general_criterion(X, zig, []) is None
    assert general_criterion(X, zig, auto.breakpoints) is not None
    # a handover point where q does not fit is refused
    assert general_criterion(X, zig, [F(3, 2)]) is None


def test_toric_pl_domain_lifts_by_q_containment():
    X = ToricPL([(0, 24), (2, 17), (19, 0)])
    p = path((1, 2), (1, 30))
    v = classify(X, p)
    assert isinstance(v, Lifts) and recheck(X, p, v.certificate)
    assert v.certificate.criterion == "q_containment"
    assert isinstance(classify(X, path((7, 8), (7, 30))), Undetermined)


# --- properties -------------------------------------------------------------------

def test_sufficiency_matches_pointwise_oracle():
    rng = random.Random(7)
    checked = found = 0
    while checked < 300:
        X = random_domain(rng)
        p = random_path_from_mu_plus(rng, X)
        cert = sufficiency_II(X, p)
        grid = [p.T * F(i, 96) for i in range(97)] + [F(i) for i in range(len(p.vertices))]
        oracle_hit = any(oracle_feasible(X, p, t) for t in grid)
        if cert is not None:
            found += 1
            assert oracle_feasible(X, p, cert.t_star)
            assert recheck(X, p, cert)
        if oracle_hit:
            assert cert is not None
        checked += 1
    assert found > 20


def test_obstruction_and_sufficiency_are_exclusive():
    rng = random.Random(11)
    both_defined = 0
    for _ in range(600):
        X = random_domain(rng)
        p = random_path_from_mu_plus(rng, X)
        try:
            w = obstruction_I(X, p)
        except DomainError:
            continue
        both_defined += 1
        if w is not None:
            assert sufficiency_II(X, p) is None
            assert ratio_non_increasing(p)
    assert both_defined > 30


def test_certificates_recheck_on_random_paths():
    rng = random.Random(3)
    seen = 0
    for _ in range(300):
        X = random_domain(rng)
        p = random_path_from_mu_plus(rng, X)
        if any(v.r >= v.s for v in p.vertices):
            continue
        cert = general_criterion(X, p)
        if cert is not None:
            seen += 1
            assert recheck(X, p, cert)
    assert seen > 20


@given(st.sampled_from([Ball(3), Ellipsoid(1, 3), Ellipsoid(2, 8), Polydisk(1, 2)]),
       st.integers(1, 40), st.integers(1, 40))
def test_single_vertical_paths_agree_between_criteria(X, i, j):
    rmax, smax = bounding_box(X)
    r, s = rmax * F(i, 40), smax * F(j, 40)
    if r >= s:
        return
    p = PolyPath([(r, s), (r, smax + 1)])

    def outcome(fn):
        try:
            return fn(X, p) is not None
        except DomainError:
            return "error"
    assert outcome(sufficiency_II) == outcome(general_criterion)


@given(st.integers(-20, 0), st.data())
def test_halfplane_persists_along_ratio_decreasing_paths(M, data):
    N = data.draw(st.integers(0, -M))
    s0 = F(data.draw(st.integers(1, 80)), 4)
    r0 = s0 * F(data.draw(st.integers(1, 20)), 20)
    if M * r0 + N * s0 <= 0:
        return
    pts, ratio = [(r0, s0)], r0 / s0
    for _ in range(data.draw(st.integers(1, 4))):
        ratio *= F(data.draw(st.integers(1, 20)), 20)
        s = F(data.draw(st.integers(1, 200)), 4)
        if (ratio * s, s) != pts[-1]:
            pts.append((ratio * s, s))
    if len(pts) == 1:
        pts.append((r0, 2 * s0))
    p = PolyPath(pts)
    assert ratio_non_increasing(p)
    assert halfplane_persists(M, N, p)
