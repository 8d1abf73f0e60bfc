"""Tests for reflection-group representations: validation, area,
certificates, coordinates, earthquakes, automorphisms, polygons."""
import math

import numpy as np
import pytest

from discgroup import core
from discgroup import hyperelliptic as H
from discgroup.core import Isometry, ProjPoint, classify, dist, reflection
from discgroup.errors import (
    BadOrdering,
    DegeneratePair,
    NonNegativePoint,
    NotDiscrete,
    RelationViolated,
    TooFewGenerators,
)

PI = math.pi
RNG = np.random.default_rng(555)


def gapped_angles(n, gap=0.05, rng=RNG):
    """Sorted angles in (0, pi), consecutive gaps >= gap, margins gap/2."""
    m = 2 * n - 6
    span = PI - gap * m
    s = np.sort(rng.uniform(0, span, size=m))
    return [gap / 2 + k * gap + s[k] for k in range(m)]


def rand_interior(radius=0.7, rng=RNG):
    r = math.sqrt(rng.uniform(0, 1)) * radius
    th = rng.uniform(0, 2 * PI)
    return ProjPoint.from_disc(r * complex(math.cos(th), math.sin(th)))


def rep_from_free(free_centers, n, rng=RNG):
    """Close n-2 arbitrary centers into a valid rep by splitting the
    inverse of their product into two half-turns along its axis."""
    from discgroup.core import (Geodesic, closest_to_origin,
                                decompose_half_turns, hyperbolic_power)
    prod = Isometry.identity()
    for q in free_centers:
        prod = reflection(q) @ prod
    k = prod.inverse()
    cls = classify(k)
    if cls.tag != core.HYPERBOLIC:
        raise ValueError("retry with other centers")
    axis = Geodesic(cls.repeller, cls.attractor)
    anchor = hyperbolic_power(k, float(rng.uniform(-1, 1))).apply(
        closest_to_origin(axis))
    q1, q2 = decompose_half_turns(k, anchor)
    return H.validate(list(free_centers) + [q1, q2], n)


def nonmaximal_rep(n=6, rng=None):
    rng = rng or np.random.default_rng(99)
    for _ in range(500):
        try:
            free = [rand_interior(0.75, rng) for _ in range(n - 2)]
            rep = rep_from_free(free, n, rng)
        except Exception:
            continue
        if abs(rep.area()) < 1e-6:
            return rep
    raise RuntimeError("no non-maximal sample found")


@pytest.fixture(scope="module")
def pent():
    return H.from_boundary_tuple(H.BoundaryTuple([0.5, 1.0, 1.8, 2.5], +1))


@pytest.fixture(scope="module")
def hexa():
    return H.from_boundary_tuple(
        H.BoundaryTuple([0.4, 0.9, 1.4, 1.9, 2.4, 2.9], +1))


@pytest.fixture(scope="module")
def bad6():
    return nonmaximal_rep(6)


# ---------------------------------------------------------------------------
# validation


def test_validate_records_sign(pent):
    assert pent.n == 5
    assert pent.sign in (+1, -1)
    # the defining product really is sign * identity
    prod = np.eye(2, dtype=complex)
    for j in range(1, 6):
        prod = pent.generator(j).mat @ prod
    assert np.linalg.norm(prod - pent.sign * np.eye(2)) < 1e-8


def test_validate_too_few():
    with pytest.raises(TooFewGenerators):
        H.validate([ProjPoint.from_disc(0.1 * k) for k in range(4)], 4)


def test_validate_degenerate_adjacent(pent):
    qs = list(pent.centers)
    qs[2] = qs[1]
    with pytest.raises(DegeneratePair):
        H.validate(qs, 5)


def test_validate_relation_violation(pent):
    # a 1e-3 nudge of one center must be caught
    qs = list(pent.centers)
    qs[2] = ProjPoint.from_disc(qs[2].disc + 1e-3)
    with pytest.raises(RelationViolated) as err:
        H.validate(qs, 5)
    assert err.value.residual > 1e-8


def test_validate_exterior_center(pent):
    qs = list(pent.centers)
    qs[0] = ProjPoint(np.array([2.0, 1.0]))
    with pytest.raises(NonNegativePoint):
        H.validate(qs, 5)


def test_generic_closure_always_validates():
    rng = np.random.default_rng(4)
    made = 0
    while made < 20:
        try:
            rep = rep_from_free([rand_interior(0.7, rng) for _ in range(3)],
                                5, rng)
        except Exception:
            continue
        made += 1
        assert rep.n == 5


# ---------------------------------------------------------------------------
# area


def test_area_pentagon_value(pent):
    assert abs(abs(pent.area()) - PI) < 1e-9


def test_area_base_point_independence(pent):
    a0 = pent.area()
    rng = np.random.default_rng(11)
    for _ in range(10):
        assert abs(pent.area(rand_interior(0.8, rng)) - a0) < 1e-8


def test_area_congruent_to_n_pi(pent, hexa, bad6):
    for rep in (pent, hexa, bad6):
        k = (rep.area() - rep.n * PI) / (2 * PI)
        assert abs(k - round(k)) < 1e-7


def test_area_bounded_by_max(pent, hexa, bad6):
    for rep in (pent, hexa, bad6):
        assert abs(rep.area()) <= (rep.n - 4) * PI + 1e-7


def test_reversal_negates_area(hexa):
    a = hexa.area()
    assert abs(hexa.apply_aut(["J"]).area() + a) < 1e-8


def test_area_rejects_exterior_base(pent):
    with pytest.raises(NonNegativePoint):
        pent.area(ProjPoint(np.array([2.0, 1.0])))


# ---------------------------------------------------------------------------
# certificates and verdicts


def test_cycle_size_and_orientation(hexa):
    cyc = hexa.i_cycle(1)
    assert len(cyc.points) == 2 * (hexa.n - 2)
    assert cyc.orientation == core.POSITIVE_CYCLE
    assert cyc.closure_error < 1e-8


def test_verdict_same_from_every_base_index(pent, hexa, bad6):
    for rep, expected in ((pent, H.DISCRETE_POS), (hexa, H.DISCRETE_POS),
                          (bad6, H.NOT_DISCRETE)):
        for i in range(1, rep.n + 1):
            assert rep.is_discrete(i).verdict == expected


def test_cycle_conjugation_equivariance(hexa):
    g = reflection(ProjPoint.from_disc(0.37 + 0.21j))
    moved = hexa.conjugated(g)
    c0 = hexa.i_cycle(2)
    c1 = moved.i_cycle(2)
    assert c1.orientation == c0.orientation
    for p, q in zip(c0.points, c1.points):
        assert g.apply(p).close_to(q, 1e-7)


def test_pentagon_always_discrete():
    # every valid pentagon is maximal
    rng = np.random.default_rng(31)
    made = 0
    while made < 25:
        try:
            rep = rep_from_free([rand_interior(0.7, rng) for _ in range(3)],
                                5, rng)
        except Exception:
            continue
        made += 1
        assert abs(abs(rep.area()) - PI) < 1e-7
        assert rep.is_discrete().verdict in (H.DISCRETE_POS, H.DISCRETE_NEG)


def test_nonmaximal_flagged(bad6):
    report = bad6.is_discrete()
    assert report.verdict == H.NOT_DISCRETE
    assert abs(report.area) < (bad6.n - 4) * PI - 1e-6
    assert not report.is_discrete


def test_mirror_flips_verdict(hexa):
    assert hexa.is_discrete().verdict == H.DISCRETE_POS
    assert H.mirror_rep(hexa).is_discrete().verdict == H.DISCRETE_NEG


# ---------------------------------------------------------------------------
# boundary coordinates


def test_boundary_tuple_validation():
    with pytest.raises(BadOrdering):
        H.BoundaryTuple([0.5, 0.4, 1.0, 2.0], +1)       # not increasing
    with pytest.raises(BadOrdering):
        H.BoundaryTuple([0.5, 1.0, 2.0], +1)            # odd count
    with pytest.raises(BadOrdering):
        H.BoundaryTuple([0.5, 1.0, 2.0, 3.2], +1)       # beyond pi
    with pytest.raises(BadOrdering):
        H.BoundaryTuple([0.5, 1.0, 1.5, 2.0], 2)        # bad sign
    with pytest.raises(BadOrdering):
        H.BoundaryTuple([-2.0, -1.5, -1.0, -0.5], -1)   # wrong order for -
    # the mirrored ordering itself is legal
    H.BoundaryTuple([-0.5, -1.0, -1.5, -2.0], -1)


def test_round_trip_pentagon(pent):
    tup = pent.to_boundary_tuple(1)
    assert tup.sign == +1
    for x, y in zip(tup.angles, (0.5, 1.0, 1.8, 2.5)):
        assert abs(x - y) < 1e-12


def test_round_trip_equally_spaced_hexagon():
    angles = [k * PI / 7 for k in range(1, 7)]
    rep = H.from_boundary_tuple(H.BoundaryTuple(angles, +1))
    assert rep.is_discrete().verdict == H.DISCRETE_POS
    assert abs(rep.area() - 2 * PI) < 1e-9
    back = rep.to_boundary_tuple(1)
    for x, y in zip(back.angles, angles):
        assert abs(x - y) < 1e-10


def test_round_trip_equally_spaced_pentagon():
    angles = [k * PI / 5 for k in range(1, 5)]
    rep = H.from_boundary_tuple(H.BoundaryTuple(angles, +1))
    assert rep.is_discrete().verdict == H.DISCRETE_POS
    assert abs(rep.area() - PI) < 1e-9


def test_round_trips_all_n():
    rng = np.random.default_rng(77)
    for n in range(5, 13):
        for _ in range(10):
            angles = gapped_angles(n, rng=rng)
            tup = H.BoundaryTuple(angles, +1)
            rep = H.from_boundary_tuple(tup)
            back = rep.to_boundary_tuple(1)
            err = max(abs(x - y) for x, y in zip(back.angles, angles))
            assert err < 1e-8, (n, err)


def test_round_trip_negative_sign():
    tup = H.BoundaryTuple([-0.5, -1.0, -1.8, -2.5], -1)
    rep = H.from_boundary_tuple(tup)
    assert rep.is_discrete().verdict == H.DISCRETE_NEG
    back = rep.to_boundary_tuple(1)
    assert back.sign == -1
    for x, y in zip(back.angles, tup.angles):
        assert abs(x - y) < 1e-10


def test_tuple_conjugation_invariance(hexa):
    g = reflection(ProjPoint.from_disc(0.3)) @ reflection(
        ProjPoint.from_disc(-0.2 + 0.4j))
    t0 = hexa.to_boundary_tuple(2)
    t1 = hexa.conjugated(g).to_boundary_tuple(2)
    assert t0.sign == t1.sign
    for x, y in zip(t0.angles, t1.angles):
        assert abs(x - y) < 1e-7


def test_tuple_of_nondiscrete_raises(bad6):
    with pytest.raises(NotDiscrete):
        bad6.to_boundary_tuple()


def test_mirror_negates_tuple(hexa):
    t0 = hexa.to_boundary_tuple(1)
    t1 = H.mirror_rep(hexa).to_boundary_tuple(1)
    assert t1.sign == -t0.sign
    for x, y in zip(t0.angles, t1.angles):
        assert abs(x + y) < 1e-9


# ---------------------------------------------------------------------------
# earthquakes and twists


def test_earthquake_zero_is_identity(hexa):
    out = hexa.earthquake(3, 0.0)
    for j in range(1, 7):
        assert out.center(j).close_to(hexa.center(j), 1e-12)


def test_earthquake_untouched_slots(hexa):
    out = hexa.earthquake(3, 0.8)
    for j in (1, 4, 5, 6):
        assert out.center(j).close_to(hexa.center(j), 1e-12)
    assert not out.center(2).close_to(hexa.center(2), 1e-6)
    assert not out.center(3).close_to(hexa.center(3), 1e-6)


def test_earthquake_preserves_area_and_verdict(hexa, bad6):
    for rep in (hexa, bad6):
        base_area = rep.area()
        verdict = rep.is_discrete().verdict
        rng = np.random.default_rng(8)
        for _ in range(10):
            i = int(rng.integers(1, rep.n + 1))
            t = float(rng.uniform(-2, 2))
            out = rep.earthquake(i, t)
            assert abs(out.area() - base_area) < 1e-9
            assert out.is_discrete().verdict == verdict


def test_earthquake_inverse_and_additivity(hexa):
    for i in (1, 4):
        undone = hexa.earthquake(i, 0.9).earthquake(i, -0.9)
        for j in range(1, 7):
            assert undone.center(j).close_to(hexa.center(j), 1e-9)
        split = hexa.earthquake(i, 0.4).earthquake(i, 0.35)
        joined = hexa.earthquake(i, 0.75)
        for j in range(1, 7):
            assert split.center(j).close_to(joined.center(j), 1e-9)


def test_twist_landmark(hexa):
    # the full twist moves the first center of the pair onto the second
    for i in (2, 5):
        out = hexa.dehn_twist(i)
        assert out.center(i - 1).close_to(hexa.center(i), 1e-9)


def test_earthquake_wraparound_index(hexa):
    out = hexa.earthquake(1, 1.3)       # pair (q_6, q_1)
    H.validate(out.centers, 6)          # relation survives the wrap
    assert abs(out.area() - hexa.area()) < 1e-9


def test_earthquake_preserves_relation(hexa):
    out = hexa.earthquake(4, -2.2)
    H.validate(out.centers, 6)


# ---------------------------------------------------------------------------
# automorphism words


def same_rep(x, y, tol=1e-6):
    return all(x.center(j).close_to(y.center(j), tol)
               for j in range(1, x.n + 1))


def test_shift_semantics(hexa):
    out = hexa.apply_aut(["S"])
    for j in range(1, 7):
        assert out.center(j).close_to(hexa.center(j + 1), 1e-12)
    assert same_rep(hexa.apply_aut(["S", "S^-1"]), hexa, 1e-12)


def test_reversal_semantics(hexa):
    out = hexa.apply_aut(["J"])
    assert out.center(6).close_to(hexa.center(6), 1e-12)
    for j in range(1, 6):
        assert out.center(j).close_to(hexa.center(6 - j), 1e-12)
    assert same_rep(hexa.apply_aut(["J", "J"]), hexa, 1e-12)


def test_reversal_sign(pent, hexa):
    # Reversal rebuilds the defining product from inverted half-turns,
    # so the identity it closes on gains (-1)**n: flip for odd n only.
    jp = pent.apply_aut(["J"])
    assert jp.sign == -pent.sign
    assert hexa.apply_aut(["J"]).sign == hexa.sign
    recheck = H.validate([q.disc for q in jp.centers])
    assert recheck.sign == jp.sign


def test_inner_semantics(hexa):
    out = hexa.apply_aut(["I2"])
    g = hexa.generator(2)
    for j in range(1, 7):
        assert out.center(j).close_to(g.apply(hexa.center(j)), 1e-10)


def test_shift_equals_twist_chain(hexa):
    word = [f"E{k}" for k in range(1, 6)]
    assert same_rep(hexa.apply_aut(word), hexa.apply_aut(["S"]))


def test_inner_equals_twist_chain(hexa):
    word = [f"E{k}" for k in range(1, 7)] + [f"E{k}" for k in range(5, 1, -1)]
    assert same_rep(hexa.apply_aut(word), hexa.apply_aut(["I1"]))


def test_braid_and_commutation(hexa):
    assert same_rep(hexa.apply_aut(["E2", "E3", "E2"]),
                    hexa.apply_aut(["E3", "E2", "E3"]))
    assert same_rep(hexa.apply_aut(["E2", "E4"]),
                    hexa.apply_aut(["E4", "E2"]))


def test_reversal_conjugates_twists(hexa):
    for i in (1, 2, 3):
        assert same_rep(hexa.apply_aut(["J", f"E{i}", "J"]),
                        hexa.apply_aut([f"E{6 + 1 - i}^-1"]))


def test_shift_order_identities(hexa):
    n = 6
    assert same_rep(hexa.apply_aut(["S"] * n), hexa, 1e-9)
    shat = [f"E{k}" for k in range(n - 1, 0, -1)]
    assert same_rep(hexa.apply_aut(shat * n), hexa)
    assert same_rep(hexa.apply_aut((["S"] + shat) * 2), hexa)


def test_letter_parsing_errors(hexa):
    for bad in ("E", "E0", "E9", "S3", "Q1", "I", "E2^2"):
        with pytest.raises(ValueError):
            hexa.apply_aut([bad])


# ---------------------------------------------------------------------------
# fundamental polygon


def test_polygon_shape(pent, hexa):
    for rep in (pent, hexa):
        poly = rep.fundamental_polygon()
        assert len(poly.vertices) == rep.n
        assert poly.convex
        assert abs(poly.angle_sum - 2 * PI) < 1e-7
        assert abs(poly.area - (rep.n - 4) * PI) < 1e-7


def test_polygon_edge_midpoints_are_centers(hexa):
    poly = hexa.fundamental_polygon()
    for j in range(1, 7):
        assert poly.midpoints[j - 1].close_to(hexa.center(j), 1e-7)


def test_polygon_closure_under_last_generator(hexa):
    poly = hexa.fundamental_polygon()
    img = hexa.generator(6).apply(poly.vertices[-1])
    assert img.close_to(poly.vertices[0], 1e-7)


def test_polygon_requires_discrete(bad6):
    with pytest.raises(NotDiscrete):
        bad6.fundamental_polygon()
