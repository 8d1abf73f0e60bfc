"""Geometry kernel tests: frozen oracles plus algebraic properties."""
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from discgroup import core
from discgroup.core import (
    Geodesic,
    Isometry,
    ProjPoint,
    classify,
    closest_to_origin,
    cycle_orientation,
    decompose_half_turns,
    dist,
    dist_to_geodesic,
    form,
    geodesic_intersection,
    geodesic_through,
    hyperbolic_power,
    klein_to_poincare,
    midpoint,
    normalizing_isometry,
    poincare_to_klein,
    polygon_area,
    reflection,
    triangle_area,
)
from discgroup.errors import (
    AnchorOffAxis,
    CoincidentGeodesics,
    DegeneratePoints,
    NonNegativePoint,
    NotHyperbolic,
)

RNG = np.random.default_rng(20240817)


def rand_interior(radius=0.8):
    r = math.sqrt(RNG.uniform(0, 1)) * radius
    th = RNG.uniform(0, 2 * math.pi)
    return ProjPoint.from_disc(r * complex(math.cos(th), math.sin(th)))


# ---------------------------------------------------------------------------
# points and the pairing


def test_point_classification():
    assert ProjPoint.from_disc(0.3 + 0.2j).cls == core.NEGATIVE
    assert ProjPoint.from_angle(1.0).cls == core.ISOTROPIC
    assert ProjPoint(np.array([2.0, 1.0])).cls == core.POSITIVE


def test_pairing_on_disc_points():
    p = ProjPoint.from_disc(0.5j)
    assert form(p.lift, p.lift).real == pytest.approx(-0.75, abs=1e-15)
    b = ProjPoint.from_angle(0.7)
    assert abs(form(b.lift, b.lift)) < 1e-15


def test_dist_closed_form():
    # dist(0, x) = 2 artanh |x|; at x = 0.5 this is log 3
    d = dist(ProjPoint.from_disc(0), ProjPoint.from_disc(0.5))
    assert d == pytest.approx(math.log(3.0), abs=1e-14)
    assert d == pytest.approx(2 * math.atanh(0.5), abs=1e-14)


def test_dist_rejects_boundary_points():
    with pytest.raises(NonNegativePoint):
        dist(ProjPoint.from_angle(0.3), ProjPoint.from_disc(0))


# ---------------------------------------------------------------------------
# reflections


def test_reflection_at_origin_is_diagonal():
    r = reflection(ProjPoint.from_disc(0))
    assert np.allclose(r.mat, np.diag([1j, -1j]), atol=1e-15)


def test_reflection_involution_bulk():
    # spec-scale run lives in the acceptance suite; spot-check 100 here
    for _ in range(100):
        q = rand_interior(0.95)
        r = reflection(q)
        assert np.linalg.norm(r.mat @ r.mat + np.eye(2)) < 1e-12 * max(
            1.0, np.linalg.norm(r.mat) ** 2)
        assert abs(np.trace(r.mat)) < 1e-12 * np.linalg.norm(r.mat)
        assert r.apply(q).close_to(q, 1e-9)


def test_reflection_swaps_geodesic_ends():
    # a half-turn reverses every geodesic through its center
    q = ProjPoint.from_disc(0.3 + 0.4j)
    g = geodesic_through(ProjPoint.from_disc(0), q)
    r = reflection(q)
    assert r.apply(g.start).close_to(g.end, 1e-8)
    assert r.apply(g.end).close_to(g.start, 1e-8)


def test_reflection_rejects_boundary_center():
    with pytest.raises(NonNegativePoint):
        reflection(ProjPoint.from_angle(0.2))


# ---------------------------------------------------------------------------
# classification and powers


def test_classify_standard_translation():
    # translation of length 1 along the real axis
    m = Isometry(np.array([[math.cosh(0.5), math.sinh(0.5)],
                           [math.sinh(0.5), math.cosh(0.5)]], dtype=complex))
    cls = classify(m)
    assert cls.tag == core.HYPERBOLIC
    assert cls.translation_length == pytest.approx(1.0, abs=1e-12)
    assert cls.repeller.disc == pytest.approx(-1.0, abs=1e-12)
    assert cls.attractor.disc == pytest.approx(1.0, abs=1e-12)
    # its translation distance at the origin equals the length
    moved = m.apply(ProjPoint.from_disc(0))
    assert dist(ProjPoint.from_disc(0), moved) == pytest.approx(1.0,
                                                                abs=1e-12)


def test_classify_identity_and_elliptic_and_parabolic():
    assert classify(Isometry.identity()).tag == core.IDENTITY
    assert classify(Isometry(-np.eye(2, dtype=complex))).tag == core.IDENTITY
    rot = Isometry(np.diag([np.exp(0.4j), np.exp(-0.4j)]))
    assert classify(rot).tag == core.ELLIPTIC
    par = Isometry(np.array([[1 + 1j, 1], [1, 1 - 1j]], dtype=complex))
    assert classify(par).tag == core.PARABOLIC


def test_pair_of_reflections_is_hyperbolic_with_double_distance():
    for _ in range(50):
        q1, q2 = rand_interior(), rand_interior()
        if dist(q1, q2) < 1e-3:
            continue
        cls = classify(reflection(q2) @ reflection(q1))
        assert cls.tag == core.HYPERBOLIC
        assert cls.translation_length == pytest.approx(2 * dist(q1, q2),
                                                       rel=1e-9)


def test_hyperbolic_power_additivity():
    m = Isometry(np.array([[math.cosh(1.0), math.sinh(1.0)],
                           [math.sinh(1.0), math.cosh(1.0)]], dtype=complex))
    third = hyperbolic_power(m, 1.0 / 3.0)
    cube = third @ third @ third
    assert cube.projectively_equal(m, 1e-12)
    a = hyperbolic_power(m, 0.7)
    b = hyperbolic_power(m, -0.2)
    assert (a @ b).projectively_equal(hyperbolic_power(m, 0.5), 1e-12)


def test_hyperbolic_power_random_exponents():
    q1 = ProjPoint.from_disc(0.2 - 0.1j)
    q2 = ProjPoint.from_disc(-0.3 + 0.25j)
    m = reflection(q2) @ reflection(q1)
    for _ in range(50):
        s, t = RNG.uniform(-3, 3, size=2)
        lhs = hyperbolic_power(m, s) @ hyperbolic_power(m, t)
        rhs = hyperbolic_power(m, s + t)
        assert lhs.projectively_equal(rhs, 1e-9)


def test_hyperbolic_power_rejects_elliptic():
    rot = Isometry(np.diag([np.exp(0.4j), np.exp(-0.4j)]))
    with pytest.raises(NotHyperbolic):
        hyperbolic_power(rot, 0.5)


# ---------------------------------------------------------------------------
# areas


def test_ideal_triangle_exact_value():
    # the standard positively oriented ideal triangle has area exactly +pi
    a = triangle_area(ProjPoint.from_disc(1), ProjPoint.from_disc(1j),
                      ProjPoint.from_disc(-1))
    assert abs(a - math.pi) < 1e-12


def test_triangle_antisymmetry_and_bound():
    for _ in range(200):
        pts = [rand_interior(0.99) for _ in range(3)]
        a = triangle_area(*pts)
        b = triangle_area(pts[0], pts[2], pts[1])
        assert abs(a + b) < 1e-10
        assert abs(a) <= math.pi + 1e-10


def test_triangle_cyclic_invariance():
    pts = [rand_interior() for _ in range(3)]
    a = triangle_area(*pts)
    assert triangle_area(pts[1], pts[2], pts[0]) == pytest.approx(a,
                                                                  abs=1e-12)


def test_triangle_gauss_bonnet_cross_oracle():
    # interior triangle: area = pi - angle sum, signed by orientation,
    # with angles from the hyperbolic law of cosines
    for _ in range(50):
        pts = [rand_interior(0.7) for _ in range(3)]
        sides = [dist(pts[(k + 1) % 3], pts[(k + 2) % 3]) for k in range(3)]
        if min(sides) < 1e-2:
            continue
        angles = []
        for k in range(3):
            a, b, c = sides[(k + 1) % 3], sides[(k + 2) % 3], sides[k]
            cosg = (math.cosh(a) * math.cosh(b) - math.cosh(c)) / (
                math.sinh(a) * math.sinh(b))
            angles.append(math.acos(max(-1.0, min(1.0, cosg))))
        defect = math.pi - sum(angles)
        got = triangle_area(*pts)
        assert abs(abs(got) - defect) < 1e-10


def test_triangle_repeated_isotropic_vertex_is_zero():
    b = ProjPoint.from_angle(0.9)
    assert triangle_area(b, b, ProjPoint.from_disc(0.2)) == 0.0


def test_ideal_quadrilateral_and_centre_independence():
    quad = [ProjPoint.from_disc(z) for z in (1, 1j, -1, -1j)]
    a0 = polygon_area(ProjPoint.from_disc(0), quad)
    assert a0 == pytest.approx(2 * math.pi, abs=1e-10)
    for _ in range(10):
        c = rand_interior(0.9)
        assert polygon_area(c, quad) == pytest.approx(a0, abs=1e-9)


def test_polygon_area_rejects_exterior_centre():
    with pytest.raises(NonNegativePoint):
        polygon_area(ProjPoint(np.array([2.0, 1.0])),
                     [rand_interior() for _ in range(3)])


def test_area_isometry_invariance():
    pts = [rand_interior() for _ in range(3)]
    g = reflection(ProjPoint.from_disc(0.4j)) @ reflection(
        ProjPoint.from_disc(0.1))
    moved = [g.apply(p) for p in pts]
    assert triangle_area(*moved) == pytest.approx(triangle_area(*pts),
                                                  abs=1e-10)


# ---------------------------------------------------------------------------
# cycle orientation


def test_cycle_orientation_basic():
    plus = [ProjPoint.from_angle(a) for a in (0.1, 1.0, 2.0, 3.0, 4.5)]
    assert cycle_orientation(plus) == core.POSITIVE_CYCLE
    assert cycle_orientation(list(reversed(plus))) == core.NEGATIVE_CYCLE
    mixed = [ProjPoint.from_angle(a) for a in (0.1, 2.0, 1.0, 3.0)]
    assert cycle_orientation(mixed) == core.NEITHER


def test_cycle_orientation_rotation_and_reversal():
    angles = [0.2, 0.9, 1.7, 2.8, 4.0, 5.1]
    pts = [ProjPoint.from_angle(a) for a in angles]
    base = cycle_orientation(pts)
    for k in range(1, len(pts)):
        rotated = pts[k:] + pts[:k]
        assert cycle_orientation(rotated) == base
    flipped = cycle_orientation(list(reversed(pts)))
    assert {base, flipped} == {core.POSITIVE_CYCLE, core.NEGATIVE_CYCLE}


def test_cycle_orientation_coincident_points_neither():
    pts = [ProjPoint.from_angle(a) for a in (0.3, 0.3, 1.0, 2.0)]
    assert cycle_orientation(pts) == core.NEITHER


# ---------------------------------------------------------------------------
# geodesics


def test_diameters_cross_at_origin():
    g1 = Geodesic(ProjPoint.from_angle(math.pi), ProjPoint.from_angle(0))
    g2 = Geodesic(ProjPoint.from_angle(-math.pi / 2),
                  ProjPoint.from_angle(math.pi / 2))
    x = geodesic_intersection(g1, g2)
    assert abs(x.disc) < 1e-14


def test_noncrossing_geodesics_and_shared_endpoint():
    g1 = Geodesic(ProjPoint.from_angle(0.1), ProjPoint.from_angle(0.5))
    g2 = Geodesic(ProjPoint.from_angle(1.0), ProjPoint.from_angle(2.0))
    assert geodesic_intersection(g1, g2) is None
    g3 = Geodesic(ProjPoint.from_angle(0.1), ProjPoint.from_angle(2.0))
    assert geodesic_intersection(g1, g3) is None  # shared endpoint
    with pytest.raises(CoincidentGeodesics):
        geodesic_intersection(g1, Geodesic(g1.end, g1.start))


def test_intersection_lies_on_both():
    done = 0
    while done < 30:
        a = sorted(RNG.uniform(0, 2 * math.pi, size=4))
        gaps = [a[k + 1] - a[k] for k in range(3)] + [a[0] + 2 * math.pi
                                                      - a[3]]
        if min(gaps) < 0.1:        # nearly tangent chords lose precision
            continue
        done += 1
        g1 = Geodesic(ProjPoint.from_angle(a[0]), ProjPoint.from_angle(a[2]))
        g2 = Geodesic(ProjPoint.from_angle(a[1]), ProjPoint.from_angle(a[3]))
        x = geodesic_intersection(g1, g2)
        assert x is not None
        # near zero separation acosh amplifies rounding to ~sqrt(eps),
        # so 1e-7 is the honest resolution of this ruler
        assert dist_to_geodesic(x, g1) < 1e-7
        assert dist_to_geodesic(x, g2) < 1e-7


def test_klein_round_trip():
    for _ in range(100):
        z = rand_interior(0.999).disc
        assert abs(klein_to_poincare(poincare_to_klein(z)) - z) < 1e-12


def test_geodesic_through_orientation():
    p, q = ProjPoint.from_disc(0.1), ProjPoint.from_disc(0.5)
    g = geodesic_through(p, q)
    # oriented from p towards q along the real axis
    assert g.start.disc == pytest.approx(-1.0, abs=1e-9)
    assert g.end.disc == pytest.approx(1.0, abs=1e-9)
    with pytest.raises(DegeneratePoints):
        geodesic_through(p, p)


def test_dist_to_geodesic_and_foot():
    g = Geodesic(ProjPoint.from_angle(math.pi), ProjPoint.from_angle(0))
    p = ProjPoint.from_disc(0.3j)
    d = dist_to_geodesic(p, g)
    assert d == pytest.approx(dist(p, ProjPoint.from_disc(0)), abs=1e-10)
    assert dist_to_geodesic(ProjPoint.from_disc(0.2), g) < 1e-12


def test_closest_to_origin():
    g = Geodesic(ProjPoint.from_angle(math.pi), ProjPoint.from_angle(0))
    assert abs(closest_to_origin(g).disc) < 1e-12
    h = Geodesic(ProjPoint.from_angle(0.4), ProjPoint.from_angle(1.9))
    foot = closest_to_origin(h)
    assert dist_to_geodesic(foot, h) < 1e-10
    assert dist(ProjPoint.from_disc(0), foot) == pytest.approx(
        dist_to_geodesic(ProjPoint.from_disc(0), h), abs=1e-10)


# ---------------------------------------------------------------------------
# midpoints, half-turn decomposition, normalization


def test_midpoint_is_between():
    for _ in range(50):
        p, q = rand_interior(), rand_interior()
        if dist(p, q) < 1e-3:
            continue
        m = midpoint(p, q)
        dp, dq = dist(p, m), dist(m, q)
        assert abs(dp - dq) < 1e-12
        assert abs(dp + dq - dist(p, q)) < 1e-12


def test_decompose_half_turns_frozen_value():
    # length-2 translation along the real axis, anchored at the origin:
    # the second half-turn center is tanh(1/2)
    m = Isometry(np.array([[math.cosh(1.0), math.sinh(1.0)],
                           [math.sinh(1.0), math.cosh(1.0)]], dtype=complex))
    q1, q2 = decompose_half_turns(m, ProjPoint.from_disc(0))
    assert abs(q1.disc) < 1e-14
    assert q2.disc.real == pytest.approx(math.tanh(0.5), abs=1e-13)
    assert abs(q2.disc.imag) < 1e-13
    assert (reflection(q2) @ reflection(q1)).projectively_equal(m, 1e-12)


def test_decompose_default_anchor_and_off_axis():
    m = Isometry(np.array([[math.cosh(1.0), math.sinh(1.0)],
                           [math.sinh(1.0), math.cosh(1.0)]], dtype=complex))
    q1, q2 = decompose_half_turns(m)       # default anchor: nearest to 0
    assert abs(q1.disc) < 1e-10
    assert (reflection(q2) @ reflection(q1)).projectively_equal(m, 1e-10)
    with pytest.raises(AnchorOffAxis):
        decompose_half_turns(m, ProjPoint.from_disc(0.3j))
    with pytest.raises(NotHyperbolic):
        decompose_half_turns(Isometry.identity())


def test_decompose_random_pairs():
    for _ in range(30):
        q1, q2 = rand_interior(), rand_interior()
        if dist(q1, q2) < 1e-2:
            continue
        m = reflection(q2) @ reflection(q1)
        r1, r2 = decompose_half_turns(m, q1)
        assert r1.close_to(q1, 1e-9)
        assert r2.close_to(q2, 1e-8)


def test_normalizing_isometry():
    for _ in range(30):
        p, q = rand_interior(), rand_interior()
        if dist(p, q) < 1e-2:
            continue
        g = geodesic_through(p, q)
        iso = normalizing_isometry(g.start, g.end, p)
        assert iso.apply(g.start).close_to(ProjPoint.from_angle(math.pi),
                                           1e-8)
        assert iso.apply(g.end).close_to(ProjPoint.from_angle(0.0), 1e-8)
        assert abs(iso.apply(p).disc) < 1e-8
    with pytest.raises(AnchorOffAxis):
        b, e = ProjPoint.from_angle(0.4), ProjPoint.from_angle(2.0)
        normalizing_isometry(b, e, ProjPoint.from_disc(0.9 * 1j ** 0.5))


# ---------------------------------------------------------------------------
# isometry bookkeeping


def test_isometry_rejects_non_form_preserving():
    with pytest.raises(Exception):
        Isometry(np.array([[2.0, 0.0], [0.0, 0.5]], dtype=complex))


def test_projective_equality():
    m = reflection(ProjPoint.from_disc(0.2))
    minus = Isometry(-m.mat)
    assert m.projectively_equal(minus)
    assert m.projectively_equal(m)
    assert not m.projectively_equal(Isometry.identity())


def test_inverse_and_apply():
    g = reflection(ProjPoint.from_disc(0.3)) @ reflection(
        ProjPoint.from_disc(-0.2j))
    assert (g @ g.inverse()).projectively_equal(Isometry.identity(), 1e-12)
    p = rand_interior()
    assert g.inverse().apply(g.apply(p)).close_to(p, 1e-10)


def test_isometry_preserves_distance():
    g = reflection(ProjPoint.from_disc(0.25 + 0.55j))
    for _ in range(20):
        p, q = rand_interior(), rand_interior()
        assert dist(g.apply(p), g.apply(q)) == pytest.approx(dist(p, q),
                                                             abs=1e-10)


# ---------------------------------------------------------------------------
# hypothesis properties

disc_points = st.complex_numbers(max_magnitude=0.93).filter(
    lambda z: abs(z) < 0.93)


@settings(max_examples=60, deadline=None)
@given(disc_points)
def test_reflection_involution_property(z):
    r = reflection(ProjPoint.from_disc(z))
    assert np.linalg.norm(r.mat @ r.mat + np.eye(2)) < 1e-10 * max(
        1.0, np.linalg.norm(r.mat) ** 2)


@settings(max_examples=60, deadline=None)
@given(disc_points, disc_points)
def test_dist_symmetry_property(za, zb):
    p, q = ProjPoint.from_disc(za), ProjPoint.from_disc(zb)
    assert dist(p, q) == pytest.approx(dist(q, p), abs=1e-12)
    assert dist(p, p) < 1e-6


@settings(max_examples=40, deadline=None)
@given(st.floats(min_value=-2.5, max_value=2.5),
       st.floats(min_value=-2.5, max_value=2.5))
def test_power_additivity_property(s, t):
    m = Isometry(np.array([[math.cosh(0.6), math.sinh(0.6)],
                           [math.sinh(0.6), math.cosh(0.6)]], dtype=complex))
    lhs = hyperbolic_power(m, s) @ hyperbolic_power(m, t)
    assert lhs.projectively_equal(hyperbolic_power(m, s + t), 1e-10)
