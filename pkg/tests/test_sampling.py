"""Tests for the seeded samplers and the brute-force oracles."""
import math

import numpy as np
import pytest

from discgroup import core
from discgroup import hyperelliptic as H
from discgroup import sampling as SA
from discgroup import surface as S
from discgroup.core import Isometry, ProjPoint, classify, dist, reflection
from discgroup.errors import (
    BudgetExceeded,
    NonNegativePoint,
    RetryBudgetExhausted,
)

PI = math.pi


def nonmax_rep(n=6, seed=99):
    rng = np.random.default_rng(seed)
    for _ in range(800):
        try:
            free = []
            for _k in range(n - 2):
                r = math.sqrt(rng.uniform(0, 1)) * 0.75
                th = rng.uniform(0, 2 * PI)
                free.append(ProjPoint.from_disc(r * np.exp(1j * th)))
            k = Isometry.identity()
            for q in free:
                k = reflection(q) @ k
            k = k.inverse()
            if classify(k).tag != core.HYPERBOLIC:
                continue
            q1, q2 = core.decompose_half_turns(k)
            rep = H.validate([*(p.disc for p in free), q1.disc, q2.disc])
        except Exception:
            continue
        if abs(abs(rep.area()) - (n - 4) * PI) > 1e-3:
            return rep
    raise RuntimeError("no non-maximal sample found")


@pytest.fixture(scope="module")
def hexa():
    return SA.sample_discrete(SA.SampleConfig(n=6, seed=1))


@pytest.fixture(scope="module")
def bad6():
    return nonmax_rep()


# ---------------------------------------------------------------------------
# configuration


def test_config_validation():
    SA.SampleConfig(n=5, seed=0)
    with pytest.raises(ValueError):
        SA.SampleConfig(n=4, seed=0)
    with pytest.raises(ValueError):
        SA.SampleConfig(n=6, seed=0, sign=2)
    with pytest.raises(ValueError):
        SA.SampleConfig(n=6, seed=0, min_gap=-0.1)
    with pytest.raises(ValueError):
        SA.SampleConfig(n=12, seed=0, min_gap=0.2)   # 18 gaps exceed pi
    with pytest.raises(ValueError):
        SA.SampleConfig(n=6, seed=0, retry_budget=0)


# ---------------------------------------------------------------------------
# discrete sampler


def test_sample_discrete_is_discrete(hexa):
    assert hexa.is_discrete().verdict == H.DISCRETE_POS
    assert abs(hexa.area() - 2 * PI) < 1e-9


def test_sample_discrete_large_n():
    rep = SA.sample_discrete(SA.SampleConfig(n=12, seed=7))
    assert rep.is_discrete().verdict == H.DISCRETE_POS
    assert abs(rep.area() - 8 * PI) < 1e-8


def test_sample_discrete_deterministic():
    cfg = SA.SampleConfig(n=8, seed=123)
    a = SA.sample_discrete(cfg)
    b = SA.sample_discrete(cfg)
    for p, q in zip(a.centers, b.centers):
        assert complex(p.disc) == complex(q.disc)


def test_sample_discrete_negative_sign():
    rep = SA.sample_discrete(SA.SampleConfig(n=6, seed=3, sign=-1))
    assert rep.is_discrete().verdict == H.DISCRETE_NEG
    assert abs(rep.area() + 2 * PI) < 1e-9


def test_sample_discrete_index_streams():
    # batch substreams are independent yet reproducible
    cfg = SA.SampleConfig(n=6, seed=42)
    a0 = SA.sample_discrete(cfg, index=0)
    a1 = SA.sample_discrete(cfg, index=1)
    assert not a0.center(2).close_to(a1.center(2), 1e-6)
    again = SA.sample_discrete(cfg, index=1)
    for p, q in zip(a1.centers, again.centers):
        assert complex(p.disc) == complex(q.disc)


def test_sample_discrete_respects_gap():
    rep = SA.sample_discrete(SA.SampleConfig(n=10, seed=5, min_gap=0.1))
    tup = rep.to_boundary_tuple(1)
    gaps = np.diff(tup.angles)
    assert min(gaps) >= 0.1 - 1e-12


# ---------------------------------------------------------------------------
# generic sampler


def test_sample_generic_valid_and_bounded():
    cfg = SA.SampleConfig(n=6, seed=11)
    seen_nonmax = False
    for idx in range(30):
        rep = SA.sample_generic(cfg, index=idx)
        assert rep.n == 6
        a = rep.area()
        assert abs(a) <= 2 * PI + 1e-7
        if abs(a) < 2 * PI - 0.1:
            seen_nonmax = True
            assert rep.is_discrete().verdict == H.NOT_DISCRETE
    assert seen_nonmax


def test_sample_generic_deterministic():
    cfg = SA.SampleConfig(n=8, seed=77)
    a = SA.sample_generic(cfg, index=4)
    b = SA.sample_generic(cfg, index=4)
    for p, q in zip(a.centers, b.centers):
        assert complex(p.disc) == complex(q.disc)


# ---------------------------------------------------------------------------
# orbit probe


def test_probe_consistent_on_discrete(hexa):
    report = SA.orbit_probe(hexa, 4, 1e-3)
    assert report.verdict == SA.CONSISTENT
    assert report.min_displacement > 1e-3
    assert report.colliding_pair is None


def test_probe_identity_only_is_inconclusive(hexa):
    assert SA.orbit_probe(hexa, 0, 1e-3).verdict == SA.INCONCLUSIVE


def test_probe_never_certifies_nonmaximal(bad6):
    # a broken rep carries elliptic words whose powers accumulate; the
    # probe may or may not catch one this shallow, but must not certify
    report = SA.orbit_probe(bad6, 6, 1e-3)
    assert report.verdict in (SA.VIOLATION, SA.INCONCLUSIVE)


def test_probe_violation_reports_colliding_pair(bad6):
    shallow = SA.orbit_probe(bad6, 6, 1e-3)
    floor = shallow.min_displacement * 2
    report = SA.orbit_probe(bad6, 6, floor)
    assert report.verdict == SA.VIOLATION
    left, right = report.colliding_pair
    # the two orbit words really do collide to within the floor
    def apply_word(word, p):
        for a in reversed(word):
            p = reflection(bad6.center(abs(a))).apply(p)
        return p
    d = dist(apply_word(left, report.base), apply_word(right, report.base))
    assert d < floor
    assert abs(d - report.min_displacement) < 1e-9


def test_probe_word_budget(hexa):
    with pytest.raises(BudgetExceeded):
        SA.orbit_probe(hexa, 6, 1e-3, word_cap=100)


def test_probe_surface_rep(hexa):
    rep = S.from_hyperelliptic(hexa)
    report = SA.orbit_probe(rep, 3, 1e-3)
    assert report.verdict == SA.CONSISTENT


# ---------------------------------------------------------------------------
# tiling oracle


def test_tiling_hyperelliptic_polygon(hexa):
    poly = hexa.fundamental_polygon()
    pair = [hexa.generator(i) for i in range(1, 7)]
    report = SA.tiling_check(poly, pair, depth=2, samples_per_cell=10)
    assert report
    assert report.cells_checked == 1 + 6 + 6 * 5


def test_tiling_surface_polygon(hexa):
    rep = S.from_hyperelliptic(hexa)
    poly = S.fundamental_polygon_surface(rep)
    report = SA.tiling_check(poly, poly.pairings, depth=2,
                             samples_per_cell=10)
    assert report


def test_tiling_depth_zero_vacuous(hexa):
    poly = hexa.fundamental_polygon()
    report = SA.tiling_check(poly, [hexa.generator(1)], depth=0)
    assert report
    assert report.cells_checked == 1


def test_tiling_catches_overlap(hexa):
    # a near-identity pairing drags a copy onto the original
    rep = S.from_hyperelliptic(hexa)
    poly = S.fundamental_polygon_surface(rep)
    crawl = core.hyperbolic_power(rep.gen(2), 0.01)
    report = SA.tiling_check(poly, [crawl] + list(poly.pairings[1:]),
                             depth=1, samples_per_cell=10)
    assert not report
    assert report.witness_point is not None
    assert report.witness_words is not None


# ---------------------------------------------------------------------------
# area oracle


def ideal_square():
    return [ProjPoint.from_angle(a)
            for a in (0.3, 0.3 + PI / 2, 0.3 + PI, 0.3 + 3 * PI / 2)]


def test_area_oracle_ideal_square():
    centres = [ProjPoint.from_disc(z)
               for z in (0, 0.2 + 0.1j, -0.3j, 0.5, -0.4 + 0.2j)]
    assert abs(SA.area_oracle(ideal_square(), centres) - 2 * PI) < 1e-9


def test_area_oracle_two_point_cycle():
    sq = ideal_square()
    centres = [ProjPoint.from_disc(0), ProjPoint.from_disc(0.3)]
    assert abs(SA.area_oracle(sq[:2], centres)) < 1e-12


def test_area_oracle_matches_orbit_area(hexa):
    # rebuild the defining orbit polygon by chaining the half-turns
    p0 = ProjPoint.from_disc(0)
    orbit, v = [], p0
    for i in range(1, 7):
        v = reflection(hexa.center(i)).apply(v)
        orbit.append(v)
    centres = [p0, hexa.center(1), ProjPoint.from_angle(2.2)]
    assert abs(SA.area_oracle(orbit, centres) - hexa.area()) < 1e-8


def test_area_oracle_rejects_exterior_centre():
    with pytest.raises(NonNegativePoint):
        SA.area_oracle(ideal_square(), [ProjPoint(np.array([2.0, 1.0]))])


# ---------------------------------------------------------------------------
# cross-validation of the two discreteness routes


def test_routes_agree_on_mixed_batch():
    agree = 0
    for idx in range(12):
        rep = SA.sample_generic(SA.SampleConfig(n=6, seed=2024), index=idx)
        verdict = rep.is_discrete()
        maximal = abs(abs(verdict.area) - 2 * PI) < 1e-6
        assert verdict.is_discrete == maximal
        probe = SA.orbit_probe(rep, 4, 1e-3)
        if verdict.is_discrete:
            assert probe.verdict != SA.VIOLATION
        agree += 1
    assert agree == 12
