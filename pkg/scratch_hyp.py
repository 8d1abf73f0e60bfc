"""Throwaway sanity checks for hyperelliptic.py (deleted before finishing)."""
import math

import numpy as np

from discgroup import core
from discgroup.core import (
    Isometry, ProjPoint, classify, decompose_half_turns, dist, midpoint,
    reflection,
)
from discgroup import hyperelliptic as H
from discgroup.errors import (
    BadOrdering, DegeneratePair, NotDiscrete, RelationViolated,
    TooFewGenerators,
)

rng = np.random.default_rng(42)

PI = math.pi

# ---------------------------------------------------------------- builders

def rep_from_free(centers, n):
    """Complete n-2 free centers to a valid rep via half-turn decomposition."""
    P = Isometry.identity()
    for q in centers:
        P = reflection(q) @ P
    k = P.inverse()
    cls = classify(k)
    assert cls.tag == core.HYPERBOLIC, cls.tag
    s = float(rng.uniform(-1, 1))
    from discgroup.core import closest_to_origin, hyperbolic_power, Geodesic
    axis = Geodesic(cls.repeller, cls.attractor)
    anchor = hyperbolic_power(k, s).apply(closest_to_origin(axis))
    q1, q2 = decompose_half_turns(k, anchor)
    return H.validate(list(centers) + [q1, q2], n)


def random_interior(radius=0.6):
    r = math.sqrt(rng.uniform(0, 1)) * radius
    th = rng.uniform(0, 2 * PI)
    return ProjPoint.from_disc(r * math.e ** (1j * th))


# ------------------------------------------------- boundary-tuple build

tup5 = H.BoundaryTuple([0.5, 1.0, 1.8, 2.5], +1)
rep5 = H.from_boundary_tuple(tup5)
print("n=5 sign", rep5.sign)
a5 = rep5.area()
print("n=5 area", a5, "vs pi", a5 - PI)
assert abs(abs(a5) - PI) < 1e-9
# area should be POSITIVE for a + tuple (observe)
print("area sign for + tuple:", "positive" if a5 > 0 else "NEGATIVE")

# base-point independence + congruence mod 2pi to n*pi
for _ in range(5):
    p = random_interior()
    assert abs(rep5.area(p) - a5) < 1e-9
k = (a5 - 5 * PI) / (2 * PI)
assert abs(k - round(k)) < 1e-9, k

# verdict from every base index agrees
reports = [rep5.is_discrete(i) for i in range(1, 6)]
assert all(r.verdict == reports[0].verdict for r in reports)
print("n=5 verdict", reports[0].verdict)
assert reports[0].verdict == H.DISCRETE_POS
for r in reports:
    assert r.cycle.closure_error < 1e-9, r.cycle.closure_error

# round trip at construction slot
back = rep5.to_boundary_tuple(1)
err = max(abs(x - y) for x, y in zip(back.angles, tup5.angles))
print("n=5 tuple round-trip err", err)
assert err < 1e-9
assert back.sign == +1

# tuples at other base slots are valid (constructor enforces ordering)
for i in range(1, 6):
    rep5.to_boundary_tuple(i)

# mirror: area negates, verdict flips, tuple negates
m5 = H.mirror_rep(rep5)
assert abs(m5.area() + a5) < 1e-9
assert m5.is_discrete().verdict == H.DISCRETE_NEG
mtup = m5.to_boundary_tuple(1)
assert mtup.sign == -1
err = max(abs(x + y) for x, y in zip(mtup.angles, tup5.angles))
print("mirror tuple negation err", err)
assert err < 1e-9

# sign -1 tuple round trip
tneg = H.BoundaryTuple([-0.5, -1.0, -1.8, -2.5], -1)
rneg = H.from_boundary_tuple(tneg)
assert rneg.is_discrete().verdict == H.DISCRETE_NEG
bneg = rneg.to_boundary_tuple(1)
assert bneg.sign == -1
err = max(abs(x - y) for x, y in zip(bneg.angles, tneg.angles))
print("sign- round trip err", err)
assert err < 1e-9

# larger n round trips (gap profile matches the sampler: min gap 0.05)
def gapped_angles(n, gap=0.05):
    m = 2 * n - 6
    span = PI - gap * m
    assert span > 0
    s = np.sort(rng.uniform(0, span, size=m))
    return [gap / 2 + k * gap + s[k] for k in range(m)]

worst_resid = 0.0
for n in range(5, 13):
    for trial in range(20):
        t = H.BoundaryTuple(gapped_angles(n), +1)
        r = H.from_boundary_tuple(t)
        assert r.is_discrete().verdict == H.DISCRETE_POS
        b = r.to_boundary_tuple(1)
        err = max(abs(x - y) for x, y in zip(b.angles, t.angles))
        assert err < 1e-8, (n, trial, err)
        assert abs(abs(r.area()) - (n - 4) * PI) < 1e-7, (n, r.area())
print("round trips n=5..12 OK")

# conjugation invariance
g = reflection(ProjPoint.from_disc(0.3 + 0.1j))
c5 = rep5.conjugated(g)
assert abs(c5.area() - a5) < 1e-8
assert c5.is_discrete().verdict == H.DISCRETE_POS

# ------------------------------------------------- validation errors

try:
    H.validate([ProjPoint.from_disc(0.1 * k) for k in range(4)], 4)
    raise SystemExit("TooFewGenerators not raised")
except TooFewGenerators:
    pass
try:
    qs = list(rep5.centers)
    qs[2] = qs[1]
    H.validate(qs, 5)
    raise SystemExit("DegeneratePair not raised")
except DegeneratePair:
    pass
try:
    H.validate([random_interior() for _ in range(5)], 5)
    raise SystemExit("RelationViolated not raised")
except RelationViolated as e:
    assert e.residual is not None
try:
    H.BoundaryTuple([0.5, 0.4, 1.0, 2.0], +1)
    raise SystemExit("BadOrdering not raised")
except BadOrdering:
    pass

# ------------------------------------------------- earthquakes

rep6 = H.from_boundary_tuple(
    H.BoundaryTuple([0.4, 0.9, 1.4, 1.9, 2.4, 2.9], +1))
a6 = rep6.area()
assert abs(a6 - 2 * PI) < 1e-8, a6

for i in range(1, 7):
    for t in (-1.3, -0.5, 0.7, 1.0, 2.2):
        q = rep6.earthquake(i, t)
        assert abs(q.area() - a6) < 1e-9, (i, t, q.area() - a6)
        assert q.is_discrete().verdict == H.DISCRETE_POS
        # untouched centers stay put
        for j in range(1, 7):
            if j not in ((i - 2) % 6 + 1, (i - 1) % 6 + 1):
                assert q.center(j).close_to(rep6.center(j), 1e-12)
print("earthquake invariance OK (incl. wrap-around i=1)")

# additivity
for i in (1, 3, 6):
    s, t = 0.37, -1.21
    one = rep6.earthquake(i, s).earthquake(i, t)
    two = rep6.earthquake(i, s + t)
    for j in range(1, 7):
        assert one.center(j).close_to(two.center(j), 1e-10)
print("earthquake additivity OK")

# twist landmark: new q_{i-1} is old q_i
for i in (2, 5):
    tw = rep6.dehn_twist(i)
    assert tw.center(i - 1).close_to(rep6.center(i), 1e-10)
# inverse twist undoes
back6 = rep6.dehn_twist(3).earthquake(3, -1.0)
for j in range(1, 7):
    assert back6.center(j).close_to(rep6.center(j), 1e-10)
print("twist landmark + inverse OK")

# relation still exact after quakes (re-validate)
H.validate(rep6.earthquake(1, 0.8).centers, 6)
H.validate(rep6.earthquake(4, -2.0).centers, 6)

# ------------------------------------------------- automorphism identities

def same_rep(x, y, tol=1e-6):
    return all(x.center(j).close_to(y.center(j), tol)
               for j in range(1, x.n + 1))

n = 6
shift = rep6.apply_aut(["S"])
manual = [rep6.center(j + 1) for j in range(1, 7)]
for j in range(1, 7):
    assert shift.center(j).close_to(manual[j - 1], 1e-12)
assert same_rep(rep6.apply_aut(["S", "S^-1"]), rep6, 1e-12)

eword = [f"E{k}" for k in range(1, n)]            # E1..E5
assert same_rep(rep6.apply_aut(eword), shift), "S != E1..E5"
print("S = E1..E(n-1) OK")

jrep = rep6.apply_aut(["J"])
assert jrep.center(n).close_to(rep6.center(n), 1e-12)
for j in range(1, n):
    assert jrep.center(j).close_to(rep6.center(n - j), 1e-12)
assert abs(jrep.area() + a6) < 1e-8, "J must negate area"
assert same_rep(rep6.apply_aut(["J", "J"]), rep6, 1e-12)

# I_{r1} = E1 E2 .. E5 E6 E5 .. E2
iword = [f"E{k}" for k in range(1, n + 1)] + [f"E{k}" for k in
                                              range(n - 1, 1, -1)]
lhs = rep6.apply_aut(["I1"])
rhs = rep6.apply_aut(iword)
assert same_rep(lhs, rhs), "I_{r1} identity failed"
print("I_{r1} = E1..EnE(n-1)..E2 OK")

# braid and commutation
b1 = rep6.apply_aut(["E2", "E3", "E2"])
b2 = rep6.apply_aut(["E3", "E2", "E3"])
assert same_rep(b1, b2), "braid failed"
c1 = rep6.apply_aut(["E2", "E4"])
c2 = rep6.apply_aut(["E4", "E2"])
assert same_rep(c1, c2), "commutation failed"
print("braid + commutation OK")

# E_i^J = E_{n+1-i}^{-1}:  J E_i J = E_{n+1-i}^{-1}
for i in (1, 2, 3):
    x = rep6.apply_aut(["J", f"E{i}", "J"])
    y = rep6.apply_aut([f"E{n + 1 - i}^-1"])
    assert same_rep(x, y), f"E_{i}^J failed"
print("E_i^J = E_(n+1-i)^-1 OK")

# S^n = id, Shat^n = id, (S Shat)^2 = id
assert same_rep(rep6.apply_aut(["S"] * n), rep6, 1e-10)
shat = [f"E{k}" for k in range(n - 1, 0, -1)]     # E5..E1
assert same_rep(rep6.apply_aut(shat * n), rep6), "Shat^n failed"
assert same_rep(rep6.apply_aut((["S"] + shat) * 2), rep6), "(S Shat)^2 failed"
print("S^n, Shat^n, (S Shat)^2 identities OK")

# quake/verdict/area preserved under aut
for w in (["S"], ["J"], ["I3"], ["E2", "J", "S^-1"]):
    r = rep6.apply_aut(w)
    assert abs(abs(r.area()) - 2 * PI) < 1e-8
    assert r.is_discrete().verdict in (H.DISCRETE_POS, H.DISCRETE_NEG)

# ------------------------------------------------- fundamental polygon

for rep, n in ((rep5, 5), (rep6, 6)):
    poly = rep.fundamental_polygon()
    assert len(poly.vertices) == n
    print(f"n={n} polygon angle sum {poly.angle_sum}  area {poly.area}  "
          f"convex {poly.convex}")
    assert abs(poly.angle_sum - 2 * PI) < 1e-7, poly.angle_sum
    assert abs(poly.area - (n - 4) * PI) < 1e-7
    assert poly.convex
    for j in range(1, n + 1):
        assert poly.midpoints[j - 1].close_to(rep.center(j), 1e-7), j

# ------------------------------------------------- a non-maximal rep

found = None
for trial in range(200):
    try:
        free = [random_interior(0.75) for _ in range(4)]
        r = rep_from_free(free, 6)
    except Exception:
        continue
    ar = r.area()
    if abs(ar) < 1e-6:
        found = r
        break
assert found is not None, "no non-maximal n=6 rep found"
rep_bad = found
print("non-maximal n=6 area", rep_bad.area())
assert rep_bad.is_discrete().verdict == H.NOT_DISCRETE
try:
    rep_bad.to_boundary_tuple()
    raise SystemExit("NotDiscrete not raised for tuple of bad rep")
except NotDiscrete:
    pass
try:
    rep_bad.fundamental_polygon()
    raise SystemExit("NotDiscrete not raised for polygon of bad rep")
except NotDiscrete:
    pass
# verdict consistent across base indices even here
vs = {rep_bad.is_discrete(i).verdict for i in range(1, 7)}
assert vs == {H.NOT_DISCRETE}, vs
# quakes keep it non-maximal
assert rep_bad.earthquake(2, 0.9).is_discrete().verdict == H.NOT_DISCRETE
assert abs(rep_bad.earthquake(2, 0.9).area() - rep_bad.area()) < 1e-9

# maximal rep from generic builder (decompose path), n=5: always discrete
for trial in range(30):
    free = [random_interior(0.7) for _ in range(3)]
    try:
        r = rep_from_free(free, 5)
    except Exception:
        continue
    assert abs(abs(r.area()) - PI) < 1e-7, r.area()
    assert r.is_discrete().verdict in (H.DISCRETE_POS, H.DISCRETE_NEG)
print("generic pentagon always maximal OK")

print("ALL HYPERELLIPTIC SANITY CHECKS PASSED")
