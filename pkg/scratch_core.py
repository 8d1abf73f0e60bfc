"""Throwaway sanity checks for the kernel (deleted before finishing)."""
import math
import numpy as np
from discgroup import core as C

# reflection at centre
R0 = C.reflection(C.ProjPoint.from_disc(0))
print("R(0) =", R0.mat, "expect diag(i,-i)")
assert np.allclose(R0.mat, np.diag([1j, -1j]))
p = C.ProjPoint.from_disc(0.3 + 0.2j)
print("R(0).z:", R0.apply(p).disc, "expect -0.3-0.2j")

# R(q)^2 = -1 for random q
rng = np.random.default_rng(0)
for _ in range(5):
    z = (rng.random() * 0.9) * np.exp(2j * np.pi * rng.random())
    R = C.reflection(C.ProjPoint.from_disc(z))
    sq = (R @ R).mat
    assert np.allclose(sq, -np.eye(2), atol=1e-12), sq
    assert abs(R.trace) < 1e-12
    assert R.apply(C.ProjPoint.from_disc(z)).close_to(C.ProjPoint.from_disc(z))

# classify translation along real axis, length 1
l = 1.0
m = C.Isometry([[math.cosh(l / 2), math.sinh(l / 2)],
                [math.sinh(l / 2), math.cosh(l / 2)]])
cls = C.classify(m)
print("tag", cls.tag, "len", cls.translation_length,
      "rep", cls.repeller.disc, "att", cls.attractor.disc)
assert cls.tag == C.HYPERBOLIC
assert abs(cls.translation_length - 1.0) < 1e-12
assert abs(cls.repeller.disc - (-1)) < 1e-9
assert abs(cls.attractor.disc - 1) < 1e-9
# dist(0, m 0) == length
z0 = C.ProjPoint.from_disc(0)
print("dist check:", C.dist(z0, m.apply(z0)))

# power additivity
g = C.hyperbolic_power(m, 1 / 3)
ggg = g @ g @ g
assert ggg.projectively_equal(m, 1e-12)
h = C.hyperbolic_power(m, 0.7) @ C.hyperbolic_power(m, -0.2)
assert h.projectively_equal(C.hyperbolic_power(m, 0.5), 1e-12)

# triangle area: ideal (1, i, -1) -> pi
t = C.triangle_area(C.ProjPoint.from_angle(0),
                    C.ProjPoint.from_angle(math.pi / 2),
                    C.ProjPoint.from_angle(math.pi))
print("ideal triangle:", t, "expect", math.pi)
assert abs(t - math.pi) < 1e-12

# small triangle vs law-of-cosines Gauss-Bonnet
a = C.ProjPoint.from_disc(0)
b = C.ProjPoint.from_disc(0.1)
c = C.ProjPoint.from_disc(0.1j)


def angle_at(v, u, w):
    la, lb, lc = C.dist(v, u), C.dist(v, w), C.dist(u, w)
    return math.acos((math.cosh(la) * math.cosh(lb) - math.cosh(lc))
                     / (math.sinh(la) * math.sinh(lb)))


gb = math.pi - (angle_at(a, b, c) + angle_at(b, c, a) + angle_at(c, a, b))
t2 = C.triangle_area(a, b, c)
print("small triangle:", t2, "gauss-bonnet:", gb)
assert abs(abs(t2) - gb) < 1e-12
assert t2 > 0  # 0 -> 0.1 -> 0.1i is counterclockwise

# ideal quadrilateral area 2 pi, centre independence
quad = [C.ProjPoint.from_angle(th) for th in (0, math.pi / 2, math.pi, -math.pi / 2)]
a1 = C.polygon_area(C.ProjPoint.from_disc(0), quad)
a2 = C.polygon_area(C.ProjPoint.from_disc(0.3), quad)
print("quad:", a1, a2)
assert abs(a1 - 2 * math.pi) < 1e-12 and abs(a1 - a2) < 1e-12

# cycle orientation
pts = [C.ProjPoint.from_angle(th) for th in (0.1, 1.0, 2.0, 3.0, -2.0)]
assert C.cycle_orientation(pts) == "positive"
assert C.cycle_orientation(pts[::-1]) == "negative"
assert C.cycle_orientation([pts[0], pts[2], pts[1], pts[3], pts[4]]) == "neither"

# geodesic intersection: G[-1,1] x G[-i,i] = 0
g1 = C.Geodesic(C.ProjPoint.from_angle(math.pi), C.ProjPoint.from_angle(0))
g2 = C.Geodesic(C.ProjPoint.from_angle(-math.pi / 2), C.ProjPoint.from_angle(math.pi / 2))
x = C.geodesic_intersection(g1, g2)
print("intersection:", x.disc)
assert abs(x.disc) < 1e-12
# non-crossing
g3 = C.Geodesic(C.ProjPoint.from_angle(0.1), C.ProjPoint.from_angle(0.2))
assert C.geodesic_intersection(g2, g3) is None

# generic intersection lies on both geodesics
g4 = C.Geodesic(C.ProjPoint.from_angle(0.3), C.ProjPoint.from_angle(2.5))
g5 = C.Geodesic(C.ProjPoint.from_angle(1.1), C.ProjPoint.from_angle(-2.0))
y = C.geodesic_intersection(g4, g5)
print("dist to g4:", C.dist_to_geodesic(y, g4), "g5:", C.dist_to_geodesic(y, g5))
assert C.dist_to_geodesic(y, g4) < 1e-10 and C.dist_to_geodesic(y, g5) < 1e-10

# decompose half turns: length-2 translation along real axis from 0
m2 = C.Isometry([[math.cosh(1.0), math.sinh(1.0)],
                 [math.sinh(1.0), math.cosh(1.0)]])
q1, q2 = C.decompose_half_turns(m2, C.ProjPoint.from_disc(0))
print("q2:", q2.disc, "expect", math.tanh(0.5))
assert abs(q2.disc - math.tanh(0.5)) < 1e-12
prod = C.reflection(q2) @ C.reflection(q1)
assert prod.projectively_equal(m2, 1e-12)

# default anchor = closest axis point to origin
qa, qb = C.decompose_half_turns(m2)
assert abs(qa.disc) < 1e-12

# normalizing isometry
b = C.ProjPoint.from_angle(2.0)
e = C.ProjPoint.from_angle(-1.0)
mid = C.geodesic_intersection(C.Geodesic(b, e),
                              C.Geodesic(C.ProjPoint.from_angle(0.5),
                                         C.ProjPoint.from_angle(-2.8)))
gg = C.normalizing_isometry(b, e, mid)
print("g(b):", gg.apply(b).disc, "g(e):", gg.apply(e).disc, "g(q):", gg.apply(mid).disc)
assert gg.apply(b).close_to(C.ProjPoint.from_disc(-1), 1e-9)
assert gg.apply(e).close_to(C.ProjPoint.from_disc(1), 1e-9)
assert abs(gg.apply(mid).disc) < 1e-9

# midpoint / dist consistency
pp = C.ProjPoint.from_disc(0.5 + 0.1j)
qq = C.ProjPoint.from_disc(-0.2 + 0.6j)
mm = C.midpoint(pp, qq)
assert abs(C.dist(pp, mm) - C.dist(qq, mm)) < 1e-12
assert abs(C.dist(pp, mm) + C.dist(mm, qq) - C.dist(pp, qq)) < 1e-12

print("ALL CORE SANITY CHECKS PASSED")
