"""Representations of the hyperelliptic reflection group into disc isometries.

A representation of the rank-n group generated by n involutions whose
descending product is trivial is stored through the n half-turn centers
q_1 ... q_n.  The module provides the signed orbit area, the boundary
certificate cycle deciding discreteness, angular coordinates on the two
discrete components, earthquake/twist deformations and the induced action
of the automorphisms used by the coordinate changes.

Indices into the generator list are 1-based everywhere and wrap modulo n,
so q_0 means q_n.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass

import numpy as np

from . import _dd, core
from .core import (
    Isometry,
    ProjPoint,
    classify,
    cycle_orientation,
    dist,
    hyperbolic_power,
    midpoint,
    normalizing_isometry,
    polygon_area,
    reflection,
)
from .errors import (
    BadOrdering,
    DegeneratePair,
    Inconsistent,
    NonNegativePoint,
    NotDiscrete,
    NotHyperbolic,
    NumericallyNotHyperbolic,
    RelationViolated,
    TooFewGenerators,
)

__all__ = [
    "HypRep", "ICycle", "BoundaryTuple", "FundamentalPolygon",
    "DiscretenessReport", "validate", "from_boundary_tuple", "mirror_rep",
    "DISCRETE_POS", "DISCRETE_NEG", "NOT_DISCRETE",
]

DISCRETE_POS = "discrete+"
DISCRETE_NEG = "discrete-"
NOT_DISCRETE = "not_discrete"

_RELATION_TOL = 1e-8
_PAIR_TOL = 1e-9


@dataclass(frozen=True)
class ICycle:
    """Certificate cycle of 2(n-2) boundary points for a base index."""

    base_index: int
    points: tuple
    orientation: str
    closure_error: float
    min_separation: float


@dataclass(frozen=True)
class DiscretenessReport:
    verdict: str
    area: float
    base_index: int
    cycle: ICycle
    max_area: float

    @property
    def is_discrete(self):
        return self.verdict != NOT_DISCRETE


@dataclass(frozen=True)
class FundamentalPolygon:
    """Convex geodesic polygon whose edge half-turns generate the group."""

    vertices: tuple
    midpoints: tuple
    angle_sum: float
    area: float
    convex: bool


class BoundaryTuple:
    """Coordinates of a discrete representation: 2n-6 boundary angles.

    For sign +1 the angles are strictly increasing in (0, pi); for sign -1
    they are strictly decreasing in (-pi, 0).  The tolerance for "strict"
    is the kernel's angular epsilon.
    """

    __slots__ = ("n", "angles", "sign")

    def __init__(self, angles, sign=+1):
        angles = tuple(float(a) for a in angles)
        if len(angles) < 4 or len(angles) % 2:
            raise BadOrdering("need an even count 2n-6 >= 4 of angles")
        n = (len(angles) + 6) // 2
        if sign not in (+1, -1):
            raise BadOrdering("sign must be +1 or -1")
        seq = angles if sign > 0 else tuple(-a for a in angles)
        lo = 0.0
        for a in seq:
            if a <= lo + core.EPS_ANGLE:
                raise BadOrdering(
                    "angles must be strictly ordered inside the open "
                    "semicircle")
            lo = a
        if seq[-1] >= math.pi - core.EPS_ANGLE:
            raise BadOrdering("angles must stay below pi")
        self.n = n
        self.angles = angles
        self.sign = sign

    def points(self):
        return tuple(ProjPoint.from_angle(a) for a in self.angles)

    def __repr__(self):
        return f"BoundaryTuple(n={self.n}, sign={self.sign:+d})"


@dataclass(frozen=True)
class HypRep:
    """A representation given by its n half-turn centers; sign records
    whether the defining product of reflections is +1 or -1."""

    n: int
    centers: tuple
    sign: int

    # -- plumbing ---------------------------------------------------------

    def center(self, i: int) -> ProjPoint:
        """1-based, cyclic: center(0) == center(n)."""
        return self.centers[(i - 1) % self.n]

    def generator(self, i: int) -> Isometry:
        return reflection(self.center(i))

    def with_centers(self, centers) -> "HypRep":
        return validate(centers, self.n)

    def conjugated(self, g: Isometry) -> "HypRep":
        return validate([g.apply(q) for q in self.centers], self.n)

    # -- area and discreteness -------------------------------------------

    def _orbit_dd(self, p: ProjPoint):
        """Double-double lifts of the orbit of p under q_1, then q_2, ..."""
        if p.cls == core.POSITIVE:
            raise NonNegativePoint("orbit base point must not be exterior")
        cur = (_dd.cdd_from_complex(complex(p.lift[0])),
               _dd.cdd_from_complex(complex(p.lift[1])))
        orbit = []
        for i in range(1, self.n + 1):
            cur = _dd.vec_apply(_refl_dd(complex(self.center(i).disc)), cur)
            orbit.append(cur)
        return orbit

    def orbit_depth(self, p: ProjPoint | None = None) -> float:
        """Smallest relative isotropy deficit along the orbit of p.

        Conditioning diagnostic for area(): the stored centers pin the
        area down only to roughly machine epsilon divided by this value,
        because the fan wedge at an orbit point this close to the circle
        turns on the last digits of the centers.  Values comfortably
        above 1e-7 mean the area is trustworthy at the 1e-9 scale.
        """
        if p is None:
            p = ProjPoint.from_disc(0)
        best = math.inf
        for u in self._orbit_dd(p):
            uu = _dd.vec_form(u, u)
            nu = _dd.dd_to_float(_dd.dd_add(_dd.cdd_abs2(u[0]),
                                            _dd.cdd_abs2(u[1])))
            best = min(best, math.hypot(_dd.dd_to_float(uu[0]),
                                        _dd.dd_to_float(uu[1])) / nu)
        return best

    def area(self, p: ProjPoint | None = None) -> float:
        """Signed area of the closed orbit polygon of p (default: centre).

        The value does not depend on p and is always congruent to n*pi
        modulo 2*pi.  Orbit points travel deep toward the boundary circle,
        where the fan angles cancel to many fewer digits than the lifts
        carry, so the whole orbit and fan run in double-double precision;
        only the final angle extraction rounds back to a float.
        """
        if p is None:
            p = ProjPoint.from_disc(0)
        orbit = self._orbit_dd(p)
        c = (_dd.cdd_from_complex(0j), _dd.cdd_from_complex(1.0 + 0j))
        total = 0.0
        for k in range(self.n):
            u, w = orbit[k], orbit[(k + 1) % self.n]
            cross = _dd.cdd_sub(_dd.cdd_mul(u[0], w[1]),
                                _dd.cdd_mul(u[1], w[0]))
            cross2 = _dd.dd_to_float(_dd.cdd_abs2(cross))
            nu = _dd.dd_to_float(_dd.dd_add(_dd.cdd_abs2(u[0]),
                                            _dd.cdd_abs2(u[1])))
            nw = _dd.dd_to_float(_dd.dd_add(_dd.cdd_abs2(w[0]),
                                            _dd.cdd_abs2(w[1])))
            uu = _dd.vec_form(u, u)
            if (cross2 <= 1e-18 * nu * nw
                    and math.hypot(_dd.dd_to_float(uu[0]),
                                   _dd.dd_to_float(uu[1])) <= 1e-12 * nu):
                continue        # repeated boundary point contributes nothing
            tri = _dd.cdd_neg(_dd.cdd_mul(
                _dd.cdd_mul(_dd.vec_form(c, u), _dd.vec_form(u, w)),
                _dd.vec_form(w, c)))
            total += 2.0 * math.atan2(_dd.dd_to_float(tri[1]),
                                      _dd.dd_to_float(tri[0]))
        return float(total)

    def pair_isometry(self, i: int) -> Isometry:
        """The product generator(i) @ generator(i-1), always hyperbolic."""
        return self.generator(i) @ self.generator(i - 1)

    def default_base_index(self) -> int:
        """Smallest index maximizing the adjacent-center separation."""
        best, best_d = 1, -1.0
        for i in range(1, self.n + 1):
            d = dist(self.center(i - 1), self.center(i))
            if d > best_d + 1e-15:
                best, best_d = i, d
        return best

    def i_cycle(self, i: int | None = None) -> ICycle:
        """Certificate cycle at base index i.

        Starts with the repeller and attractor of the pair isometry at i
        and pushes them around by the remaining generators; for a discrete
        representation the 2(n-2) points wind once around the circle.
        """
        if i is None:
            i = self.default_base_index()
        m = self.pair_isometry(i)
        cls = classify(m)
        if cls.tag != core.HYPERBOLIC:
            raise NotHyperbolic(
                f"adjacent centers {i - 1}, {i} give a {cls.tag} product")
        b, e = _to_boundary(cls.repeller), _to_boundary(cls.attractor)
        points = [b, e]
        for j in range(i + 1, i + self.n - 2):
            g = self.generator(j)
            b, e = _to_boundary(g.apply(b)), _to_boundary(g.apply(e))
            points.extend([b, e])
        closing = self.generator(i + self.n - 2)
        closure = max(
            _angle_gap(_to_boundary(closing.apply(b)), points[0]),
            _angle_gap(_to_boundary(closing.apply(e)), points[1]),
        )
        pts = tuple(points)
        return ICycle(
            base_index=i,
            points=pts,
            orientation=cycle_orientation(pts),
            closure_error=closure,
            min_separation=_min_separation(pts),
        )

    def is_discrete(self, i: int | None = None) -> DiscretenessReport:
        """Decide discreteness from the certificate cycle orientation."""
        cyc = self.i_cycle(i)
        if cyc.orientation == core.POSITIVE_CYCLE:
            verdict = DISCRETE_POS
        elif cyc.orientation == core.NEGATIVE_CYCLE:
            verdict = DISCRETE_NEG
        else:
            verdict = NOT_DISCRETE
        return DiscretenessReport(
            verdict=verdict,
            area=self.area(),
            base_index=cyc.base_index,
            cycle=cyc,
            max_area=(self.n - 4) * math.pi,
        )

    # -- boundary coordinates --------------------------------------------

    def to_boundary_tuple(self, i: int | None = None) -> BoundaryTuple:
        """Angular coordinates of a discrete representation.

        Normalizes so the base pair's repeller, attractor and center go to
        -1, +1, 0, then reads off the remaining certificate points.  The
        verdict comes from the double-precision certificate; the angles are
        re-extracted in extended precision so round trips through the
        coordinates stay well inside their tolerance for deep centers.
        """
        if i is None:
            i = self.default_base_index()
        cyc = self.i_cycle(i)
        if cyc.orientation == core.POSITIVE_CYCLE:
            sign = +1
        elif cyc.orientation == core.NEGATIVE_CYCLE:
            sign = -1
        else:
            raise NotDiscrete("boundary coordinates exist only on the two "
                              "discrete components")
        m = (_refl_ld(complex(self.center(i).disc))
             @ _refl_ld(complex(self.center(i - 1).disc)))
        b, e = _fixed_points_ld(m)
        q = np.asarray(self.center(i).lift, dtype=np.clongdouble)
        g = _normalizer_ld(b, e, q)
        angles = []
        for j in range(i + 1, i + self.n - 2):
            r = _refl_ld(complex(self.center(j).disc))
            b, e = r @ b, r @ e
            for v in (b, e):
                w = g @ v
                z = w[0] / w[1]
                angles.append(float(np.arctan2(z.imag, z.real)))
        return BoundaryTuple(angles, sign)

    # -- deformations -----------------------------------------------------

    def earthquake(self, i: int, t: float) -> "HypRep":
        """Slide the two centers q_{i-1}, q_i along their common axis.

        The sliding isometry is the positive square root of the pair
        product raised to the power t; t = 1 is the elementary twist.
        Everything else stays put, so the defining relation is preserved.

        The slide runs in double-double precision: in plain floats the
        trace of a nearly-degenerate pair cancels against 2 and the moved
        centers come out far enough off-axis to shift the orbit area.
        """
        try:
            h_t = _pair_power_dd(
                complex(self.center(i).disc),
                complex(self.center(i - 1).disc), t / 2.0)
        except NotHyperbolic as exc:
            raise DegeneratePair(
                f"centers {i - 1} and {i} coincide; no axis to slide along"
            ) from exc
        new = list(self.centers)
        new[(i - 2) % self.n] = _apply_dd(h_t, self.center(i - 1))
        new[(i - 1) % self.n] = _apply_dd(h_t, self.center(i))
        return HypRep(self.n, tuple(new), self.sign)

    def dehn_twist(self, i: int) -> "HypRep":
        return self.earthquake(i, 1.0)

    def apply_aut(self, word) -> "HypRep":
        """Act on the right by a word of elementary automorphisms.

        Letters, leftmost acting first: "E3" / "E3^-1" (twist at index 3),
        "S" / "S^-1" (index shift), "J" (index reversal), "I2" (conjugation
        by generator 2).
        """
        rep = self
        for raw in word:
            rep = rep._apply_letter(raw)
        return rep

    def _apply_letter(self, raw: str) -> "HypRep":
        kind, idx, power = _parse_letter(raw, self.n)
        if kind == "E":
            return self.earthquake(idx, float(power))
        if kind == "S":
            shift = power  # +1: slot j takes old q_{j+1}
            new = [self.center(j + shift) for j in range(1, self.n + 1)]
            return HypRep(self.n, tuple(new), self.sign)
        if kind == "J":
            new = [self.center(self.n - j) for j in range(1, self.n + 1)]
            # Reversing the half-turn order rebuilds the defining product
            # out of inverted factors, and each half-turn squares to -I:
            # the identity it closes on picks up a factor (-1)**n.
            sign = self.sign if self.n % 2 == 0 else -self.sign
            return HypRep(self.n, tuple(new), sign)
        g = self.generator(idx)
        return HypRep(self.n, tuple(g.apply(q) for q in self.centers),
                      self.sign)

    # -- polygon and surface restriction ---------------------------------

    def fundamental_polygon(self) -> FundamentalPolygon:
        """Convex polygon generating the tiling, edges bisected by centers.

        The first vertex sits at the middle of the segment [q_n, q_1] and
        the rest are its images under successive generators; the closing
        generator returns it.  Interior angles then add up to 2*pi.
        """
        report = self.is_discrete()
        if not report.is_discrete:
            raise NotDiscrete("fundamental polygons exist only for the "
                              "discrete components")
        p0 = midpoint(self.center(0), self.center(1))
        verts = [p0]
        cur = p0
        for i in range(1, self.n):
            cur = self.generator(i).apply(cur)
            verts.append(cur)
        closure = self.generator(self.n).apply(cur)
        if not closure.close_to(p0, 1e-7):
            raise Inconsistent("polygon failed to close up")
        mids = tuple(midpoint(verts[i - 1], verts[i]) for i in range(1, self.n)
                     ) + (midpoint(verts[-1], verts[0]),)
        angles = _interior_angles(verts)
        return FundamentalPolygon(
            vertices=tuple(verts),
            midpoints=mids,
            angle_sum=sum(angles),
            area=abs(polygon_area(ProjPoint.from_disc(0), verts)),
            convex=_is_convex(verts),
        )

    def restrict_to_surface(self):
        """Restriction to the index-two subgroup of products of two
        generators; defined for even n only."""
        from . import surface
        return surface.from_hyperelliptic(self)


# ---------------------------------------------------------------------------
# construction and validation


def validate(centers, n: int | None = None) -> HypRep:
    """Check centers define a representation and record the product sign.

    Requires n >= 5 interior points, adjacent pairs distinct, and the
    descending product of the half-turns equal to plus or minus the
    identity within tolerance.
    """
    pts = [q if isinstance(q, ProjPoint) else ProjPoint.from_disc(q)
           for q in centers]
    if n is None:
        n = len(pts)
    if n < 5:
        raise TooFewGenerators("at least five generators are required")
    if len(pts) != n:
        raise RelationViolated(f"expected {n} centers, got {len(pts)}")
    for q in pts:
        if q.cls != core.NEGATIVE:
            raise NonNegativePoint("every center must be an interior point")
    for i in range(n):
        if dist(pts[i - 1], pts[i]) <= _PAIR_TOL:
            raise DegeneratePair(
                f"centers {i or n} and {i + 1} coincide; the adjacent "
                "half-turns multiply to an involution-free identity and the "
                "representation degenerates to one of rank n-2")
    # The partial products can reach norms around 1e4 for centers deep in
    # the disc, which amplifies accumulation error quadratically; extended
    # precision keeps the measured residual faithful to the center data.
    prod = np.eye(2, dtype=np.clongdouble)
    for q in pts:
        prod = _refl_ld(complex(q.disc)) @ prod
    eye = np.eye(2, dtype=np.clongdouble)
    res_plus = float(np.linalg.norm(prod - eye))
    res_minus = float(np.linalg.norm(prod + eye))
    residual = min(res_plus, res_minus)
    if residual > _RELATION_TOL:
        raise RelationViolated(
            f"defining product is off the identity by {residual:.3e}",
            residual=residual)
    return HypRep(n, tuple(pts), +1 if res_plus <= res_minus else -1)


def from_boundary_tuple(tup: BoundaryTuple, i: int = 1) -> HypRep:
    """Rebuild the discrete representation with the given coordinates.

    Center i goes to the disc centre; the next n-2 centers are successive
    intersections of geodesics spanned by -1, +1 and the coordinate
    points; the last one closes the relation on the axis through -1, 1.

    The chain of intersections and the closing half-turn run in extended
    precision: products of reflections about points deep in the disc have
    partial norms large enough that plain double arithmetic can push the
    relation residual of the finished center list past its tolerance.
    Each intersection is rounded to double as soon as it is found and the
    closing center is derived from the rounded values, so the rounding
    error is swallowed by the one remaining free center.
    """
    if tup.sign < 0:
        return mirror_rep(from_boundary_tuple(_mirror_tuple(tup), i))
    n = tup.n
    ang = [np.longdouble(a) for a in tup.angles]
    z = [None] + [_cis_ld(a) for a in ang]          # 1-based boundary lifts
    minus1 = np.clongdouble(-1.0)
    plus1 = np.clongdouble(1.0)
    centers: dict[int, complex] = {i: 0j}
    centers[i + 1] = _chord_intersection_ld(minus1, z[1], plus1, z[2])
    for k in range(2, n - 2):
        centers[i + k] = _chord_intersection_ld(
            z[2 * k - 3], z[2 * k - 1], z[2 * k - 2], z[2 * k])
    centers[i + n - 2] = _chord_intersection_ld(
        z[2 * n - 7], minus1, z[2 * n - 6], plus1)

    h_ld = np.eye(2, dtype=np.clongdouble)
    for k in range(1, n - 1):
        h_ld = _refl_ld(centers[i + k]) @ h_ld
    h = Isometry(np.asarray(h_ld, dtype=complex), check=False)
    cls = classify(h)
    if cls.tag != core.HYPERBOLIC:
        raise NumericallyNotHyperbolic(
            "the open chain of half-turns must compose to a translation "
            f"along the real axis, got {cls.tag}")
    pm1 = ProjPoint.from_angle(math.pi)
    pp1 = ProjPoint.from_angle(0.0)
    for fixed in (cls.repeller, cls.attractor):
        if not (fixed.close_to(pm1, 1e-6) or fixed.close_to(pp1, 1e-6)):
            raise Inconsistent("translation axis drifted off the real axis")
    centers[i + n - 1] = _closing_center_ld(h_ld)
    ordered = []
    for j in range(1, n + 1):
        key = j if j in centers else j + n
        ordered.append(complex(centers[key]))
    return validate(ordered, n)


def mirror_rep(rep: HypRep) -> HypRep:
    """Conjugate-mirror image across the real axis; negates the area."""
    return validate([ProjPoint.from_disc(q.disc.conjugate())
                     for q in rep.centers], rep.n)


def _mirror_tuple(tup: BoundaryTuple) -> BoundaryTuple:
    return BoundaryTuple([-a for a in tup.angles], -tup.sign)


# ---------------------------------------------------------------------------
# extended-precision kernel for the coordinate chain


def _cis_ld(a):
    return np.clongdouble(np.cos(a)) + np.clongdouble(1j) * np.clongdouble(
        np.sin(a))


def _form_ld(x, y):
    return x[0] * np.conj(y[0]) - x[1] * np.conj(y[1])


def _norm2_ld(x):
    return (abs(x[0]) ** 2 + abs(x[1]) ** 2).real


def _chord_intersection_ld(a, b, c, d) -> complex:
    """Crossing of the straight chords [a,b] and [c,d] of the unit circle,
    mapped back from the Klein to the Poincare picture; rounds to double."""
    e1x, e1y = (b - a).real, (b - a).imag
    e2x, e2y = (d - c).real, (d - c).imag
    rx, ry = (c - a).real, (c - a).imag
    det = e2x * e1y - e1x * e2y
    if abs(det) < np.longdouble(1e-30):
        raise BadOrdering("coordinate geodesics do not cross")
    s = (e2x * ry - rx * e2y) / det
    k = a + s * (b - a)
    w = np.longdouble(1) - (k.real * k.real + k.imag * k.imag)
    if w < 0:
        w = np.longdouble(0)
    return complex(k / (np.longdouble(1) + np.sqrt(w)))


def _refl_ld(zq: complex) -> np.ndarray:
    """Half-turn matrix about the interior point zq, in extended precision."""
    q0 = np.clongdouble(zq)
    pair = (np.longdouble(zq.real) * np.longdouble(zq.real)
            + np.longdouble(zq.imag) * np.longdouble(zq.imag)
            - np.longdouble(1))
    f = np.clongdouble(2.0) / np.clongdouble(pair)
    m = np.eye(2, dtype=np.clongdouble)
    m[0, 0] -= f * (q0 * np.conj(q0))
    m[0, 1] += f * q0
    m[1, 0] -= f * np.conj(q0)
    m[1, 1] += f
    return np.clongdouble(1j) * m


def _refl_dd(zq: complex):
    """Half-turn matrix about the interior point zq, double-width."""
    qre = _dd.dd_from_float(zq.real)
    qim = _dd.dd_from_float(zq.imag)
    one = (1.0, 0.0)
    zero = (0.0, 0.0)
    r2 = _dd.dd_add(_dd.dd_mul(qre, qre), _dd.dd_mul(qim, qim))
    f = _dd.dd_div((2.0, 0.0), _dd.dd_sub(r2, one))
    entries = (
        ((_dd.dd_sub(one, _dd.dd_mul(f, r2)), zero),
         (_dd.dd_mul(f, qre), _dd.dd_mul(f, qim))),
        ((_dd.dd_neg(_dd.dd_mul(f, qre)), _dd.dd_mul(f, qim)),
         (_dd.dd_add(one, f), zero)),
    )
    # Multiply by the imaginary unit: (re, im) -> (-im, re).
    return tuple(tuple((_dd.dd_neg(c[1]), c[0]) for c in row)
                 for row in entries)


def _cdd_scale(x, s):
    """Multiply the double-double complex x by the real double-double s."""
    return (_dd.dd_mul(x[0], s), _dd.dd_mul(x[1], s))


def _pair_power_dd(zq_i: complex, zq_im1: complex, s: float):
    """(R_i R_{i-1})^s as a double-double matrix, R_* half-turns.

    Only the structural matrix work needs the extra width; the scalar
    cosh/sinh/acosh calls are well conditioned once their argument
    2 cosh(l/2) - 2 has been formed without cancellation.
    """
    mm = _dd.mat_mul(_refl_dd(zq_i), _refl_dd(zq_im1))
    tr = _dd.dd_add(mm[0][0][0], mm[1][1][0])
    if _dd.dd_to_float(tr) < 0.0:
        mm = tuple(tuple((_dd.dd_neg(c[0]), _dd.dd_neg(c[1])) for c in row)
                   for row in mm)
        tr = _dd.dd_neg(tr)
    ch = _dd.dd_mul(tr, (0.5, 0.0))
    u = _dd.dd_sub(ch, (1.0, 0.0))          # cosh(l/2) - 1, exact width
    uf = _dd.dd_to_float(u)
    if uf <= core.EPS_CLS:
        raise NotHyperbolic(f"|trace| = {_dd.dd_to_float(tr)} is not > 2")
    half_len = math.asinh(math.sqrt(uf * (2.0 + uf)))
    sh = _dd.dd_sqrt(_dd.dd_mul(u, _dd.dd_add(u, (2.0, 0.0))))
    # cosh/sinh of the slide both come from one exponential so that
    # cosh^2 - sinh^2 = E/E holds to double-double width; rounding E
    # itself only nudges the slide amount, which nothing depends on.
    e_a = (math.exp(s * half_len), 0.0)
    e_inv = _dd.dd_div((1.0, 0.0), e_a)
    cosh_a = _dd.dd_mul(_dd.dd_add(e_a, e_inv), (0.5, 0.0))
    sinh_over_sh = _dd.dd_div(
        _dd.dd_mul(_dd.dd_sub(e_a, e_inv), (0.5, 0.0)), sh)
    out = []
    for r in range(2):
        row = []
        for c in range(2):
            entry = mm[r][c]
            if r == c:
                entry = (_dd.dd_sub(entry[0], ch), entry[1])
            entry = _cdd_scale(entry, sinh_over_sh)
            if r == c:
                entry = (_dd.dd_add(entry[0], cosh_a), entry[1])
            row.append(entry)
        out.append(tuple(row))
    return tuple(out)


def _apply_dd(mat, p: ProjPoint) -> ProjPoint:
    """Image of the interior point p under the double-double matrix."""
    v = _dd.vec_apply(mat, (_dd.cdd_from_complex(complex(p.lift[0])),
                            _dd.cdd_from_complex(complex(p.lift[1]))))
    return ProjPoint.from_disc(_dd.cdd_to_complex(_dd.cdd_div(v[0], v[1])))


def _fixed_points_ld(m):
    """Repelling and attracting eigen-lifts of a hyperbolic matrix."""
    retr = (m[0, 0] + m[1, 1]).real
    mm = -m if retr < 0 else m
    ch = abs(retr) / np.longdouble(2)
    sh = np.sqrt(max(ch * ch - np.longdouble(1), np.longdouble(0)))
    eye = np.eye(2, dtype=np.clongdouble)
    nhat = (mm - ch * eye) / sh
    out = []
    for off in (-1.0, 1.0):
        cand = nhat + off * eye
        col = cand[:, 0] if _norm2_ld(cand[:, 0]) >= _norm2_ld(cand[:, 1]) \
            else cand[:, 1]
        out.append(col)
    return out[0], out[1]


def _normalizer_ld(b, e, q):
    """Matrix sending the lifts b, e, q to -1, +1, 0 projectively."""
    det = b[0] * e[1] - b[1] * e[0]
    alpha = (q[0] * e[1] - q[1] * e[0]) / det
    beta = (b[0] * q[1] - b[1] * q[0]) / det
    u, v = alpha * b, beta * e
    g = _form_ld(u, v)
    t = np.sqrt(np.clongdouble(2.0) / abs(g))
    f = np.array([[t * u[0], t * v[0]], [t * u[1], t * v[1]]],
                 dtype=np.clongdouble)
    fdet = f[0, 0] * f[1, 1] - f[0, 1] * f[1, 0]
    finv = np.array([[f[1, 1], -f[0, 1]], [-f[1, 0], f[0, 0]]],
                    dtype=np.clongdouble) / fdet
    s = np.array([[-1.0, 1.0], [1.0, 1.0]], dtype=np.clongdouble)
    mat = s @ finv
    return mat / np.sqrt(mat[0, 0] * mat[1, 1] - mat[0, 1] * mat[1, 0])


def _closing_center_ld(h_ld) -> complex:
    """Image of the disc centre under the positive square root of h."""
    retr = (h_ld[0, 0] + h_ld[1, 1]).real
    m = -h_ld if retr < 0 else h_ld
    ch = abs(retr) / np.longdouble(2)
    if ch <= 1 + 1e-12:
        raise NumericallyNotHyperbolic(
            "half-turn chain composes to a non-translation")
    sh = np.sqrt(ch * ch - np.longdouble(1))
    eye = np.eye(2, dtype=np.clongdouble)
    nhat = (m - ch * eye) / sh
    half = np.arccosh(ch) / np.longdouble(2)
    sq = np.cosh(half) * eye + np.sinh(half) * nhat
    return complex(sq[0, 1] / sq[1, 1])


# ---------------------------------------------------------------------------
# helpers

_LETTER_RE = re.compile(r"^(E|S|J|I)(\d*)(\^-1)?$")


def _parse_letter(raw: str, n: int):
    m = _LETTER_RE.match(raw.strip())
    if not m:
        raise ValueError(f"unrecognized automorphism letter {raw!r}")
    kind, digits, inv = m.group(1), m.group(2), m.group(3)
    power = -1 if inv else +1
    if kind in ("E", "I"):
        if not digits:
            raise ValueError(f"letter {raw!r} needs a generator index")
        idx = int(digits)
        if not 1 <= idx <= n:
            raise ValueError(f"index {idx} out of range 1..{n}")
        return kind, idx, power
    if digits:
        raise ValueError(f"letter {raw!r} does not take an index")
    return kind, None, power


def _to_boundary(p: ProjPoint) -> ProjPoint:
    """Radial projection onto the boundary circle.

    Certificate cycle points are boundary points of the action; computing
    them through deep matrices can leave them a hair off the circle, on
    either side.  Projection moves them radially, so every angular
    quantity the certificate reads is untouched.
    """
    if p.cls == core.ISOTROPIC:
        return p
    z = complex(p.disc)
    return ProjPoint.from_angle(math.atan2(z.imag, z.real))


def _angle_gap(p: ProjPoint, q: ProjPoint) -> float:
    d = (p.angle - q.angle) % core.TWO_PI
    return min(d, core.TWO_PI - d)


def _min_separation(points) -> float:
    srt = sorted(p.angle % core.TWO_PI for p in points)
    seps = [srt[k + 1] - srt[k] for k in range(len(srt) - 1)]
    seps.append(core.TWO_PI - (srt[-1] - srt[0]))
    return min(seps)


def _interior_angles(vertices) -> list[float]:
    out = []
    k = len(vertices)
    for j in range(k):
        v = vertices[j]
        u = vertices[(j - 1) % k]
        w = vertices[(j + 1) % k]
        a, b, c = dist(v, u), dist(v, w), dist(u, w)
        cosg = (math.cosh(a) * math.cosh(b) - math.cosh(c)) / (
            math.sinh(a) * math.sinh(b))
        out.append(math.acos(min(1.0, max(-1.0, cosg))))
    return out


def _is_convex(vertices) -> bool:
    ks = [core.poincare_to_klein(v.disc) for v in vertices]
    m = len(ks)
    sign = 0.0
    for j in range(m):
        a, b, c = ks[j], ks[(j + 1) % m], ks[(j + 2) % m]
        cross = ((b.real - a.real) * (c.imag - b.imag)
                 - (b.imag - a.imag) * (c.real - b.real))
        if abs(cross) < 1e-14:
            continue
        if sign == 0.0:
            sign = math.copysign(1.0, cross)
        elif math.copysign(1.0, cross) != sign:
            return False
    return True
