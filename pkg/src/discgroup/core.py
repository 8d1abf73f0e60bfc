"""Linear-algebra kernel for the Poincare disc.

The disc is modelled projectively: a point is a complex 2-vector x with
hermitian square form(x, x) = |x1|^2 - |x2|^2, and the open disc consists of
the directions of negative square, embedded as z -> (z, 1).  Orientation-
preserving isometries are the unit-determinant matrices preserving the form;
half-turns about interior points are trace-zero such matrices.

Everything here is plain numpy on 2x2 complex matrices and 2-vectors; no
state is kept anywhere, so all values are safe to share between threads.
"""

from __future__ import annotations

import cmath
import math
import os
from dataclasses import dataclass

import numpy as np

from .errors import (
    AnchorOffAxis,
    CoincidentGeodesics,
    DegeneratePoints,
    Inconsistent,
    NonNegativePoint,
    NotHyperbolic,
)

__all__ = [
    "EPS_ANGLE", "EPS_CLS", "EPS_MAT",
    "NEGATIVE", "ISOTROPIC", "POSITIVE",
    "IDENTITY", "ELLIPTIC", "PARABOLIC", "HYPERBOLIC",
    "POSITIVE_CYCLE", "NEGATIVE_CYCLE", "NEITHER",
    "ProjPoint", "Isometry", "Geodesic", "IsometryClass",
    "form", "reflection", "classify", "hyperbolic_power",
    "triangle_area", "polygon_area", "cycle_orientation",
    "geodesic_intersection", "decompose_half_turns",
    "dist", "midpoint", "geodesic_through", "dist_to_geodesic",
    "closest_to_origin", "normalizing_isometry",
    "poincare_to_klein", "klein_to_poincare",
]

# Base tolerance; may be overridden through the environment for the whole
# process (see README).  All derived tolerances follow it.
_TOL = float(os.environ.get("DISCGROUP_TOL", "1e-9"))

EPS_CLS = _TOL        # trace window for classifying isometries
EPS_ANGLE = _TOL      # angular coincidence threshold on the boundary circle
EPS_MAT = _TOL        # relative tolerance for matrix identities

TWO_PI = 2.0 * math.pi

NEGATIVE = "negative"
ISOTROPIC = "isotropic"
POSITIVE = "positive"

IDENTITY = "identity"
ELLIPTIC = "elliptic"
PARABOLIC = "parabolic"
HYPERBOLIC = "hyperbolic"

POSITIVE_CYCLE = "positive"
NEGATIVE_CYCLE = "negative"
NEITHER = "neither"

_ETA = np.diag([1.0 + 0j, -1.0 + 0j])


def form(x, y):
    """Hermitian pairing <x, y> = x1 * conj(y1) - x2 * conj(y2) on lifts."""
    return x[0] * np.conj(y[0]) - x[1] * np.conj(y[1])


class ProjPoint:
    """A point of the projective model, stored through a normalized lift.

    Interior points keep the lift (z, 1) with |z| < 1; boundary points keep
    (z, 1) with |z| = 1 exactly; exterior points keep (z, 1) when possible
    and (1, 0) for the direction at infinity.
    """

    __slots__ = ("lift", "cls")

    def __init__(self, lift):
        x = np.asarray(lift, dtype=complex)
        if x.shape != (2,):
            raise ValueError("a lift is a complex 2-vector")
        nrm = abs(x[0]) ** 2 + abs(x[1]) ** 2
        if nrm == 0.0:
            raise ValueError("zero vector is not a projective point")
        sq = form(x, x).real / nrm
        if sq < -EPS_CLS:
            self.cls = NEGATIVE
        elif sq > EPS_CLS:
            self.cls = POSITIVE
        else:
            self.cls = ISOTROPIC
        if self.cls == POSITIVE and abs(x[1]) ** 2 <= EPS_CLS * nrm:
            self.lift = np.array([1.0 + 0j, 0.0 + 0j])
            return
        z = x[0] / x[1]
        if self.cls == ISOTROPIC:
            z /= abs(z)
        self.lift = np.array([z, 1.0 + 0j])

    @classmethod
    def from_disc(cls, z):
        """Point with disc coordinate z (interior for |z| < 1)."""
        return cls((complex(z), 1.0 + 0j))

    @classmethod
    def from_angle(cls, theta):
        """Boundary point exp(i theta)."""
        return cls((cmath.exp(1j * theta), 1.0 + 0j))

    @property
    def disc(self):
        """Disc coordinate z = x1/x2."""
        return complex(self.lift[0] / self.lift[1])

    @property
    def angle(self):
        """Boundary angle in (-pi, pi]; only isotropic points carry one."""
        if self.cls != ISOTROPIC:
            raise ValueError("angle is defined for boundary points only")
        return math.atan2(self.lift[0].imag, self.lift[0].real)

    def close_to(self, other, tol=1e-9):
        """Projective coincidence test via the cross product of lifts."""
        cross = self.lift[0] * other.lift[1] - other.lift[0] * self.lift[1]
        scale = np.linalg.norm(self.lift) * np.linalg.norm(other.lift)
        return abs(cross) <= tol * scale

    def __repr__(self):
        if self.cls == POSITIVE and self.lift[1] == 0:
            return "ProjPoint(inf)"
        return f"ProjPoint({self.disc:.6g}, {self.cls})"


@dataclass(frozen=True)
class IsometryClass:
    """Classification record: tag plus axis data for hyperbolic elements."""

    tag: str
    trace: float
    translation_length: float | None = None
    repeller: ProjPoint | None = None
    attractor: ProjPoint | None = None


class Isometry:
    """Unit-determinant matrix preserving the hermitian form."""

    __slots__ = ("mat",)

    def __init__(self, mat, check=True):
        m = np.asarray(mat, dtype=complex)
        if m.shape != (2, 2):
            raise ValueError("isometries are 2x2 complex matrices")
        if check:
            scale = max(1.0, float(np.linalg.norm(m)) ** 2)
            d = m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]
            if abs(d - 1.0) > 1e-6 * scale:
                raise ValueError(f"determinant {d} is not 1")
            gram = np.conj(m.T) @ _ETA @ m
            if np.linalg.norm(gram - _ETA) > 1e-6 * scale:
                raise ValueError("matrix does not preserve the form")
        object.__setattr__(self, "mat", m)

    @classmethod
    def identity(cls):
        return cls(np.eye(2, dtype=complex), check=False)

    def __matmul__(self, other):
        return Isometry(self.mat @ other.mat, check=False)

    def inverse(self):
        # det = 1 by the class invariant; dividing by the *computed* det
        # would smear its cancellation noise (large for deep products)
        # over entries that the adjugate reproduces exactly.
        a, b = self.mat[0]
        c, d = self.mat[1]
        return Isometry(np.array([[d, -b], [-c, a]]), check=False)

    @property
    def trace(self):
        return complex(self.mat[0, 0] + self.mat[1, 1])

    def apply(self, p: ProjPoint) -> ProjPoint:
        return ProjPoint(self.mat @ p.lift)

    def projectively_equal(self, other, tol=None):
        """True if the matrices agree up to overall sign."""
        if tol is None:
            tol = EPS_MAT
        scale = max(1.0, float(np.linalg.norm(self.mat)),
                    float(np.linalg.norm(other.mat)))
        d = min(np.linalg.norm(self.mat - other.mat),
                np.linalg.norm(self.mat + other.mat))
        return d <= tol * scale

    def is_identity(self, tol=None):
        eye = np.eye(2)
        if tol is None:
            tol = EPS_MAT
        return min(np.linalg.norm(self.mat - eye),
                   np.linalg.norm(self.mat + eye)) <= tol * max(
                       1.0, float(np.linalg.norm(self.mat)))

    def __repr__(self):
        return f"Isometry({np.array2string(self.mat, precision=6)})"


def reflection(q: ProjPoint) -> Isometry:
    """Half-turn about the interior point q.

    As a map on lifts, x -> i*(x - 2 <x,q>/<q,q> q); it squares to minus the
    identity and acts on the disc as the rotation by pi about q.
    """
    if q.cls != NEGATIVE:
        raise NonNegativePoint("half-turn centers must be interior points")
    qq = form(q.lift, q.lift).real
    outer = np.outer(q.lift, np.conj(q.lift)) @ _ETA
    return Isometry(1j * (np.eye(2) - (2.0 / qq) * outer), check=False)


def _sign_normalized(m: Isometry) -> np.ndarray:
    """Matrix of m with the sign chosen so the real trace is >= 0."""
    t = m.trace.real
    return -m.mat if t < 0 else m.mat


def classify(m: Isometry, tol=None) -> IsometryClass:
    """Sort an isometry into identity / elliptic / parabolic / hyperbolic.

    Hyperbolic records get the translation length 2*arccosh(|tr|/2) and the
    two boundary fixed points; the attractor is the eigendirection whose
    eigenvalue has modulus > 1 after normalizing the trace positive.
    """
    if tol is None:
        tol = EPS_CLS
    t = abs(m.trace.real)
    if m.is_identity(tol):
        return IsometryClass(IDENTITY, t)
    if t < 2.0 - tol:
        return IsometryClass(ELLIPTIC, t)
    if t <= 2.0 + tol:
        return IsometryClass(PARABOLIC, t)
    mm = _sign_normalized(m)
    half = mm[0, 0] + mm[1, 1]          # = 2 cosh(l/2), real up to noise
    ch = half.real / 2.0
    sh = math.sqrt(ch * ch - 1.0)
    nhat = (mm - ch * np.eye(2)) / sh   # involution: nhat @ nhat = I
    plus = nhat + np.eye(2)
    minus = nhat - np.eye(2)
    att = plus[:, int(np.argmax(np.linalg.norm(plus, axis=0)))]
    rep = minus[:, int(np.argmax(np.linalg.norm(minus, axis=0)))]
    return IsometryClass(
        HYPERBOLIC, t,
        translation_length=2.0 * math.acosh(ch),
        repeller=ProjPoint(rep),
        attractor=ProjPoint(att),
    )


def hyperbolic_power(m: Isometry, t: float) -> Isometry:
    """Real power m^t of a hyperbolic isometry, fixing its axis pointwise
    at infinity and translating by t times the translation length.

    Uses the closed form m^t = cosh(t*l/2) I + sinh(t*l/2) N with N the
    normalized traceless part, which keeps powers exactly additive.
    """
    mm = _sign_normalized(m)
    ch = (mm[0, 0] + mm[1, 1]).real / 2.0
    if ch <= 1.0 + EPS_CLS:
        raise NotHyperbolic(f"|trace| = {2 * ch} is not > 2")
    half_len = math.acosh(ch)
    sh = math.sinh(half_len)
    nhat = (mm - ch * np.eye(2)) / sh
    a = t * half_len
    return Isometry(math.cosh(a) * np.eye(2) + math.sinh(a) * nhat,
                    check=False)


def triangle_area(p1: ProjPoint, p2: ProjPoint, p3: ProjPoint) -> float:
    """Signed area of the geodesic triangle, positive for counterclockwise.

    Computed as 2*arg(-<p1,p2><p2,p3><p3,p1>); vertices may sit on the
    boundary circle.  When two vertices are the same boundary point the
    area is 0 by convention.
    """
    pts = (p1, p2, p3)
    for a in range(3):
        b = (a + 1) % 3
        if (pts[a].cls == ISOTROPIC and pts[b].cls == ISOTROPIC
                and pts[a].close_to(pts[b], EPS_ANGLE)):
            return 0.0
    prod = -(form(p1.lift, p2.lift)
             * form(p2.lift, p3.lift)
             * form(p3.lift, p1.lift))
    return 2.0 * math.atan2(prod.imag, prod.real)


def polygon_area(c: ProjPoint, vertices) -> float:
    """Signed area of the geodesic polygon, as the fan sum around c.

    The value does not depend on the auxiliary non-exterior point c.
    """
    if c.cls == POSITIVE:
        raise NonNegativePoint("the fan point must not be exterior")
    vs = list(vertices)
    total = 0.0
    for k in range(len(vs)):
        total += triangle_area(c, vs[k], vs[(k + 1) % len(vs)])
    return total


def cycle_orientation(points) -> str:
    """Orientation of a cyclic list of boundary points.

    "positive" when the angles make exactly one counterclockwise turn,
    "negative" for exactly one clockwise turn, "neither" otherwise
    (including any coincidence within the angular tolerance).
    """
    pts = list(points)
    if len(pts) < 3:
        raise ValueError("need at least three points")
    ang = [p.angle for p in pts]
    srt = sorted(a % TWO_PI for a in ang)
    seps = [srt[k + 1] - srt[k] for k in range(len(srt) - 1)]
    seps.append(TWO_PI - (srt[-1] - srt[0]))
    if min(seps) <= EPS_ANGLE:
        return NEITHER
    gaps = [(ang[(k + 1) % len(ang)] - ang[k]) % TWO_PI for k in range(len(ang))]
    turns = round(sum(gaps) / TWO_PI)
    if turns == 1:
        return POSITIVE_CYCLE
    if turns == len(pts) - 1:
        return NEGATIVE_CYCLE
    return NEITHER


@dataclass(frozen=True)
class Geodesic:
    """Complete geodesic recorded through its two ideal endpoints."""

    start: ProjPoint
    end: ProjPoint

    def __post_init__(self):
        if self.start.cls != ISOTROPIC or self.end.cls != ISOTROPIC:
            raise ValueError("geodesic endpoints must be boundary points")
        if self.start.close_to(self.end, EPS_ANGLE):
            raise DegeneratePoints("geodesic endpoints coincide")


def poincare_to_klein(z: complex) -> complex:
    return 2.0 * z / (1.0 + abs(z) ** 2)


def klein_to_poincare(k: complex) -> complex:
    s = 1.0 - abs(k) ** 2
    if s < 0.0:
        s = 0.0
    return k / (1.0 + math.sqrt(s))


def _ccw_arc_contains(a, b, theta):
    """Is theta strictly inside the counterclockwise arc from a to b?"""
    return 0.0 < (theta - a) % TWO_PI < (b - a) % TWO_PI


def geodesic_intersection(g1: Geodesic, g2: Geodesic):
    """Transversal interior intersection point, or None.

    The endpoints decide everything: the geodesics cross exactly when the
    endpoint pairs interlace on the circle.  The point itself is computed
    as a chord-chord intersection in the projective (Klein) picture and
    mapped back, which avoids radicals until the final step.
    """
    a1, b1 = g1.start.angle, g1.end.angle
    a2, b2 = g2.start.angle, g2.end.angle
    shared = sum(
        1 for u in (g1.start, g1.end) for v in (g2.start, g2.end)
        if u.close_to(v, EPS_ANGLE)
    )
    if shared >= 2:
        raise CoincidentGeodesics("the geodesics share both endpoints")
    if shared == 1:
        return None
    if _ccw_arc_contains(a1, b1, a2) == _ccw_arc_contains(a1, b1, b2):
        return None
    u1, v1 = cmath.exp(1j * a1), cmath.exp(1j * b1)
    u2, v2 = cmath.exp(1j * a2), cmath.exp(1j * b2)
    d1, d2 = v1 - u1, v2 - u2
    det = d1.real * (-d2.imag) - (-d2.real) * d1.imag
    rhs = u2 - u1
    t = (rhs.real * (-d2.imag) + d2.real * rhs.imag) / det
    k = u1 + t * d1
    return ProjPoint.from_disc(klein_to_poincare(k))


def dist(p: ProjPoint, q: ProjPoint) -> float:
    """Distance between interior points (curvature -1)."""
    if p.cls != NEGATIVE or q.cls != NEGATIVE:
        raise NonNegativePoint("distance needs two interior points")
    num = abs(form(p.lift, q.lift)) ** 2
    den = form(p.lift, p.lift).real * form(q.lift, q.lift).real
    ch = math.sqrt(max(num / den, 1.0))
    return 2.0 * math.acosh(ch)


def midpoint(p: ProjPoint, q: ProjPoint) -> ProjPoint:
    """Half-way point of the geodesic segment [p, q]."""
    if p.cls != NEGATIVE or q.cls != NEGATIVE:
        raise NonNegativePoint("midpoint needs two interior points")
    ph = p.lift / math.sqrt(-form(p.lift, p.lift).real)
    qh = q.lift / math.sqrt(-form(q.lift, q.lift).real)
    g = form(ph, qh)
    if abs(g) > 0:
        # scaling the second vector by s multiplies <ph, qh> by conj(s)
        qh = qh * (-g / abs(g))
    return ProjPoint(ph + qh)


def geodesic_through(p: ProjPoint, q: ProjPoint) -> Geodesic:
    """Oriented geodesic through two distinct interior points, from the
    ideal point behind p towards the ideal point past q."""
    if dist(p, q) <= 1e-12:
        raise DegeneratePoints("the points coincide")
    mover = reflection(midpoint(p, q)) @ reflection(p)   # carries p to q
    cls = classify(mover)
    if cls.tag != HYPERBOLIC:
        raise Inconsistent("translation along the segment is not hyperbolic")
    return Geodesic(cls.repeller, cls.attractor)


def _mirror_across(g: Geodesic, p: ProjPoint) -> ProjPoint:
    """Reflect p across the geodesic (an orientation-reversing isometry)."""
    u = g.start.lift.copy()
    v = g.end.lift
    ph = form(u, v)
    u = u * (-np.conj(ph) / abs(ph))      # make <u, v> real negative
    basis = np.column_stack([u, v])
    coef = np.linalg.solve(basis, p.lift)
    return ProjPoint(np.conj(coef[0]) * u + np.conj(coef[1]) * v)


def dist_to_geodesic(p: ProjPoint, g: Geodesic) -> float:
    if p.cls != NEGATIVE:
        raise NonNegativePoint("distance to a geodesic needs an interior point")
    return 0.5 * dist(p, _mirror_across(g, p))


def closest_to_origin(g: Geodesic) -> ProjPoint:
    """The point of the geodesic nearest to the disc centre."""
    u = complex(g.start.lift[0])
    v = complex(g.end.lift[0])
    d = v - u
    t = -(u.real * d.real + u.imag * d.imag) / abs(d) ** 2
    foot = u + t * d
    return ProjPoint.from_disc(klein_to_poincare(foot))


def decompose_half_turns(m: Isometry, anchor: ProjPoint | None = None):
    """Write a hyperbolic isometry as a product of two half-turns.

    Returns centers (q1, q2) on the axis with reflection(q2) @ reflection(q1)
    equal to m up to overall sign; q1 is the anchor (default: the axis point
    nearest the centre) and q2 sits half a translation length further.
    """
    cls = classify(m)
    if cls.tag != HYPERBOLIC:
        raise NotHyperbolic(f"cannot decompose a {cls.tag} isometry")
    axis = Geodesic(cls.repeller, cls.attractor)
    if anchor is None:
        anchor = closest_to_origin(axis)
    elif dist_to_geodesic(anchor, axis) > 1e-8:
        raise AnchorOffAxis("anchor must lie on the translation axis")
    q2 = hyperbolic_power(m, 0.5).apply(anchor)
    return anchor, q2


def normalizing_isometry(b: ProjPoint, e: ProjPoint, q: ProjPoint) -> Isometry:
    """The isometry carrying (b, e, q) to (-1, +1, 0).

    b and e are distinct boundary points and q is an interior point on the
    geodesic joining them; this pins the map down uniquely.
    """
    if q.cls != NEGATIVE:
        raise NonNegativePoint("the third point must be interior")
    basis = np.column_stack([b.lift, e.lift])
    coef = np.linalg.solve(basis, q.lift)
    u = coef[0] * b.lift
    v = coef[1] * e.lift
    g = form(u, v)
    if abs(g.imag) > 1e-6 * max(1.0, abs(g)) or g.real >= 0:
        raise AnchorOffAxis("the interior point is not on the geodesic")
    t = math.sqrt(2.0 / abs(g))
    frame = np.column_stack([t * u, t * v])
    std = np.array([[-1.0, 1.0], [1.0, 1.0]], dtype=complex)
    raw = std @ np.linalg.inv(frame)
    det = raw[0, 0] * raw[1, 1] - raw[0, 1] * raw[1, 0]
    return Isometry(raw / np.sqrt(det))
