"""Representations generated by products of adjacent half-turn pairs.

A system of n half-turns whose descending product is a sign of the
identity generates, through its adjacent pair products, a group
abstractly presented by three relations.  This module validates such
generator systems, expands the translate words used by the doubled area
functional, certifies discreteness by area maximality together with a
positive boundary cycle, assembles the fundamental polygon with its side
pairings, and deforms representations by earthquakes acting directly on
the pair-product generators.
"""
from __future__ import annotations

import functools
import math
from dataclasses import dataclass, field

import numpy as np

from . import _dd, core
from .core import (
    HYPERBOLIC,
    Isometry,
    ProjPoint,
    classify,
)
from .errors import (
    Inconsistent,
    IndexOutOfRange,
    NonNegativePoint,
    NotDiscrete,
    NotHyperbolic,
    NotHyperbolicGenerator,
    OddN,
    RelationViolated,
    SimplicityCheckFailed,
    TooFewGenerators,
)
from .hyperelliptic import (
    DISCRETE_NEG,
    DISCRETE_POS,
    NOT_DISCRETE,
    _refl_dd,
)

__all__ = [
    "SurfRep",
    "WTable",
    "SurfacePolygon",
    "GoldmanCertificate",
    "GoldmanReport",
    "validate_relations",
    "from_hyperelliptic",
    "relation_words",
    "w_word",
    "evaluate_w",
    "evaluate_word",
    "word_identity_gap",
    "area_surface",
    "max_area",
    "is_discrete_goldman",
    "fundamental_polygon_surface",
    "earthquake_gn",
    "shift_rep",
    "reverse_rep",
    "conjugate_rep",
]

# Acceptance gate for the three defining-relation words.  The floor a
# valid system can genuinely reach scales with the squared norms of the
# relation words' partial products: restrictions of double-precision
# center data land near 3e-9 at the deepest admissible draws, and
# half-turn conjugates of those systems near 3e-8.  The gate sits one
# order above, in the same precision class as the other composite-word
# checks, and still rejects genuinely broken input by many orders.
_RELATION_TOL = 1e-7


# -- symbolic words ------------------------------------------------------
#
# Words come in two alphabets.  Half-turn words are tuples of indices in
# 1..n, each letter an involution.  Generator words are tuples of signed
# indices: +i stands for the i-th pair product, -i for its inverse, and
# the leftmost letter acts first in matrix order.


def _reduce(letters):
    """Cancel adjacent equal involutive letters, recursively."""
    out = []
    for a in letters:
        if out and out[-1] == a:
            out.pop()
        else:
            out.append(a)
    return tuple(out)


def _pair_to_gens(a: int, b: int):
    """Generator word equal to (half-turn a)(half-turn b), a != b.

    Descending runs of pair products telescope: consecutive factors share
    a half-turn, which squares to a sign of the identity.
    """
    if a > b:
        return tuple(range(a, b, -1))
    return tuple(-k for k in range(a + 1, b + 1))


def _r_to_g(letters):
    """Convert an even-length half-turn word to a generator word."""
    if len(letters) % 2:
        raise ValueError("only even-length half-turn words are convertible")
    out = []
    for k in range(0, len(letters), 2):
        out.extend(_pair_to_gens(letters[k], letters[k + 1]))
    return tuple(out)


def _w_r_word(i: int, n: int):
    """Reduced half-turn word of the i-th translate word.

    The first n-1 words stack descending half-turns (appending the last
    half-turn to keep odd stacks even); the remaining ones conjugate
    their reduction-mates by the last half-turn.
    """
    i %= 2 * n - 2
    if i <= n - 2:
        word = list(range(i, 0, -1))
        if i % 2:
            word.append(n)
    else:
        word = [n, *_w_r_word(i - (n - 1), n), n]
    return _reduce(word)


@functools.lru_cache(maxsize=None)
def _word_table(n: int):
    rwords = tuple(_w_r_word(i, n) for i in range(2 * n - 2))
    gwords = tuple(_r_to_g(w) for w in rwords)
    return rwords, gwords


def _shift_letters(word, n: int):
    """Advance every half-turn index by one, cyclically."""
    return _reduce(tuple(a % n + 1 for a in word))


def _reverse_letters(word, n: int):
    """Send half-turn index j to n - j, fixing the last index."""
    return _reduce(tuple((n - a - 1) % n + 1 for a in word))


def _conjugate_letters(word, n: int):
    """Conjugate a half-turn word by the last half-turn."""
    return _reduce((n, *word, n))


def _gen_r_word(i: int, n: int):
    """Half-turn word (i, i-1) of the i-th pair-product generator."""
    return ((i - 1) % n + 1, (i - 2) % n + 1)


def relation_words(n: int):
    """The three defining generator words: all indices descending, the
    even indices descending, and the odd indices descending."""
    full = tuple(range(n, 0, -1))
    evens = tuple(range(n, 1, -2))
    odds = tuple(range(n - 1, 0, -2))
    return full, evens, odds


def w_word(i: int, n: int):
    """Generator word of the i-th translate word, 0 <= i <= 2n-2."""
    if n < 6:
        raise TooFewGenerators("at least six generators are required")
    if n % 2:
        raise OddN("translate words exist for an even number of "
                   "generators only")
    if not 0 <= i <= 2 * n - 2:
        raise IndexOutOfRange(
            f"translate index {i} outside [0, {2 * n - 2}]")
    return _word_table(n)[1][i % (2 * n - 2)]


# -- representations -----------------------------------------------------


@dataclass(frozen=True)
class SurfRep:
    """System of n pair-product generators satisfying the three defining
    relations up to sign within tolerance.

    Generators built inside this module keep compensated double-width
    copies of their matrices; a word's closure defect is of order
    eps * (partial-product norm)**2 relative to the precision the factors
    are stored at, and for deep systems that floor would otherwise eat
    the relation tolerance.  The public generators are the rounded views.
    """

    n: int
    gens: tuple
    _mats_dd: tuple = field(compare=False, repr=False, default=None)

    def gen(self, i: int) -> Isometry:
        """The i-th generator, indices cyclic and 1-based."""
        return self.gens[(i - 1) % self.n]

    def mat_dd(self, i: int):
        """Double-width matrix of the i-th generator (internal)."""
        return self._mats_dd[(i - 1) % self.n]

    @functools.cached_property
    def _wtable(self) -> "WTable":
        return WTable(self)


class WTable:
    """Translate words of one representation with cached evaluations."""

    def __init__(self, rep: SurfRep):
        self.rep = rep
        self.n = rep.n
        self._rwords, self._gwords = _word_table(rep.n)
        self._gens_dd = list(rep._mats_dd)
        self._mats = [None] * (2 * rep.n - 2)

    def r_word(self, i: int):
        return self._rwords[i % (2 * self.n - 2)]

    def g_word(self, i: int):
        return self._gwords[i % (2 * self.n - 2)]

    def matrix_dd(self, i: int):
        """Double-width matrix of the i-th translate word."""
        i %= 2 * self.n - 2
        if self._mats[i] is None:
            self._mats[i] = _dd.word_product(self._gens_dd, self._gwords[i])
        return self._mats[i]

    def isometry(self, i: int) -> Isometry:
        return Isometry(_dd.mat_to_complex(self.matrix_dd(i)), check=False)


def _vec_dd(p: ProjPoint):
    lift = p.lift
    return (_dd.cdd_from_complex(complex(lift[0])),
            _dd.cdd_from_complex(complex(lift[1])))


def _point_dd(v) -> ProjPoint:
    return ProjPoint(np.array([_dd.cdd_to_complex(v[0]),
                               _dd.cdd_to_complex(v[1])], dtype=complex))


def evaluate_word(rep: SurfRep, word) -> Isometry:
    """Left-to-right product of generators named by a signed-index word."""
    for s in word:
        if s == 0 or not -rep.n <= s <= rep.n:
            raise IndexOutOfRange(f"generator index {s} outside 1..{rep.n}")
    return Isometry(
        _dd.mat_to_complex(_dd.word_product(rep._wtable._gens_dd, word)),
        check=False)


def evaluate_w(rep: SurfRep, i: int) -> Isometry:
    """Evaluated i-th translate word, 0 <= i <= 2n-2."""
    if not 0 <= i <= 2 * rep.n - 2:
        raise IndexOutOfRange(
            f"translate index {i} outside [0, {2 * rep.n - 2}]")
    return rep._wtable.isometry(i)


def word_identity_gap(rep: SurfRep) -> float:
    """Worst projective gap across the translate-word identity family.

    The translate words are permuted, up to explicit corrections, by
    index reversal, the index shift, and conjugation with the last
    half-turn; consecutive ratios telescope as well.  Every identity is
    composed and reduced at the word level before a single compensated
    evaluation per side, so the returned gap measures the generators'
    defect and not accumulated evaluation noise.  Matrices are compared
    after scaling to unit Frobenius norm, up to sign.
    """
    n = rep.n
    wtab = rep._wtable

    def ev_r(rword):
        return evaluate_word(rep, _r_to_g(rword))

    def gap(a, b):
        ma = a.mat / np.linalg.norm(a.mat)
        mb = b.mat / np.linalg.norm(b.mat)
        return min(np.linalg.norm(ma - mb), np.linalg.norm(ma + mb))

    worst = 0.0
    for i in range(2 * n - 2):
        # ratio telescope: w_{i+n-1}^-1 w_{i+n} agrees with w_{i+1}^-1 w_i
        lhs = ev_r(_reduce(wtab.r_word(i + n - 1)[::-1] + wtab.r_word(i + n)))
        rhs = ev_r(_reduce(wtab.r_word(i + 1)[::-1] + wtab.r_word(i)))
        worst = max(worst, gap(lhs, rhs))
        # reversal sends the i-th word to the (n-1-i)-th
        lhs = ev_r(_reverse_letters(wtab.r_word(i), n))
        worst = max(worst, gap(lhs, wtab.isometry((n - 1 - i) % (2 * n - 2))))
    # the shift advances the index, with a correction by the first word
    # whose side depends on the parity and range of the index
    for i in range(0, n - 1, 2):
        lhs = ev_r(_reduce(_shift_letters(wtab.r_word(i), n)
                           + wtab.r_word(1)))
        worst = max(worst, gap(lhs, wtab.isometry(i + 1)))
    for i in range(1, n - 2, 2):
        lhs = ev_r(_shift_letters(wtab.r_word(i), n))
        worst = max(worst, gap(lhs, wtab.isometry(i + 1)))
    for i in range(n - 1, 2 * n - 2, 2):
        lhs = ev_r(_shift_letters(wtab.r_word(i), n))
        rhs = ev_r(_reduce(wtab.r_word(1) + wtab.r_word(i + 1)))
        worst = max(worst, gap(lhs, rhs))
    for i in range(n, 2 * n - 3, 2):
        lhs = ev_r(_reduce(_shift_letters(wtab.r_word(i), n)
                           + wtab.r_word(1)))
        rhs = ev_r(_reduce(wtab.r_word(1) + wtab.r_word(i + 1)))
        worst = max(worst, gap(lhs, rhs))
    # prepending the i-th pair product (as half-turns n, i) jumps the
    # index by n-1 or n-2
    for i in range(1, n):
        pre = _reduce((n, i))
        lhs = ev_r(_reduce(pre + wtab.r_word(i - 1)))
        worst = max(worst, gap(lhs, wtab.isometry(i + n - 1)))
        lhs = ev_r(_reduce(pre + wtab.r_word(i)))
        worst = max(worst, gap(lhs, wtab.isometry(i + n - 2)))
    # half-turn conjugation identities; the corner cases where the
    # conjugating half-turn collides with the last one degenerate, so
    # the family runs over the interior indices only
    for i in range(2, n - 1):
        pre = _reduce((n, i + 1))
        post = _reduce((i + 1, n))
        lhs = ev_r(_reduce(pre + wtab.r_word(i)))
        worst = max(worst, gap(lhs, wtab.isometry(i + n)))
        lhs = ev_r(_reduce(pre + wtab.r_word(i + 1)))
        worst = max(worst, gap(lhs, wtab.isometry(i + n - 1)))
        lhs = ev_r(_reduce(post + wtab.r_word(i + n - 1)))
        worst = max(worst, gap(lhs, wtab.isometry(i + 1)))
        lhs = ev_r(_reduce(post + wtab.r_word(i + n)))
        worst = max(worst, gap(lhs, wtab.isometry(i)))
    return worst


def validate_relations(gens, n: int | None = None, *, _mats_dd=None) -> SurfRep:
    """Check the three defining relations and wrap the generators.

    Each relation word must evaluate to plus or minus the identity within
    tolerance; the first failure is reported with its residual.  The
    products are taken in compensated arithmetic, so the residuals
    measure the generators' actual defect rather than evaluation noise,
    no matter how large the partial products grow.
    """
    gens = tuple(
        g if isinstance(g, Isometry) else Isometry(np.asarray(g, dtype=complex))
        for g in gens)
    if n is None:
        n = len(gens)
    if len(gens) != n:
        raise RelationViolated(f"expected {n} generators, got {len(gens)}")
    if n < 6:
        raise TooFewGenerators("at least six generators are required")
    if n % 2:
        raise OddN("pair-product systems need an even number of generators")
    if _mats_dd is None:
        _mats_dd = tuple(_dd.mat_from_complex(g.mat) for g in gens)
    else:
        _mats_dd = tuple(_mats_dd)
    for which, word in enumerate(relation_words(n), start=1):
        residual = _dd.residual_from_pm_identity(
            _dd.word_product(_mats_dd, word))
        if residual > _RELATION_TOL:
            raise RelationViolated(
                f"defining relation {which} is off the identity "
                f"by {residual:.3e}", residual=residual)
    return SurfRep(n, gens, _mats_dd)


def from_hyperelliptic(rep) -> SurfRep:
    """Pair-product generators of a half-turn representation.

    The i-th generator is the half-turn about the i-th center times the
    half-turn about the previous one (the first reaches back to the last
    center).  Defined for an even number of centers only.
    """
    if rep.n % 2:
        raise OddN("the pair-product subgroup closes up for an even "
                   "number of half-turns only")
    refls = [_refl_dd(complex(rep.center(i).disc))
             for i in range(1, rep.n + 1)]
    mats = [_dd.mat_mul(refls[i - 1], refls[i - 2])
            for i in range(1, rep.n + 1)]
    gens = [Isometry(_dd.mat_to_complex(m), check=False) for m in mats]
    return validate_relations(gens, rep.n, _mats_dd=mats)


# -- area ----------------------------------------------------------------


def _fan_area_dd(lifts, iso=None) -> float:
    """Signed area of the polygon with the given compensated vertex
    lifts, fanned around the disc centre.

    The pairing of a translated lift with itself equals that of its base
    point, however large the lift grows, so a vertex counts as ideal
    exactly when its base point is; a repeated ideal vertex contributes
    nothing and is the one case skipped.  Coinciding interior vertices
    need no guard: their triangle factor degenerates to a positive real.
    """
    c = (_dd._CZERO, _dd._CONE)
    m = len(lifts)
    if iso is None:
        iso = [False] * m

    def abs2(v):
        return (_dd.dd_to_float(_dd.cdd_abs2(v[0]))
                + _dd.dd_to_float(_dd.cdd_abs2(v[1])))

    total = 0.0
    for k in range(m):
        u, w = lifts[k], lifts[(k + 1) % m]
        if iso[k] or iso[(k + 1) % m]:
            cross = _dd.cdd_sub(_dd.cdd_mul(u[0], w[1]),
                                _dd.cdd_mul(u[1], w[0]))
            c2 = _dd.dd_to_float(_dd.cdd_abs2(cross))
            if c2 <= 1e-40 * abs2(u) * abs2(w):
                continue    # repeated ideal point contributes nothing
        tri = _dd.cdd_neg(_dd.cdd_mul(
            _dd.cdd_mul(_dd.vec_form(c, u), _dd.vec_form(u, w)),
            _dd.vec_form(w, c)))
        total += 2.0 * math.atan2(tri[1][0], tri[0][0])
    return total


def area_surface(rep: SurfRep, p: ProjPoint | None = None,
                 q: ProjPoint | None = None) -> float:
    """Signed area of the alternating translate polygon of p and q.

    The 2n-2 vertices are the translate words applied alternately to p
    (even index) and q (odd index); the value is independent of both base
    points and bounded by twice the (n-4)pi extremes.  Base points may
    sit anywhere in the closed disc.
    """
    if p is None:
        p = ProjPoint.from_disc(0)
    if q is None:
        q = ProjPoint.from_disc(0)
    if p.cls == core.POSITIVE or q.cls == core.POSITIVE:
        raise NonNegativePoint("base points must not be exterior")
    wt = rep._wtable
    vp, vq = _vec_dd(p), _vec_dd(q)
    lifts = [_dd.vec_apply(wt.matrix_dd(j), vp if j % 2 == 0 else vq)
             for j in range(2 * rep.n - 2)]
    iso = [(p if j % 2 == 0 else q).cls == core.ISOTROPIC
           for j in range(2 * rep.n - 2)]
    return _fan_area_dd(lifts, iso)


def max_area(n: int) -> float:
    """Largest attainable area for a system of n generators."""
    return 2 * (n - 4) * math.pi


# -- discreteness --------------------------------------------------------


@dataclass(frozen=True)
class GoldmanCertificate:
    """Boundary data certifying a maximal-area representation.

    Repelling and attracting fixed points of the generators and of their
    conjugates by the last half-turn, interleaved with translates of a
    distinguished fixed point, form one monotone boundary cycle; the
    cycle is recorded for both admissible choices of that point.
    """

    cycle_from_attractor: tuple
    cycle_from_repeller: tuple
    orientation: str
    endpoint_match_error: float


@dataclass(frozen=True)
class GoldmanReport:
    """Discreteness verdict for a pair-product system by area maximality."""

    verdict: str
    area: float
    max_area: float
    certificate: GoldmanCertificate | None

    @property
    def is_discrete(self) -> bool:
        return self.verdict != NOT_DISCRETE


def _conjugate_gen_matrices_dd(rep: SurfRep):
    """Double-width matrices of the generators conjugated by the last
    half-turn, expressed through generator words."""
    gens_dd = rep._wtable._gens_dd
    out = []
    for i in range(1, rep.n + 1):
        rw = _reduce((rep.n, *_gen_r_word(i, rep.n), rep.n))
        out.append(_dd.word_product(gens_dd, _r_to_g(rw)))
    return out


def is_discrete_goldman(rep: SurfRep) -> GoldmanReport:
    """Discreteness verdict by area maximality, with boundary certificate.

    Maximal positive or negative area settles the verdict; on a maximal
    representation every generator and every conjugated generator must be
    hyperbolic, their fixed points agree pairwise at the seam, and the
    interleaved boundary cycle winds monotonically with the sign of the
    area.  A non-maximal representation gets no certificate.
    """
    n = rep.n
    area = area_surface(rep)
    amax = max_area(n)
    if abs(area - amax) < 1e-6:
        verdict = DISCRETE_POS
    elif abs(area + amax) < 1e-6:
        verdict = DISCRETE_NEG
    else:
        return GoldmanReport(NOT_DISCRETE, area, amax, None)

    classed = []
    for i in range(1, n + 1):
        cls = classify(rep.gen(i))
        if cls.tag != HYPERBOLIC:
            raise NotHyperbolicGenerator(
                f"generator {i} is {cls.tag} on a maximal-area "
                "representation; the certificate theory forces hyperbolic")
        classed.append(cls)
    conj_classed = []
    for i, m in enumerate(_conjugate_gen_matrices_dd(rep), start=1):
        cls = classify(Isometry(_dd.mat_to_complex(m), check=False))
        if cls.tag != HYPERBOLIC:
            raise NotHyperbolicGenerator(
                f"conjugated generator {i} is {cls.tag} on a maximal-area "
                "representation; the certificate theory forces hyperbolic")
        conj_classed.append(cls)

    def rep_pt(j):        # repeller named j comes from the next generator
        return classed[j % n].repeller

    def att_pt(j):
        return classed[(j - 1) % n].attractor

    def rep_pt_c(j):
        return conj_classed[j % n].repeller

    def att_pt_c(j):
        return conj_classed[(j - 1) % n].attractor

    seam = max(_boundary_gap(rep_pt(n), att_pt_c(1)),
               _boundary_gap(att_pt(1), rep_pt_c(n)))
    if seam > 1e-6:
        raise Inconsistent(
            f"fixed points fail to match at the seam by {seam:.3e}")

    wt = rep._wtable

    def translate(j, vd):
        return _point_dd(_dd.vec_apply(wt.matrix_dd(j), vd))

    cycles = []
    for d in (att_pt(1), rep_pt(n)):
        vd = _vec_dd(d)
        pts = [att_pt(1), rep_pt(2), translate(2, vd)]
        for i in range(3, n - 1):
            pts += [rep_pt(i), att_pt(i), translate(i, vd)]
        pts += [att_pt(n - 1), rep_pt(n)]
        pts += [rep_pt_c(2), translate(n + 1, vd)]
        for i in range(3, n - 1):
            pts += [rep_pt_c(i), att_pt_c(i), translate(n + i - 1, vd)]
        pts.append(att_pt_c(n - 1))
        cycles.append(tuple(pts))

    want = core.POSITIVE_CYCLE if verdict == DISCRETE_POS \
        else core.NEGATIVE_CYCLE
    for pts in cycles:
        _check_certificate_order(pts, verdict == DISCRETE_POS)
    cert = GoldmanCertificate(cycles[0], cycles[1], want, seam)
    return GoldmanReport(verdict, area, amax, cert)


def _check_certificate_order(pts, positive: bool) -> None:
    """Strict cyclic interleaving of a certificate cycle.

    Adjacent certificate points crowd far below the generic angular
    tolerance on deeper systems while staying strictly ordered, so the
    coincidence floor here is set by what the fixed-point extraction
    actually resolves rather than by the generic tolerance.  One full
    turn with every step strictly forward makes the points pairwise
    distinct as well.
    """
    m = len(pts)
    ang = [p.angle for p in pts]
    if positive:
        gaps = [(ang[(k + 1) % m] - ang[k]) % core.TWO_PI for k in range(m)]
    else:
        gaps = [(ang[k] - ang[(k + 1) % m]) % core.TWO_PI for k in range(m)]
    if min(min(g, core.TWO_PI - g) for g in gaps) <= 1e-12:
        raise Inconsistent(
            "certificate points collide beyond angular resolution")
    if round(sum(gaps) / core.TWO_PI) != 1:
        raise Inconsistent(
            "certificate cycle fails to wind with the area sign")


def _boundary_gap(a: ProjPoint, b: ProjPoint) -> float:
    d = (a.angle - b.angle) % core.TWO_PI
    return min(d, core.TWO_PI - d)


# -- fundamental polygon -------------------------------------------------


@dataclass(frozen=True)
class SurfacePolygon:
    """Fundamental polygon of a discrete pair-product system.

    2(n-2) vertices alternate translates of two base points chosen on the
    axis of the first generator, one the image of the other.  Edges pair
    up across the polygon; the pairing isometries generate the group with
    a single defining relation, and all vertices form one cycle.
    """

    vertices: tuple
    base_p: ProjPoint
    base_q: ProjPoint
    pairings: tuple
    edges: tuple
    angle_sum: float
    area: float
    relation_residual: float
    vertex_cycle_length: int
    vertex_cycle_error: float
    # worst distance between a pairing's image of an edge endpoint and
    # the partner endpoint, measured on the compensated lifts during
    # construction (the stored float64 vertices sit too close to the
    # circle for an after-the-fact check to be well conditioned)
    pairing_endpoint_error: float


def _cosh_dist_dd(a, b):
    """cosh of the distance between two interior double-double lifts."""
    num = _dd.cdd_abs2(_dd.vec_form(a, b))
    den = _dd.dd_mul(_dd.vec_form(a, a)[0], _dd.vec_form(b, b)[0])
    c2 = _dd.dd_div(num, den)
    return _dd.dd_sub(_dd.dd_add(c2, c2), (1.0, 0.0))


def _interior_angles_dd(lifts) -> list[float]:
    """Corner angles of a geodesic polygon from double-double lifts.

    Translates of interior points can sit exponentially close to the
    boundary, where double precision cannot resolve the side lengths;
    the law-of-cosines data is therefore formed from compensated
    hermitian pairings before the single arccos rounding at the end.
    """
    m = len(lifts)
    out = []
    for j in range(m):
        u, v, w = lifts[(j - 1) % m], lifts[j], lifts[(j + 1) % m]
        ch_a = _cosh_dist_dd(v, u)
        ch_b = _cosh_dist_dd(v, w)
        ch_c = _cosh_dist_dd(u, w)
        sh = _dd.dd_mul(
            _dd.dd_sqrt(_dd.dd_sub(_dd.dd_mul(ch_a, ch_a), (1.0, 0.0))),
            _dd.dd_sqrt(_dd.dd_sub(_dd.dd_mul(ch_b, ch_b), (1.0, 0.0))))
        cos_t = _dd.dd_div(_dd.dd_sub(_dd.dd_mul(ch_a, ch_b), ch_c), sh)
        # corners pinch toward zero on deep systems; the sine keeps
        # those resolved where the rounded cosine saturates at 1
        sin2 = _dd.dd_sub((1.0, 0.0), _dd.dd_mul(cos_t, cos_t))
        sin_t = _dd.dd_sqrt(sin2) if sin2[0] > 0.0 else (0.0, 0.0)
        out.append(math.atan2(sin_t[0], cos_t[0]))
    return out


def _klein_dd(v):
    """Straight-chord coordinate of a lift, both components double-width."""
    num = _dd.cdd_mul(v[0], _dd.cdd_conj(v[1]))
    den = _dd.dd_add(_dd.cdd_abs2(v[0]), _dd.cdd_abs2(v[1]))
    return (_dd.dd_div(_dd._mul_float(num[0], 2.0), den),
            _dd.dd_div(_dd._mul_float(num[1], 2.0), den))


def _signed_interior_angles(lifts) -> list[float]:
    """Interior angles, reading reflex corners from the traversal
    orientation in the straight-chord chart.

    Deep polygons degenerate into slivers: one genuinely reflex corner
    and many pinched ones whose turning direction sits far below double
    precision, so the chart coordinates and cross products stay
    double-width until the final sign and angle reads.
    """
    ks = [_klein_dd(v) for v in lifts]
    m = len(ks)

    def cross(a, b, c, d):  # (b - a) x (d - c)
        u0 = _dd.dd_sub(b[0], a[0])
        u1 = _dd.dd_sub(b[1], a[1])
        w0 = _dd.dd_sub(d[0], c[0])
        w1 = _dd.dd_sub(d[1], c[1])
        return _dd.dd_sub(_dd.dd_mul(u0, w1), _dd.dd_mul(u1, w0))

    zero = (0.0, 0.0)
    shoe = zero
    for j in range(m):
        a, b = ks[j], ks[(j + 1) % m]
        shoe = _dd.dd_add(shoe, _dd.dd_sub(_dd.dd_mul(a[0], b[1]),
                                           _dd.dd_mul(a[1], b[0])))
    orient = 1.0 if shoe[0] >= 0 else -1.0
    base = _interior_angles_dd(lifts)
    out = []
    for j in range(m):
        turn = cross(ks[(j - 1) % m], ks[j], ks[j], ks[(j + 1) % m])
        ang = base[j]
        if turn[0] * orient < 0:
            ang = 2 * math.pi - ang
        out.append(ang)
    return out


def fundamental_polygon_surface(rep: SurfRep) -> SurfacePolygon:
    """Fundamental polygon with side pairings for a discrete system.

    Base points sit on the axis of the first generator (one the nearest
    point to the disc centre, the other its generator image); vertices
    are their alternating translates.  Verifies simplicity, the interior
    angle sum, every pairing's endpoint images, the single defining
    relation of the pairing group, and the closure of the vertex cycle.
    """
    report = is_discrete_goldman(rep)
    if not report.is_discrete:
        raise NotDiscrete("fundamental polygons exist only for "
                          "maximal-area representations")
    n = rep.n
    h1 = rep.gen(1)
    cls = classify(h1)
    if cls.tag != HYPERBOLIC:
        raise NotHyperbolicGenerator("the first generator must translate "
                                     "along an axis")
    q = core.closest_to_origin(core.Geodesic(cls.repeller, cls.attractor))
    p = h1.apply(q)
    wt = rep._wtable
    vp, vq = _vec_dd(p), _vec_dd(q)

    windices = list(range(1, n - 1)) + list(range(n, 2 * n - 2))
    vlifts = [_dd.vec_apply(wt.matrix_dd(j), vp if j % 2 == 0 else vq)
              for j in windices]
    verts = tuple(_point_dd(v) for v in vlifts)
    m = len(verts)          # 2(n-2)

    def lift_at_windex(j):
        j %= 2 * n - 2
        if j == 0:
            return vlifts[0]
        if j == n - 1:
            return vlifts[n - 2]
        return vlifts[j - 1] if j <= n - 2 else vlifts[j - 2]

    pairings_dd = tuple(
        _dd.word_product(wt._gens_dd, _pair_to_gens(n, i))
        for i in range(2, n))
    pairings = tuple(Isometry(_dd.mat_to_complex(m_dd), check=False)
                     for m_dd in pairings_dd)

    # Each pairing must carry its edge's endpoints onto the partner
    # edge's endpoints (in swapped order); images are formed from the
    # compensated lifts so the comparison measures geometry, not noise.
    pairing_err = 0.0
    for i in range(2, n):
        g_dd = pairings_dd[i - 2]
        for src, dst in ((i - 1, i + n - 1), (i, i + n - 2)):
            img = _point_dd(_dd.vec_apply(g_dd, lift_at_windex(src)))
            target = _point_dd(lift_at_windex(dst))
            pairing_err = max(pairing_err,
                              abs(complex(img.disc) - complex(target.disc)))
            if not img.close_to(target, 1e-8):
                raise Inconsistent(
                    f"pairing {i} misses its partner edge endpoint")

    edges = tuple((verts[k], verts[(k + 1) % m]) for k in range(m))

    _check_simplicity(verts)

    angles = _signed_interior_angles(vlifts)
    angle_sum = float(sum(angles))

    # Single defining relation of the pairing group: alternating signs
    # over descending labels, then the sign-flipped run again.
    word = []
    for k in range(n - 1, 1, -1):
        word.append((k - 1) if k % 2 else -(k - 1))
    for k in range(n - 1, 1, -1):
        word.append(-(k - 1) if k % 2 else (k - 1))
    relation_residual = _dd.residual_from_pm_identity(
        _dd.word_product(pairings_dd, word))
    if relation_residual > 1e-7:
        raise Inconsistent(
            f"pairing relation off the identity by {relation_residual:.3e}")

    cyc_len, cyc_err = _vertex_cycle(vlifts, pairings_dd, n)

    area = abs(_fan_area_dd(vlifts))
    return SurfacePolygon(verts, p, q, pairings, edges, angle_sum, area,
                          relation_residual, cyc_len, cyc_err, pairing_err)


def _check_simplicity(verts) -> None:
    """No two non-adjacent edges may cross.

    In the straight-chord chart every edge is a line segment, so the
    check is plain segment intersection with a small clearance: robust
    even when translated vertices crowd the boundary circle, where
    arc-based tests lose their footing.
    """
    m = len(verts)
    ks = [core.poincare_to_klein(v.disc) for v in verts]

    def cross(u, v):
        return u.real * v.imag - u.imag * v.real

    for a in range(m):
        a1, a2 = ks[a], ks[(a + 1) % m]
        da = a2 - a1
        for b in range(a + 1, m):
            if b == a + 1 or (a == 0 and b == m - 1):
                continue
            b1, b2 = ks[b], ks[(b + 1) % m]
            db = b2 - b1
            den = cross(da, db)
            if abs(den) <= 1e-14 * abs(da) * abs(db):
                # Parallel chords; an actual overlap means two edges
                # share a geodesic.
                if abs(cross(b1 - a1, da)) > 1e-12 * abs(da) * max(
                        abs(b1 - a1), abs(da)):
                    continue
                t1 = ((b1 - a1).real * da.real + (b1 - a1).imag * da.imag)
                t2 = ((b2 - a1).real * da.real + (b2 - a1).imag * da.imag)
                lo, hi = min(t1, t2), max(t1, t2)
                if hi > 1e-10 and lo < abs(da) ** 2 * (1 - 1e-10):
                    raise SimplicityCheckFailed(
                        f"edges {a} and {b} lie on one geodesic")
                continue
            t = cross(b1 - a1, db) / den
            s = cross(b1 - a1, da) / den
            if 1e-10 < t < 1 - 1e-10 and 1e-10 < s < 1 - 1e-10:
                raise SimplicityCheckFailed(
                    f"edges {a} and {b} cross inside the polygon")


def _vertex_cycle(vlifts, pairings_dd, n: int):
    """Follow the edge identifications around the single vertex cycle.

    Each pairing carries its edge's endpoints onto the partner edge's
    (already verified); walking those endpoint maps from the first
    vertex along its outgoing edge must visit every vertex once and
    return, with the composed isometry fixing the start.  The composite
    is accumulated double-width: its word has the same exploding partial
    products as the defining relations.
    """
    m = len(vlifts)         # edge k joins vertices k and k+1
    wrap = 2 * n - 2

    def vert_of(j):
        j %= wrap
        if j == 0:
            return 0
        if j == n - 1:
            return n - 2
        return j - 1 if j <= n - 2 else j - 2

    start = (0, 0)
    v, k = start
    composite = _dd.EYE
    visited = 0
    while True:
        if k < n - 2:       # forward through pairing k+2
            g = pairings_dd[k]
            ends = (k + 1, k + 2)
            image = {k + 1: k + n + 1, k + 2: k + n}
        else:               # backward through pairing k+4-n
            g = _dd.mat_inv(pairings_dd[k + 2 - n])
            ends = (k + 2, (k + 3) % wrap)
            image = {k + 2: k + 4 - n, (k + 3) % wrap: k + 3 - n}
        composite = _dd.mat_mul(g, composite)
        v2 = vert_of(image[ends[0] if v == k else ends[1]])
        k2 = (k + (n - 2)) % m
        v = v2
        k = (v2 - 1) % m if k2 == v2 else v2
        visited += 1
        if (v, k) == start:
            break
        if visited > 4 * m:
            raise Inconsistent("vertex cycle fails to close")
    img = _dd.vec_apply(composite, vlifts[0])
    err = abs(_point_dd(img).disc - _point_dd(vlifts[0]).disc)
    return visited, float(err)


# -- deformations and generator moves ------------------------------------


def _power_ld(m: np.ndarray, t: float) -> np.ndarray:
    """Real power of a hyperbolic matrix, in extended precision."""
    retr = (m[0, 0] + m[1, 1]).real
    mm = -m if retr < 0 else m
    ch = abs(retr) / np.longdouble(2)
    if ch <= 1.0 + core.EPS_CLS:
        raise NotHyperbolic(f"|trace| = {float(2 * ch)} is not > 2")
    half_len = np.arccosh(ch)
    sh = np.sinh(half_len)
    eye = np.eye(2, dtype=np.clongdouble)
    nhat = (mm - ch * eye) / sh
    a = np.longdouble(t) * half_len
    return np.cosh(a) * eye + np.sinh(a) * nhat


def earthquake_gn(rep: SurfRep, i: int, t: float) -> SurfRep:
    """Earthquake along the axis of the i-th generator.

    The following generator picks up the inverse flow at twice the time
    on the right, the preceding one the forward flow on the left, and all
    others stay; the defining relations survive the substitution.
    """
    g_ld = _dd.mat_to_clongdouble(rep.mat_dd(i))
    forward = _dd.mat_from_clongdouble(_power_ld(g_ld, 2.0 * t))
    backward = _dd.mat_from_clongdouble(_power_ld(g_ld, -2.0 * t))
    new = list(rep._mats_dd)
    new[i % rep.n] = _dd.mat_mul(rep.mat_dd(i + 1), backward)
    new[(i - 2) % rep.n] = _dd.mat_mul(forward, rep.mat_dd(i - 1))
    gens = [Isometry(_dd.mat_to_complex(m), check=False) for m in new]
    return validate_relations(gens, rep.n, _mats_dd=new)


def shift_rep(rep: SurfRep) -> SurfRep:
    """Precompose with the index-advancing automorphism: the new i-th
    generator is the old (i+1)-th."""
    return validate_relations(
        tuple(rep.gen(i + 1) for i in range(1, rep.n + 1)), rep.n,
        _mats_dd=[rep.mat_dd(i + 1) for i in range(1, rep.n + 1)])


def reverse_rep(rep: SurfRep) -> SurfRep:
    """Precompose with the index-reversing automorphism: the new i-th
    generator is the inverse of the old (n+1-i)-th."""
    return validate_relations(
        tuple(rep.gen(rep.n + 1 - i).inverse()
              for i in range(1, rep.n + 1)), rep.n,
        _mats_dd=[_dd.mat_inv(rep.mat_dd(rep.n + 1 - i))
                  for i in range(1, rep.n + 1)])


def conjugate_rep(rep: SurfRep) -> SurfRep:
    """Conjugate every generator by the last half-turn, expressed through
    generator words."""
    mats = _conjugate_gen_matrices_dd(rep)
    gens = tuple(Isometry(_dd.mat_to_complex(m), check=False) for m in mats)
    return validate_relations(gens, rep.n, _mats_dd=mats)
