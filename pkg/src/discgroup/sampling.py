"""Seeded representation samplers and independent brute-force oracles.

The samplers draw certified-discrete representations through boundary
coordinates and generic (possibly non-discrete) ones by closing a random
half-turn chain.  The oracles re-derive what the analytic criteria
assert — orbit separation, polygon tiling, area values — by direct
enumeration, so the two routes can be compared on every sample.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import core
from .core import Isometry, ProjPoint, classify, dist, reflection
from .errors import (
    BudgetExceeded,
    RetryBudgetExhausted,
    SpreadTooLarge,
)
from . import hyperelliptic as hyp

__all__ = [
    "SampleConfig",
    "OrbitProbeReport",
    "TilingReport",
    "sample_discrete",
    "sample_generic",
    "orbit_probe",
    "pairing_words",
    "tiling_check",
    "area_oracle",
    "CONSISTENT",
    "VIOLATION",
    "INCONCLUSIVE",
]

CONSISTENT = "consistent_with_discrete"
VIOLATION = "violation_found"
INCONCLUSIVE = "inconclusive"

# Hyperbolic radius of the disc the generic sampler draws free centers
# from.  Large enough that the closing element is almost always
# hyperbolic, small enough that validation stays well conditioned.
_GENERIC_RADIUS = 2.0


@dataclass(frozen=True)
class SampleConfig:
    """Deterministic sampling parameters.

    The same configuration always produces the same representation; a
    batch index derives an independent substream, so parallel and serial
    batch runs agree element by element.
    """

    n: int
    seed: int
    sign: int = +1
    min_gap: float = 0.05
    retry_budget: int = 200

    def __post_init__(self):
        if self.n < 5:
            raise ValueError("representations need at least five generators")
        if self.sign not in (+1, -1):
            raise ValueError("sign must be +1 or -1")
        if self.min_gap < 0:
            raise ValueError("the minimum angular gap cannot be negative")
        if self.min_gap * (2 * self.n - 6) >= math.pi:
            raise ValueError(
                "infeasible: the angular gaps alone exceed the semicircle")
        if self.retry_budget < 1:
            raise ValueError("the retry budget must be positive")


def _stream(cfg: SampleConfig, index: int):
    return np.random.default_rng(
        np.random.SeedSequence(entropy=cfg.seed, spawn_key=(index,)))


def sample_discrete(cfg: SampleConfig, index: int = 0) -> "hyp.HypRep":
    """Certified-discrete draw through sorted boundary coordinates.

    2n-6 angles are drawn uniformly subject to the minimum-gap
    constraint (a sorted uniform sample plus a deterministic gap
    stagger), negated for sign -1, and fed through the coordinate map.
    """
    rng = _stream(cfg, index)
    m = 2 * cfg.n - 6
    span = math.pi - cfg.min_gap * m
    last_err = None
    for _ in range(cfg.retry_budget):
        try:
            s = np.sort(rng.uniform(0.0, span, size=m))
            angles = [cfg.min_gap / 2 + k * cfg.min_gap + float(s[k])
                      for k in range(m)]
            if cfg.sign < 0:
                angles = [-a for a in angles]
            return hyp.from_boundary_tuple(
                hyp.BoundaryTuple(angles, cfg.sign))
        except Exception as err:          # gapless draws may collide
            last_err = err
    raise RetryBudgetExhausted(
        f"no admissible boundary tuple in {cfg.retry_budget} draws "
        f"(last failure: {last_err})")


def sample_generic(cfg: SampleConfig, index: int = 0) -> "hyp.HypRep":
    """Valid but not necessarily discrete draw.

    The first n-2 centers fall uniformly (by area) in a disc of
    hyperbolic radius 2; whenever the inverse of their reflection
    product is hyperbolic it splits into two final half-turns about a
    random anchor on its axis, closing the defining relation exactly.
    """
    rng = _stream(cfg, index)
    cosh_r = math.cosh(_GENERIC_RADIUS)
    for _ in range(cfg.retry_budget):
        free = []
        for _k in range(cfg.n - 2):
            rho = math.acosh(1.0 + rng.uniform(0, 1) * (cosh_r - 1.0))
            theta = rng.uniform(0, 2 * math.pi)
            free.append(ProjPoint.from_disc(
                math.tanh(rho / 2) * complex(math.cos(theta),
                                             math.sin(theta))))
        prod = Isometry.identity()
        for q in free:
            prod = reflection(q) @ prod
        k = prod.inverse()
        cls = classify(k)
        if cls.tag != core.HYPERBOLIC:
            continue
        try:
            axis = core.Geodesic(cls.repeller, cls.attractor)
            anchor = core.hyperbolic_power(
                k, float(rng.uniform(-1, 1))).apply(
                    core.closest_to_origin(axis))
            q1, q2 = core.decompose_half_turns(k, anchor)
            return hyp.validate([p.disc for p in free] + [q1.disc, q2.disc])
        except Exception:
            continue
    raise RetryBudgetExhausted(
        f"no hyperbolic closing element in {cfg.retry_budget} draws")


# -- orbit probe ---------------------------------------------------------


@dataclass(frozen=True)
class OrbitProbeReport:
    """Outcome of the brute-force orbit separation scan."""

    length_bound: int
    base: ProjPoint
    min_displacement: float
    colliding_pair: tuple | None
    verdict: str


def _probe_alphabet(rep):
    """Letters and matrices for the word enumeration.

    Half-turn systems use involutive letters 1..n; pair-product systems
    use signed letters, negative for the inverse.
    """
    if hasattr(rep, "centers"):
        mats = [reflection(q).mat for q in rep.centers]
        letters = list(range(1, rep.n + 1))
        inverse_of = {i: i for i in letters}
        relations = [tuple(range(rep.n, 0, -1))]
    else:
        mats = [g.mat for g in rep.gens]
        letters = [i for i in range(1, rep.n + 1)]
        letters += [-i for i in range(1, rep.n + 1)]
        inverse_of = {i: -i for i in letters}
        from .surface import relation_words
        relations = [tuple(w) for w in relation_words(rep.n)]
    return mats, letters, inverse_of, relations


def _relation_shadows(relations, inverse_of, bound):
    """Every cyclic rotation of a defining relation or of its inverse
    whose length fits inside the bound."""
    out = set()
    for rel in relations:
        forms = [rel, tuple(inverse_of[a] for a in reversed(rel))]
        for w in forms:
            if len(w) > bound:
                continue
            for s in range(len(w)):
                out.add(w[s:] + w[:s])
    return out


def _word_matrix(mats, word):
    out = np.eye(2, dtype=complex)
    for s in word:
        m = mats[abs(s) - 1]
        out = out @ (m if s > 0 else np.linalg.inv(m))
    return out


def _pm_identity_residual(m):
    return min(np.linalg.norm(m - np.eye(2)), np.linalg.norm(m + np.eye(2)))


def orbit_probe(rep, length_bound: int, displacement_floor: float,
                base: ProjPoint | None = None,
                word_cap: int = 200_000) -> OrbitProbeReport:
    """Scan all reduced words up to a length bound for orbit collisions.

    Words that are rotations of a defining relation (or of an inverse)
    are quotiented away; words evaluating to a sign of the identity move
    nothing and are skipped.  Any remaining word displacing the base
    point below the floor is a violation, reported as the pair of orbit
    words whose images collide.  An elliptic word turning by something
    other than a half-turn leaves the verdict inconclusive: its powers
    may accumulate beyond the enumerated lengths.
    """
    if base is None:
        base = ProjPoint.from_disc(0.17 + 0.05j)
    mats, letters, inverse_of, relations = _probe_alphabet(rep)
    k = len(letters)
    total = 0
    size = 1
    for _ in range(length_bound):
        size *= (k - 1) if total else k
        total += size
    if total > word_cap:
        raise BudgetExceeded(
            f"{total} words of length <= {length_bound} exceed the cap "
            f"of {word_cap}")
    if length_bound < 1:
        return OrbitProbeReport(length_bound, base, math.inf, None,
                                INCONCLUSIVE)

    shadows = _relation_shadows(relations, inverse_of, length_bound)
    best = (math.inf, None)
    suspicious = False
    stack = [((), np.eye(2, dtype=complex))]
    while stack:
        word, mat = stack.pop()
        if word:
            if word not in shadows:
                res = _pm_identity_residual(mat)
                if res >= 1e-8:
                    moved = Isometry(mat, check=False).apply(base)
                    # an image flung against the boundary circle has
                    # effectively infinite displacement
                    if moved.cls == core.NEGATIVE:
                        d = dist(base, moved)
                        if d < best[0]:
                            best = (d, word)
                    tr = abs((mat[0, 0] + mat[1, 1]).real)
                    if tr < 2 - core.EPS_CLS:
                        # elliptic: a genuine half-turn has trace 0
                        if tr > 1e-6:
                            suspicious = True
        if len(word) < length_bound:
            for a in letters:
                if word and inverse_of[word[-1]] == a:
                    continue
                m = mats[abs(a) - 1]
                stack.append((word + (a,),
                              mat @ (m if a > 0 else np.linalg.inv(m))))

    min_disp, min_word = best
    if min_word is not None and min_disp < displacement_floor:
        half = len(min_word) // 2
        left = tuple(inverse_of[a] for a in reversed(min_word[:half]))
        return OrbitProbeReport(length_bound, base, min_disp,
                                (left, min_word[half:]), VIOLATION)
    if min_word is None:
        return OrbitProbeReport(length_bound, base, math.inf, None,
                                INCONCLUSIVE)
    verdict = INCONCLUSIVE if suspicious else CONSISTENT
    return OrbitProbeReport(length_bound, base, min_disp, None, verdict)


# -- tiling oracle -------------------------------------------------------


@dataclass(frozen=True)
class TilingReport:
    """Outcome of the sampled-point tiling check; truthy iff clean."""

    ok: bool
    cells_checked: int
    samples_per_cell: int
    witness_point: complex | None
    witness_words: tuple | None

    def __bool__(self) -> bool:
        return self.ok


def _klein_vertices(polygon):
    verts = getattr(polygon, "vertices", polygon)
    return [core.poincare_to_klein(v.disc) for v in verts]


def _inside_klein(ks, z, clearance):
    """Strict interior test in the straight-chord chart.

    Even-odd ray crossing decides interiority; any point within the
    clearance of an edge chord counts as outside, so orbit points
    sliding along shared edges never register as overlap.
    """
    m = len(ks)
    for i in range(m):
        a, b = ks[i], ks[(i + 1) % m]
        d = b - a
        ln = abs(d)
        t = ((z - a).real * d.real + (z - a).imag * d.imag) / (ln * ln)
        t = min(1.0, max(0.0, t))
        if abs(z - (a + t * d)) <= clearance:
            return False
    crossings = 0
    for i in range(m):
        a, b = ks[i], ks[(i + 1) % m]
        if (a.imag > z.imag) != (b.imag > z.imag):
            x = a.real + (z.imag - a.imag) * (b.real - a.real) \
                / (b.imag - a.imag)
            if x > z.real:
                crossings += 1
    return crossings % 2 == 1


def _interior_samples(ks, count, rng, clearance):
    lo_x = min(k.real for k in ks)
    hi_x = max(k.real for k in ks)
    lo_y = min(k.imag for k in ks)
    hi_y = max(k.imag for k in ks)
    out = []
    for _ in range(200 * count):
        z = complex(rng.uniform(lo_x, hi_x), rng.uniform(lo_y, hi_y))
        if _inside_klein(ks, z, 10 * clearance):
            out.append(z)
            if len(out) == count:
                return out
    return out


def pairing_words(pairings, depth: int):
    """Reduced words in the pairing maps up to a length bound.

    Returns (word, matrix) pairs; letter +i applies pairing i, letter -i
    its inverse, and involutive pairings fold the two into one letter.
    """
    mats = []
    for g in pairings:
        mats.append(np.asarray(g.mat if hasattr(g, "mat") else g,
                               dtype=complex))
    invs = [np.linalg.inv(m) for m in mats]
    selfinv = [_pm_identity_residual(m @ m) < 1e-8 for m in mats]

    letters = []
    for i in range(len(mats)):
        letters.append(i + 1)
        if not selfinv[i]:
            letters.append(-(i + 1))

    words = [((), np.eye(2, dtype=complex))]
    frontier = words
    for _ in range(depth):
        nxt = []
        for word, mat in frontier:
            for a in letters:
                if word:
                    last = word[-1]
                    cancels = (last == -a) or (selfinv[abs(a) - 1]
                                               and last == a)
                    if cancels:
                        continue
                m = mats[a - 1] if a > 0 else invs[-a - 1]
                nxt.append((word + (a,), mat @ m))
        words.extend(nxt)
        frontier = nxt
    return words


def tiling_check(polygon, pairings, depth: int = 2,
                 samples_per_cell: int = 20, clearance: float = 1e-9,
                 seed: int = 0) -> TilingReport:
    """Sampled-point disjointness of the polygon's translated copies.

    All reduced words in the pairings up to the given length translate
    the polygon; interior sample points of one copy must not land in the
    interior of another.  Word pairs whose quotient is a sign of the
    identity name the same copy and are skipped, which quotients exactly
    the relation consequences reachable at this depth.
    """
    ks = _klein_vertices(polygon)
    rng = np.random.default_rng(seed)
    samples = _interior_samples(ks, samples_per_cell, rng, clearance)

    words = pairing_words(pairings, depth)

    lifted = [np.array([[core.klein_to_poincare(z)], [1.0]], dtype=complex)
              for z in samples]
    for ui in range(len(words)):
        for vi in range(len(words)):
            if ui == vi:
                continue
            wu, mu = words[ui]
            wv, mv = words[vi]
            rel = np.linalg.inv(mv) @ mu
            if _pm_identity_residual(rel) < 1e-8:
                continue        # both words name the same copy
            for z, vec in zip(samples, lifted):
                img = rel @ vec
                w = complex(img[0, 0] / img[1, 0])
                if _inside_klein(ks, core.poincare_to_klein(w), clearance):
                    return TilingReport(False, len(words),
                                        len(samples), z, (wu, wv))
    return TilingReport(True, len(words), len(samples), None, None)


# -- area oracle ---------------------------------------------------------


def area_oracle(vertices, centres) -> float:
    """Mean fan area over many fan points and starting corners.

    Every combination must agree: the spread doubles as a conditioning
    check on the vertex data itself.
    """
    verts = list(getattr(vertices, "vertices", vertices))
    vals = []
    m = len(verts)
    for c in centres:
        for off in range(min(m, 3)):
            rolled = verts[off:] + verts[:off]
            vals.append(core.polygon_area(c, rolled))
    spread = max(vals) - min(vals)
    if spread > 1e-8:
        raise SpreadTooLarge(
            f"fan areas disagree by {spread:.3e} across "
            f"{len(vals)} evaluations")
    return sum(vals) / len(vals)
