"""Diagnose relation-product residual growth in from_boundary_tuple."""
import math
import numpy as np

from discgroup import core
from discgroup.core import Geodesic, Isometry, ProjPoint, classify, \
    decompose_half_turns, geodesic_intersection, reflection
from discgroup import hyperelliptic as H

rng = np.random.default_rng(7)
PI = math.pi


def gapped_angles(n, gap=0.05):
    m = 2 * n - 6
    span = PI - gap * m
    s = np.sort(rng.uniform(0, span, size=m))
    return [gap / 2 + k * gap + s[k] for k in range(m)]


def build_centers(tup):
    """Replicates from_boundary_tuple center chain, returning raw data."""
    n = tup.n
    z = (None,) + tup.points()
    minus1 = ProjPoint.from_angle(PI)
    plus1 = ProjPoint.from_angle(0.0)
    centers = {1: ProjPoint.from_disc(0)}
    centers[2] = geodesic_intersection(Geodesic(minus1, z[1]),
                                       Geodesic(plus1, z[2]))
    for k in range(2, n - 2):
        centers[1 + k] = geodesic_intersection(
            Geodesic(z[2 * k - 3], z[2 * k - 1]),
            Geodesic(z[2 * k - 2], z[2 * k]))
    centers[n - 1] = geodesic_intersection(Geodesic(z[2 * n - 7], minus1),
                                           Geodesic(z[2 * n - 6], plus1))
    h = Isometry.identity()
    for k in range(2, n):
        h = reflection(centers[k]) @ h
    _, closing = decompose_half_turns(h, centers[1])
    centers[n] = closing
    return [centers[j] for j in range(1, n + 1)]


for n in range(5, 13):
    worst = 0.0
    worst_norm = 0.0
    worst_extreme = 0.0
    for _ in range(60):
        tup = H.BoundaryTuple(gapped_angles(n), +1)
        qs = build_centers(tup)
        prod = np.eye(2, dtype=complex)
        maxnorm = 0.0
        for q in qs:
            prod = reflection(q).mat @ prod
            maxnorm = max(maxnorm, float(np.linalg.norm(prod)))
        resid = min(np.linalg.norm(prod - np.eye(2)),
                    np.linalg.norm(prod + np.eye(2)))
        extreme = max(abs(q.disc) for q in qs)
        if resid > worst:
            worst, worst_norm, worst_extreme = resid, maxnorm, extreme
    print(f"n={n:2d}  worst residual {worst:.3e}   max partial-product norm "
          f"{worst_norm:.3e}   max |center| {worst_extreme:.6f}")
