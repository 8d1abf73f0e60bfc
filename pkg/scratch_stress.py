"""Deep-draw stress: everything the surface module promises, at depth."""
import math
import time

import numpy as np

from discgroup import hyperelliptic as H, surface as S

PI = math.pi
rng = np.random.default_rng(2024)


def gapped(n, gap=0.05):
    m = 2 * n - 6
    span = PI - gap * m
    s = np.sort(rng.uniform(0, span, size=m))
    return [gap / 2 + k * gap + s[k] for k in range(m)]


def proj_close(a, b, tol):
    ma, mb = a.mat, b.mat
    return min(np.linalg.norm(ma - mb), np.linalg.norm(ma + mb)) < tol


def suite_worst(rep, tol=1e-8):
    n = rep.n
    wtab = rep._wtable

    def ev_r(rword):
        return S.evaluate_word(rep, S._r_to_g(rword))

    def gap(a, b):
        ma = a.mat / np.linalg.norm(a.mat)
        mb = b.mat / np.linalg.norm(b.mat)
        return min(np.linalg.norm(ma - mb), np.linalg.norm(ma + mb))

    worst = 0.0
    for i in range(2 * n - 2):
        lhs = ev_r(S._reduce(wtab.r_word(i + n - 1)[::-1] + wtab.r_word(i + n)))
        rhs = ev_r(S._reduce(wtab.r_word(i + 1)[::-1] + wtab.r_word(i)))
        worst = max(worst, gap(lhs, rhs))
        lhs = ev_r(S._reverse_letters(wtab.r_word(i), n))
        worst = max(worst, gap(lhs, wtab.isometry((n - 1 - i) % (2 * n - 2))))
    for i in range(0, n - 1, 2):
        lhs = ev_r(S._reduce(S._shift_letters(wtab.r_word(i), n)
                             + wtab.r_word(1)))
        worst = max(worst, gap(lhs, wtab.isometry(i + 1)))
    for i in range(1, n - 2, 2):
        lhs = ev_r(S._shift_letters(wtab.r_word(i), n))
        worst = max(worst, gap(lhs, wtab.isometry(i + 1)))
    for i in range(n - 1, 2 * n - 2, 2):
        lhs = ev_r(S._shift_letters(wtab.r_word(i), n))
        rhs = ev_r(S._reduce(wtab.r_word(1) + wtab.r_word(i + 1)))
        worst = max(worst, gap(lhs, rhs))
    for i in range(n, 2 * n - 3, 2):
        lhs = ev_r(S._reduce(S._shift_letters(wtab.r_word(i), n)
                             + wtab.r_word(1)))
        rhs = ev_r(S._reduce(wtab.r_word(1) + wtab.r_word(i + 1)))
        worst = max(worst, gap(lhs, rhs))
    for i in range(1, n):
        pre = S._reduce((n, i))
        lhs = ev_r(S._reduce(pre + wtab.r_word(i - 1)))
        worst = max(worst, gap(lhs, wtab.isometry(i + n - 1)))
        lhs = ev_r(S._reduce(pre + wtab.r_word(i)))
        worst = max(worst, gap(lhs, wtab.isometry(i + n - 2)))
    for i in range(2, n - 1):
        j = (i % n) + 1
        pre = S._reduce((n, j))
        post = S._reduce((j, n))
        lhs = ev_r(S._reduce(pre + wtab.r_word(i)))
        worst = max(worst, gap(lhs, wtab.isometry(i + n)))
        lhs = ev_r(S._reduce(pre + wtab.r_word(i + 1)))
        worst = max(worst, gap(lhs, wtab.isometry(i + n - 1)))
        lhs = ev_r(S._reduce(post + wtab.r_word(i + n - 1)))
        worst = max(worst, gap(lhs, wtab.isometry(i + 1)))
        lhs = ev_r(S._reduce(post + wtab.r_word(i + n)))
        worst = max(worst, gap(lhs, wtab.isometry(i)))
    assert worst < tol, f"lemma suite worst {worst:.3e}"
    return worst


for n in (6, 8, 10):
    t0 = time.time()
    agg = {"suite": 0.0, "dbl": 0.0, "ang": 0.0, "cyc": 0.0, "rel": 0.0,
           "seam": 0.0}
    for trial in range(25):
        hr = H.from_boundary_tuple(H.BoundaryTuple(gapped(n)))
        sr = S.from_hyperelliptic(hr)
        agg["suite"] = max(agg["suite"], suite_worst(sr))
        a = S.area_surface(sr)
        agg["dbl"] = max(agg["dbl"], abs(a - 2 * hr.area()))
        assert abs(abs(a) - 2 * (n - 4) * PI) < 1e-6
        rep = S.is_discrete_goldman(sr)
        assert rep.verdict == "discrete+", rep.verdict
        assert len(rep.certificate.cycle_from_attractor) == 6 * n - 16
        assert len(rep.certificate.cycle_from_repeller) == 6 * n - 16
        agg["seam"] = max(agg["seam"], rep.certificate.endpoint_match_error)
        poly = S.fundamental_polygon_surface(sr)
        agg["ang"] = max(agg["ang"], abs(poly.angle_sum - 2 * PI))
        assert abs(poly.angle_sum - 2 * PI) < 1e-7, (trial, poly.angle_sum)
        assert poly.vertex_cycle_length == 2 * (n - 2)
        agg["cyc"] = max(agg["cyc"], poly.vertex_cycle_error)
        agg["rel"] = max(agg["rel"], poly.relation_residual)
        sh = S.shift_rep(sr)
        rv = S.reverse_rep(sr)
        assert abs(S.area_surface(sh) - a) < 1e-6
        assert abs(S.area_surface(rv) + a) < 1e-6
        if n <= 8:
            # the word-route half-turn conjugate amplifies the stored
            # data's relation defect; resolvable depths only
            cj = S.conjugate_rep(sr)
            assert abs(S.area_surface(cj) - a) < 1e-7
    print(f"n={n}  suite {agg['suite']:.2e}  dbl {agg['dbl']:.2e}  "
          f"ang {agg['ang']:.2e}  cyc {agg['cyc']:.2e}  rel {agg['rel']:.2e}  "
          f"seam {agg['seam']:.2e}  [{time.time() - t0:.1f}s]")
print("stress ok")
