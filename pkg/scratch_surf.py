import math
import numpy as np

from discgroup import core, hyperelliptic as H, surface as S
from discgroup.core import ProjPoint, classify, reflection

PI = math.pi
rng = np.random.default_rng(7)


def gapped(n, gap=0.05):
    m = 2 * n - 6
    span = PI - gap * m
    s = np.sort(rng.uniform(0, span, size=m))
    return [gap / 2 + k * gap + s[k] for k in range(m)]


def proj_close(a, b, tol):
    ma, mb = a.mat, b.mat
    return min(np.linalg.norm(ma - mb), np.linalg.norm(ma + mb)) < tol


# 1. restriction validates
hexa = H.from_boundary_tuple(H.BoundaryTuple([0.4, 0.9, 1.4, 1.9, 2.4, 2.9]))
srep = S.from_hyperelliptic(hexa)
print("restriction ok, n =", srep.n)

# residuals for deep reps
for n in (6, 8, 10):
    worst = 0.0
    for _ in range(12):
        hr = H.from_boundary_tuple(H.BoundaryTuple(gapped(n)))
        sr = S.from_hyperelliptic(hr)
        from discgroup import _dd
        for w in S.relation_words(n):
            r = _dd.residual_from_pm_identity(
                _dd.word_product(sr._mats_dd, w))
            worst = max(worst, r)
    print(f"n={n} worst relation residual {worst:.3e}")

# 2. w-words: identity words
for n in (6, 8):
    assert S.w_word(0, n) == ()
    assert S.w_word(n - 1, n) == ()
    assert S.w_word(2 * n - 2, n) == ()
print("identity words ok")

# w1 * wn projectively identity
w1 = S.evaluate_w(srep, 1)
wn = S.evaluate_w(srep, 6)
print("w1*wn identity:", (w1 @ wn).is_identity(1e-9))

# w-eval vs direct reflections of the hyperelliptic centers
def refl(i):
    return reflection(hexa.center(i))

wt = srep._wtable
ok = True
for i in range(2 * 6 - 2):
    rw = wt.r_word(i)
    mat = core.Isometry.identity()
    for a in rw:
        mat = mat @ refl(a)
    ok &= proj_close(S.evaluate_w(srep, i), mat, 1e-9)
print("w-eval matches reflection chains:", ok)

# 3. Lemma-suite: the eight word identities
def ev_r(rep, rword):
    return S.evaluate_word(rep, S._r_to_g(rword))

def check_suite(rep, tol=1e-8):
    n = rep.n
    wtab = rep._wtable
    errs = []
    # (1) -- compose the sides as words: half-turn words invert by
    # reversal, so each side evaluates once, compensated
    for i in range(2 * n - 2):
        lhs = ev_r(rep, S._reduce(
            wtab.r_word(i + n - 1)[::-1] + wtab.r_word(i + n)))
        rhs = ev_r(rep, S._reduce(
            wtab.r_word(i + 1)[::-1] + wtab.r_word(i)))
        errs.append(("1", i, proj_close(lhs, rhs, tol)))
    # (2) J(w_i) = w_{n-1-i}
    for i in range(2 * n - 2):
        lhs = ev_r(rep, S._reverse_letters(wtab.r_word(i), n))
        rhs = wtab.isometry((n - 1 - i) % (2 * n - 2))
        errs.append(("2", i, proj_close(lhs, rhs, tol)))
    # (3) S(w_i) w_1 = w_{i+1}, even i in [0, n-2]
    for i in range(0, n - 1, 2):
        lhs = ev_r(rep, S._reduce(
            S._shift_letters(wtab.r_word(i), n) + wtab.r_word(1)))
        errs.append(("3", i, proj_close(lhs, wtab.isometry(i + 1), tol)))
    # (4) S(w_i) = w_{i+1}, odd i in [1, n-3]
    for i in range(1, n - 2, 2):
        lhs = ev_r(rep, S._shift_letters(wtab.r_word(i), n))
        errs.append(("4", i, proj_close(lhs, wtab.isometry(i + 1), tol)))
    # (5) S(w_i) = w_1 w_{i+1}, odd i in [n-1, 2n-3]
    for i in range(n - 1, 2 * n - 2, 2):
        lhs = ev_r(rep, S._shift_letters(wtab.r_word(i), n))
        rhs = ev_r(rep, S._reduce(wtab.r_word(1) + wtab.r_word(i + 1)))
        errs.append(("5", i, proj_close(lhs, rhs, tol)))
    # (6) S(w_i) w_1 = w_1 w_{i+1}, even i in [n, 2n-4]
    for i in range(n, 2 * n - 3, 2):
        lhs = ev_r(rep, S._reduce(
            S._shift_letters(wtab.r_word(i), n) + wtab.r_word(1)))
        rhs = ev_r(rep, S._reduce(wtab.r_word(1) + wtab.r_word(i + 1)))
        errs.append(("6", i, proj_close(lhs, rhs, tol)))
    # (7) r_n r_i w_{i-1} = w_{i+n-1} and r_n r_i w_i = w_{i+n-2}, 1<=i<=n-1
    for i in range(1, n):
        pre = S._reduce((n, i))
        lhs = ev_r(rep, S._reduce(pre + wtab.r_word(i - 1)))
        errs.append(("7a", i, proj_close(lhs, wtab.isometry(i + n - 1), tol)))
        lhs = ev_r(rep, S._reduce(pre + wtab.r_word(i)))
        errs.append(("7b", i, proj_close(lhs, wtab.isometry(i + n - 2), tol)))
    # (8) four identities; degenerates past n-2 where the conjugating
    # half-turn collides with the last one
    for i in range(2, n - 1):
        j = i % n + 1 if False else (i + 1 - 1) % n + 1  # letter i+1 mod n in 1..n
        pre = S._reduce((n, j))
        post = S._reduce((j, n))
        lhs = ev_r(rep, S._reduce(pre + wtab.r_word(i)))
        errs.append(("8a", i, proj_close(lhs, wtab.isometry(i + n), tol)))
        lhs = ev_r(rep, S._reduce(pre + wtab.r_word(i + 1)))
        errs.append(("8b", i, proj_close(lhs, wtab.isometry(i + n - 1), tol)))
        lhs = ev_r(rep, S._reduce(post + wtab.r_word(i + n - 1)))
        errs.append(("8c", i, proj_close(lhs, wtab.isometry(i + 1), tol)))
        lhs = ev_r(rep, S._reduce(post + wtab.r_word(i + n)))
        errs.append(("8d", i, proj_close(lhs, wtab.isometry(i), tol)))
    bad = [e for e in errs if not e[2]]
    return bad

bad = check_suite(srep)
print("lemma suite on restriction:", "ok" if not bad else bad[:8])
octo = H.from_boundary_tuple(H.BoundaryTuple(
    [0.25, 0.55, 0.85, 1.35, 1.65, 1.95, 2.45, 2.75, 2.95, 3.05]))
bad8 = check_suite(S.from_hyperelliptic(octo))
print("lemma suite on n=8 restriction:", "ok" if not bad8 else bad8[:8])

# suite on a sheared (non-restriction-shaped) rep
sheared = S.earthquake_gn(srep, 2, 0.31)
bad = check_suite(sheared)
print("lemma suite on sheared rep:", "ok" if not bad else bad[:8])

# 4. areas
a_surf = S.area_surface(srep)
a_hyp = hexa.area()
print(f"area surf {a_surf:.12f}  2*hyp {2*a_hyp:.12f}  4pi {4*PI:.12f}")
print("doubling err:", abs(a_surf - 2 * a_hyp), " max err:", abs(a_surf - 4 * PI))

# base-point independence
p = ProjPoint.from_disc(0.3 + 0.1j)
q = ProjPoint.from_disc(-0.2 + 0.25j)
print("base independence err:", abs(S.area_surface(srep, p, q) - a_surf))

# shift identity
w1q = S.evaluate_w(srep, 1).apply(q)
lhs = S.area_surface(srep, p, q)
rhs = S.area_surface(S.shift_rep(srep), w1q, p)
print("shift identity err:", abs(lhs - rhs))

# swap identity
rhs = S.area_surface(S.conjugate_rep(srep), q, p)
print("swap identity err:", abs(lhs - rhs))

# reversal negates
print("reversal err:", abs(S.area_surface(S.reverse_rep(srep)) + a_surf))

# 5. goldman
rep_report = S.is_discrete_goldman(srep)
print("verdict:", rep_report.verdict, " cert points:",
      len(rep_report.certificate.cycle_from_attractor),
      "expect", 6 * 6 - 16)
print("seam err:", rep_report.certificate.endpoint_match_error)

# non-maximal
def nonmax(n=6, tries=500):
    for _ in range(tries):
        free = []
        for _k in range(n - 2):
            r = math.sqrt(rng.uniform(0, 1)) * 0.7
            th = rng.uniform(0, 2 * PI)
            free.append(ProjPoint.from_disc(r * np.exp(1j * th)))
        k = core.Isometry.identity()
        for qq in free:
            k = reflection(qq) @ k
        k = k.inverse()
        if classify(k).tag != core.HYPERBOLIC:
            continue
        q1, q2 = core.decompose_half_turns(k)
        rep = H.validate([*(pt.disc for pt in free), q1.disc, q2.disc])
        if abs(abs(rep.area()) - (n - 4) * PI) > 1e-3:
            return rep
    raise RuntimeError

bad6 = nonmax()
sbad = S.from_hyperelliptic(bad6)
rep2 = S.is_discrete_goldman(sbad)
print("nonmax verdict:", rep2.verdict, " cert:", rep2.certificate,
      " area err vs 2x:", abs(rep2.area - 2 * bad6.area()))

# 6. polygon
poly = S.fundamental_polygon_surface(srep)
print("polygon vertices:", len(poly.vertices), " angle sum err:",
      abs(poly.angle_sum - 2 * PI))
print("area:", poly.area, " vs 4pi err:", abs(poly.area - 4 * PI))
print("relation residual:", poly.relation_residual)
print("vertex cycle:", poly.vertex_cycle_length, " err:",
      poly.vertex_cycle_error)

# 7. earthquakes
eq0 = S.earthquake_gn(srep, 3, 0.0)
print("t=0 identity:", all(proj_close(a, b, 1e-12)
                           for a, b in zip(eq0.gens, srep.gens)))
t = 0.41
eq = S.earthquake_gn(srep, 3, t)
print("area invariance err:", abs(S.area_surface(eq) - a_surf))
back = S.earthquake_gn(eq, 3, -t)
print("inverse err:", max(min(np.linalg.norm(a.mat - b.mat),
                              np.linalg.norm(a.mat + b.mat))
                          for a, b in zip(back.gens, srep.gens)))

# compatibility square: hyp time 2t <-> surface time t
hq = hexa.earthquake(3, 2 * t)
lhs = S.from_hyperelliptic(hq)
print("compat square ok:",
      all(proj_close(a, b, 1e-8) for a, b in zip(lhs.gens, eq.gens)))

# goldman stability under earthquake
print("sheared still discrete:", S.is_discrete_goldman(eq).verdict)
