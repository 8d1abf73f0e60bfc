"""Check: dd generators built from float64 centers -> relation residuals."""
import numpy as np

from discgroup import _dd, hyperelliptic as H
from discgroup import surface as S

rng = np.random.default_rng(7)


def gapped(n, gap=0.05):
    m = 2 * n - 6
    raw = np.sort(rng.uniform(0.0, np.pi - gap * m, size=m))
    return [gap / 2 + k * gap + raw[k] for k in range(m)]


def refl_dd(z: complex):
    # f = 2/(|z|^2 - 1); m = [[1 - f|z|^2, f z], [-f conj(z), 1 + f]] * i
    zre = _dd.dd_from_float(z.real)
    zim = _dd.dd_from_float(z.imag)
    r2 = _dd.dd_add(_dd.dd_mul(zre, zre), _dd.dd_mul(zim, zim))
    denom = _dd.dd_add(r2, (-1.0, 0.0))
    f = _dd.dd_div((2.0, 0.0), denom)
    one = (1.0, 0.0)
    zero = (0.0, 0.0)
    m00 = (_dd.dd_sub(one, _dd.dd_mul(f, r2)), zero)
    m01 = (_dd.dd_mul(f, zre), _dd.dd_mul(f, zim))
    m10 = ((-_dd.dd_mul(f, zre)[0], -_dd.dd_mul(f, zre)[1]),
           _dd.dd_mul(f, zim))
    m11 = (_dd.dd_add(one, f), zero)
    mat = ((m00, m01), (m10, m11))
    # multiply by i: (re, im) -> (-im, re)
    def times_i(c):
        re, im = c
        return ((-im[0], -im[1]), re)
    return tuple(tuple(times_i(c) for c in row) for row in mat)


for n in (6, 8, 10):
    worst = [0.0, 0.0, 0.0]
    for trial in range(12):
        tup = H.BoundaryTuple([float(a) for a in gapped(n)])
        hr = H.from_boundary_tuple(tup)
        centers = [hr.center(i).disc for i in range(1, n + 1)]
        refls = [refl_dd(z) for z in centers]
        gens = [_dd.mat_mul(refls[i % n], refls[i - 1]) for i in range(1, n + 1)]
        # gens[k] corresponds to generator k+1 = R_{k+1} R_k ... careful:
        # generator i = R_i R_{i-1}; build list index i-1
        gens = [_dd.mat_mul(refls[(i - 1) % n], refls[(i - 2) % n])
                for i in range(1, n + 1)]
        for which, word in enumerate(S.relation_words(n)):
            prod = None
            for s in word:
                m = gens[s - 1]
                prod = m if prod is None else _dd.mat_mul(prod, m)
            r = _dd.residual_from_pm_identity(prod)
            worst[which] = max(worst[which], r)
    print(f"n={n}: worst residuals {worst[0]:.3e} {worst[1]:.3e} {worst[2]:.3e}")
