"""Compensated double-double arithmetic for ill-conditioned matrix words.

Long words in generators with large entries have partial products whose
norms dwarf the final result; the identity-closure defect of such a word
is then of order eps * max_norm**2 relative to the precision the factors
are stored at.  With ordinary floats that floor sits above the tolerances
this package promises, so the generator matrices that internal code
multiplies are kept as double-doubles: unevaluated sums of two floats
carrying ~32 significant digits.

The module implements just what the word algebra needs: scalar and
complex double-double operations, 2x2 matrix products, inverses and
vector application, and the Frobenius distance from plus-or-minus the
identity.  Scalars are (hi, lo) tuples, complex numbers pairs of
scalars, matrices 2x2 nested tuples of complex numbers.
"""

from __future__ import annotations

import math

import numpy as np

# Dekker splitting constant for 53-bit doubles: 2**27 + 1.
_SPLITTER = 134217729.0


def _two_sum(a: float, b: float):
    s = a + b
    bb = s - a
    return s, (a - (s - bb)) + (b - bb)


def _quick_two_sum(a: float, b: float):
    # Requires |a| >= |b|; callers normalize a freshly rounded head.
    s = a + b
    return s, b - (s - a)


def _two_prod(a: float, b: float):
    p = a * b
    ah = _SPLITTER * a
    ah = ah - (ah - a)
    al = a - ah
    bh = _SPLITTER * b
    bh = bh - (bh - b)
    bl = b - bh
    return p, ((ah * bh - p) + ah * bl + al * bh) + al * bl


def dd_add(x, y):
    s, e = _two_sum(x[0], y[0])
    e += x[1] + y[1]
    return _quick_two_sum(s, e)


def dd_sub(x, y):
    return dd_add(x, (-y[0], -y[1]))


def dd_neg(x):
    return -x[0], -x[1]


def dd_mul(x, y):
    p, e = _two_prod(x[0], y[0])
    e += x[0] * y[1] + x[1] * y[0]
    return _quick_two_sum(p, e)


def _mul_float(x, a: float):
    p, e = _two_prod(x[0], a)
    e += x[1] * a
    return _quick_two_sum(p, e)


def dd_div(x, y):
    q1 = x[0] / y[0]
    r = dd_sub(x, _mul_float(y, q1))
    q2 = r[0] / y[0]
    r = dd_sub(r, _mul_float(y, q2))
    q3 = r[0] / y[0]
    s, e = _quick_two_sum(q1, q2)
    return dd_add((s, e), (q3, 0.0))


def dd_sqrt(x):
    if x[0] <= 0.0:
        return (0.0, 0.0) if x[0] == 0.0 else (math.nan, 0.0)
    s = math.sqrt(x[0])
    # One Newton step doubles the accurate digits of the float seed.
    r = dd_sub(x, dd_mul((s, 0.0), (s, 0.0)))
    return _quick_two_sum(s, r[0] / (2.0 * s))


def dd_from_float(a: float):
    return float(a), 0.0


def dd_from_longdouble(x):
    """Split an extended-precision scalar into head + tail doubles."""
    hi = float(x)
    return hi, float(x - np.longdouble(hi))


def dd_to_float(x) -> float:
    return x[0] + x[1]


# -- complex layer ---------------------------------------------------------

_CZERO = ((0.0, 0.0), (0.0, 0.0))
_CONE = ((1.0, 0.0), (0.0, 0.0))


def cdd_add(x, y):
    return dd_add(x[0], y[0]), dd_add(x[1], y[1])


def cdd_sub(x, y):
    return dd_sub(x[0], y[0]), dd_sub(x[1], y[1])


def cdd_neg(x):
    return dd_neg(x[0]), dd_neg(x[1])


def cdd_mul(x, y):
    return (dd_sub(dd_mul(x[0], y[0]), dd_mul(x[1], y[1])),
            dd_add(dd_mul(x[0], y[1]), dd_mul(x[1], y[0])))


def cdd_div(x, y):
    den = dd_add(dd_mul(y[0], y[0]), dd_mul(y[1], y[1]))
    re = dd_add(dd_mul(x[0], y[0]), dd_mul(x[1], y[1]))
    im = dd_sub(dd_mul(x[1], y[0]), dd_mul(x[0], y[1]))
    return dd_div(re, den), dd_div(im, den)


def cdd_conj(x):
    return x[0], dd_neg(x[1])


def cdd_abs2(x):
    return dd_add(dd_mul(x[0], x[0]), dd_mul(x[1], x[1]))


def cdd_from_complex(z) -> tuple:
    return dd_from_float(z.real), dd_from_float(z.imag)


def cdd_to_complex(x) -> complex:
    return complex(dd_to_float(x[0]), dd_to_float(x[1]))


# -- 2x2 matrix / vector layer ---------------------------------------------

EYE = ((_CONE, _CZERO), (_CZERO, _CONE))


def mat_from_complex(m) -> tuple:
    """2x2 float-complex matrix -> exact double-double representation."""
    return tuple(tuple(cdd_from_complex(complex(m[r][c])) for c in range(2))
                 for r in range(2))


def mat_from_clongdouble(m) -> tuple:
    return tuple(
        tuple((dd_from_longdouble(np.real(m[r, c])),
               dd_from_longdouble(np.imag(m[r, c]))) for c in range(2))
        for r in range(2))


def mat_to_complex(m) -> np.ndarray:
    return np.array([[cdd_to_complex(m[r][c]) for c in range(2)]
                     for r in range(2)], dtype=complex)


def mat_to_clongdouble(m) -> np.ndarray:
    out = np.empty((2, 2), dtype=np.clongdouble)
    for r in range(2):
        for c in range(2):
            re, im = m[r][c]
            out[r, c] = (np.longdouble(re[0]) + np.longdouble(re[1])
                         + 1j * (np.longdouble(im[0]) + np.longdouble(im[1])))
    return out


def mat_mul(a, b):
    return tuple(
        tuple(cdd_add(cdd_mul(a[r][0], b[0][c]), cdd_mul(a[r][1], b[1][c]))
              for c in range(2))
        for r in range(2))


def mat_inv(m):
    det = cdd_sub(cdd_mul(m[0][0], m[1][1]), cdd_mul(m[0][1], m[1][0]))
    return ((cdd_div(m[1][1], det), cdd_div(cdd_neg(m[0][1]), det)),
            (cdd_div(cdd_neg(m[1][0]), det), cdd_div(m[0][0], det)))


def vec_apply(m, v):
    return (cdd_add(cdd_mul(m[0][0], v[0]), cdd_mul(m[0][1], v[1])),
            cdd_add(cdd_mul(m[1][0], v[0]), cdd_mul(m[1][1], v[1])))


def vec_form(x, y):
    """Signature (+,-) hermitian pairing of two double-double lifts,
    linear in the first slot."""
    return cdd_sub(cdd_mul(x[0], cdd_conj(y[0])),
                   cdd_mul(x[1], cdd_conj(y[1])))


def word_product(mats, word):
    """Left-to-right product of 1-based signed indices into ``mats``."""
    prod = EYE
    for s in word:
        m = mats[abs(s) - 1]
        prod = mat_mul(prod, m if s > 0 else mat_inv(m))
    return prod


def residual_from_pm_identity(m) -> float:
    """Frobenius distance to whichever of +-identity is closer."""
    best = math.inf
    for sign in (1.0, -1.0):
        total = 0.0
        for r in range(2):
            for c in range(2):
                re, im = m[r][c]
                dre = re[0] + re[1] - (sign if r == c else 0.0)
                dim = im[0] + im[1]
                total += dre * dre + dim * dim
        best = min(best, math.sqrt(total))
    return best
