"""SVG rendering of the disc, polygons and tilings.

Geodesic edges are circular arcs meeting the unit circle at right
angles; an edge through the origin degenerates to a straight chord.
Everything is drawn in the disc's own coordinates inside a fixed
viewBox, with the vertical axis flipped so the picture matches the
mathematical orientation.
"""
from __future__ import annotations

import math

import numpy as np

from . import core
from .sampling import pairing_words

__all__ = ["polygon_svg", "edge_path"]

# pen widths in disc units
_THIN = 0.004
_DOT = 0.012

_STYLE = (
    'fill="none" stroke="{color}" stroke-width="{w}" '
    'stroke-linejoin="round" stroke-linecap="round"'
)


def _arc_center(a: complex, b: complex) -> complex | None:
    """Center of the circle through a, b orthogonal to the unit circle.

    None when the two points are collinear with the origin, where the
    geodesic is a diameter.
    """
    cross = a.real * b.imag - a.imag * b.real
    if abs(cross) < 1e-12:
        return None
    # 2 <p, w> = |p|^2 + 1 for both endpoints, a linear system in w
    ra = abs(a) ** 2 + 1.0
    rb = abs(b) ** 2 + 1.0
    wx = (ra * b.imag - rb * a.imag) / (2.0 * cross)
    wy = (rb * a.real - ra * b.real) / (2.0 * cross)
    return complex(wx, wy)


def edge_path(a: complex, b: complex) -> str:
    """Path fragment from a to b along the geodesic between them.

    Pinched edges — endpoints closer than the drawing can resolve —
    fall back to straight segments before the circle solve goes
    ill-conditioned.
    """
    if abs(a - b) < 1e-6:
        return f"L {b.real:.6f} {b.imag:.6f}"
    w = _arc_center(a, b)
    if w is None:
        return f"L {b.real:.6f} {b.imag:.6f}"
    r = math.sqrt(max(abs(w) ** 2 - 1.0, 0.0))
    if r < 1e-6:
        return f"L {b.real:.6f} {b.imag:.6f}"
    u, v = a - w, b - w
    sweep = 1 if (u.real * v.imag - u.imag * v.real) > 0 else 0
    return f"A {r:.6f} {r:.6f} 0 0 {sweep} {b.real:.6f} {b.imag:.6f}"


def _cell_path(zs) -> str:
    parts = [f"M {zs[0].real:.6f} {zs[0].imag:.6f}"]
    for j in range(1, len(zs) + 1):
        parts.append(edge_path(zs[j - 1], zs[j % len(zs)]))
    parts.append("Z")
    return " ".join(parts)


def _apply(mat: np.ndarray, z: complex) -> complex:
    num = mat[0, 0] * z + mat[0, 1]
    den = mat[1, 0] * z + mat[1, 1]
    return complex(num / den)


def polygon_svg(polygon, pairings=(), tiling_depth: int = 0,
                midpoints=()) -> str:
    """Render a fundamental polygon, optionally with its first coronas.

    Each copy of the polygon becomes one path element; the base copy is
    drawn last and heaviest.  Extra marked points (edge midpoints, say)
    come out as small dots.
    """
    verts = [complex(v.disc) for v in
             getattr(polygon, "vertices", polygon)]
    body = [
        '<circle cx="0" cy="0" r="1" fill="#fdfdfb" stroke="#444" '
        f'stroke-width="{_THIN}"/>'
    ]

    if tiling_depth > 0 and len(pairings) > 0:
        words = pairing_words(pairings, tiling_depth)
        style = _STYLE.format(color="#7a9cc4", w=_THIN)
        for word, mat in words:
            if not word:
                continue
            zs = [_apply(mat, z) for z in verts]
            body.append(f'<path {style} d="{_cell_path(zs)}"/>')

    base_style = _STYLE.format(color="#1a3b5d", w=2 * _THIN)
    body.append(f'<path {base_style} d="{_cell_path(verts)}"/>')

    for p in midpoints:
        z = complex(p.disc)
        body.append(
            f'<circle cx="{z.real:.6f}" cy="{z.imag:.6f}" r="{_DOT}" '
            'fill="#b3462f"/>')

    inner = "\n    ".join(body)
    return (
        '<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        'viewBox="-1.05 -1.05 2.1 2.1" width="640" height="640">\n'
        '  <g transform="scale(1,-1)">\n'
        f'    {inner}\n'
        '  </g>\n'
        '</svg>\n'
    )
