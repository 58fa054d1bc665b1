"""Deterministic SVG drawings of convex scenes: sets, offsets at ``d``, and ``K_d``."""

from __future__ import annotations

from typing import Optional, Sequence

from . import convex2d as cv

# fill, stroke, extra attributes
PALETTE = {
    "boundary": ("#9dc3e6", "#1f4e79", 'fill-opacity="0.6"'),
    "offset": ("none", "#7f7f7f", 'stroke-dasharray="4 3"'),
    "kd": ("#f4b183", "#c00000", 'fill-opacity="0.8"'),
}
SIZE = 480
MARGIN = 24


def _num(x: float) -> str:
    s = f"{x:.4f}".rstrip("0").rstrip(".")
    return "0" if s in ("-0", "") else s


def _shape(P: cv.ConvexPolygon, cls: str, tf, label: Optional[str] = None) -> str:
    fill, stroke, extra = PALETTE[cls]
    pts = [tf(v) for v in P.vertices]
    title = f"<title>{label}</title>" if label else ""
    if len(pts) == 1:
        x, y = pts[0]
        return (f'<circle class="{cls}" cx="{_num(x)}" cy="{_num(y)}" r="3" fill="{stroke}" '
                f'stroke="{stroke}">{title}</circle>')
    coords = " ".join(f"{_num(x)},{_num(y)}" for x, y in pts)
    return (f'<polygon class="{cls}" points="{coords}" fill="{fill}" stroke="{stroke}" '
            f'stroke-width="1.5" {extra}>{title}</polygon>')


def render_scene(sets: Sequence[cv.ConvexPolygon], norm: cv.PolyhedralNorm, d=None,
                 names: Optional[Sequence[str]] = None) -> str:
    """SVG text; with ``d`` also the offsets ``B_{d_i}(M_i)`` and their intersection."""
    names = list(names) if names is not None else [f"M{i + 1}" for i in range(len(sets))]
    offsets = [] if d is None else [cv.minkowski_offset(M, r, norm) for M, r in zip(sets, d)]
    K = cv.intersect(offsets) if offsets else None
    everything = list(sets) + offsets
    xs = [float(v[0]) for P in everything for v in P.vertices]
    ys = [float(v[1]) for P in everything for v in P.vertices]
    x0, x1, y0, y1 = min(xs), max(xs), min(ys), max(ys)
    span = max(x1 - x0, y1 - y0, 1e-9)
    scale = (SIZE - 2 * MARGIN) / span

    def tf(v):
        return MARGIN + (float(v[0]) - x0) * scale, SIZE - MARGIN - (float(v[1]) - y0) * scale

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" '
        f'viewBox="0 0 {SIZE} {SIZE}">',
        '<rect width="100%" height="100%" fill="#ffffff"/>',
    ]
    for P, name in zip(offsets, names):
        parts.append(_shape(P, "offset", tf, f"offset of {name}"))
    for P, name in zip(sets, names):
        parts.append(_shape(P, "boundary", tf, name))
    if K is not None:
        parts.append(_shape(K, "kd", tf, "K_d"))
    elif d is not None:
        parts.append(f'<text class="warning" x="{MARGIN}" y="{MARGIN - 8}" fill="#c00000" '
                     'font-family="monospace" font-size="12">warning: K_d is empty at this d</text>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
