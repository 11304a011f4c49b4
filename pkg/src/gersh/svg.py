"""Deterministic SVG plots of disk families in the complex plane."""
from __future__ import annotations

from typing import Iterable

from .core import DiskUnion

PIXELS = 600


def _f(v: float) -> str:
    s = f"{v:.6f}"
    return "0.000000" if s == "-0.000000" else s


def disks_svg(disks: DiskUnion, points: Iterable[complex] = (), marker=None, title: str = "") -> str:
    """Render disks (outlined), ``points`` (filled dots) and ``marker`` (a cross).

    User units are complex-plane units with the imaginary axis pointing up.
    The view box is the bounding box of everything drawn plus a 10% margin.
    """
    points = [complex(p) for p in points]
    xs, ys = [], []
    for d in disks:
        xs += [d.center.real - d.radius, d.center.real + d.radius]
        ys += [d.center.imag - d.radius, d.center.imag + d.radius]
    extra = points + ([complex(marker)] if marker is not None else [])
    xs += [p.real for p in extra]
    ys += [p.imag for p in extra]
    x0, x1, y0, y1 = min(xs), max(xs), min(ys), max(ys)
    span = max(x1 - x0, y1 - y0)
    if span == 0.0:
        span = 1.0
    pad = 0.1 * span
    vx, vy = x0 - pad, -(y1 + pad)
    vw, vh = (x1 - x0) + 2 * pad, (y1 - y0) + 2 * pad
    if vw < span:
        vx -= (span - vw) / 2
        vw = span
    if vh < span:
        vy -= (span - vh) / 2
        vh = span
    stroke = 0.004 * span
    dot = 0.008 * span

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{PIXELS}" height="{PIXELS}" '
        f'viewBox="{_f(vx)} {_f(vy)} {_f(vw)} {_f(vh)}">',
    ]
    if title:
        esc = title.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")
        out.append(f"<title>{esc}</title>")
    # axes through the origin when visible
    if vx <= 0.0 <= vx + vw:
        out.append(f'<line x1="0.000000" y1="{_f(vy)}" x2="0.000000" y2="{_f(vy + vh)}" '
                   f'stroke="#bbbbbb" stroke-width="{_f(stroke / 2)}"/>')
    if vy <= 0.0 <= vy + vh:
        out.append(f'<line x1="{_f(vx)}" y1="0.000000" x2="{_f(vx + vw)}" y2="0.000000" '
                   f'stroke="#bbbbbb" stroke-width="{_f(stroke / 2)}"/>')
    out.append('<g fill="none" stroke="#1f4e9c" stroke-opacity="0.8">')
    for d, row in zip(disks.disks, disks.rows):
        cx, cy = _f(d.center.real), _f(-d.center.imag)
        out.append(f'<circle data-row="{row}" cx="{cx}" cy="{cy}" r="{_f(d.radius)}" '
                   f'stroke-width="{_f(stroke)}"/>')
    out.append("</g>")
    out.append('<g fill="#1f4e9c">')
    for d in disks:
        out.append(f'<circle cx="{_f(d.center.real)}" cy="{_f(-d.center.imag)}" r="{_f(dot / 2)}"/>')
    out.append("</g>")
    if points:
        out.append('<g fill="#c0392b">')
        for p in points:
            out.append(f'<circle cx="{_f(p.real)}" cy="{_f(-p.imag)}" r="{_f(dot)}"/>')
        out.append("</g>")
    if marker is not None:
        m = complex(marker)
        x, y, h = m.real, -m.imag, 1.5 * dot
        out.append(f'<path d="M {_f(x - h)} {_f(y - h)} L {_f(x + h)} {_f(y + h)} '
                   f'M {_f(x - h)} {_f(y + h)} L {_f(x + h)} {_f(y - h)}" '
                   f'stroke="#27ae60" stroke-width="{_f(stroke)}" fill="none"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
