"""Hand-written SVG figures with one group per layer."""

from __future__ import annotations

import math

from capgeo.geometry import Domain

LAYERS = ("boundary", "eroded", "cheeger", "witness", "rolling-disk")
STYLE = {
    "boundary": 'fill="#dde6f0" stroke="#1b2a3a"',
    "eroded": 'fill="#f4c27a" fill-opacity="0.6" stroke="#b26b00"',
    "cheeger": 'fill="none" stroke="#2a8c3c" stroke-dasharray="4 2"',
    "witness": 'fill="#c0392b" fill-opacity="0.25" stroke="#c0392b"',
    "rolling-disk": 'fill="none" stroke="#6b3fa0"',
}


def _f(x):
    return f"{x:.6f}"


def path_data(d: Domain) -> str:
    """SVG path of a domain; y is flipped by the enclosing transform."""
    if d.is_point:
        return ""
    out = [f"M {_f(d.start.x)} {_f(d.start.y)}"]
    cur = d.start
    for s in d.segments:
        if s.kind == "line":
            out.append(f"L {_f(s.end.x)} {_f(s.end.y)}")
        else:
            r = math.hypot(cur.x - s.center.x, cur.y - s.center.y)
            # split into quarter turns at most so the large-arc flag is never ambiguous
            a0 = math.atan2(cur.y - s.center.y, cur.x - s.center.x)
            a1 = math.atan2(s.end.y - s.center.y, s.end.x - s.center.x)
            sweep = (a1 - a0) % (2 * math.pi) if s.orientation == "ccw" else -((a0 - a1) % (2 * math.pi))
            if abs(sweep) < 1e-15:
                sweep = 2 * math.pi if s.orientation == "ccw" else -2 * math.pi
            m = max(1, int(math.ceil(abs(sweep) / (math.pi / 2))))
            flag = 1 if sweep > 0 else 0
            for k in range(1, m + 1):
                a = a0 + sweep * k / m
                x, y = s.center.x + r * math.cos(a), s.center.y + r * math.sin(a)
                out.append(f"A {_f(r)} {_f(r)} 0 0 {flag} {_f(x)} {_f(y)}")
        cur = s.end
    out.append("Z")
    return " ".join(out)


def render(omega: Domain, eroded=(), cheeger=(), witness=None, disk=None, points=(), size=480) -> str:
    """Layered figure; ``disk`` is (cx, cy, r) for the rolling disk."""
    xmin, ymin, xmax, ymax = omega.bbox
    pad = 0.05 * max(xmax - xmin, ymax - ymin)
    w, h = xmax - xmin + 2 * pad, ymax - ymin + 2 * pad
    scale = size / max(w, h)
    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_f(w * scale)}" height="{_f(h * scale)}" '
        f'viewBox="0 0 {_f(w * scale)} {_f(h * scale)}">',
        f'<g transform="translate({_f(-(xmin - pad) * scale)} {_f((ymax + pad) * scale)}) '
        f'scale({_f(scale)} {_f(-scale)})" stroke-width="{_f(1.5 / scale)}">',
    ]
    content = {
        "boundary": [path_data(omega)],
        "eroded": [path_data(c) for c in eroded],
        "cheeger": [path_data(c) for c in cheeger],
        "witness": [path_data(witness)] if witness is not None else [],
    }
    for layer in LAYERS:
        lines.append(f'<g id="{layer}" {STYLE[layer]}>')
        if layer == "rolling-disk":
            if disk is not None:
                cx, cy, r = disk
                lines.append(f'<circle cx="{_f(cx)}" cy="{_f(cy)}" r="{_f(r)}"/>')
        else:
            lines.extend(f'<path d="{p}"/>' for p in content[layer] if p)
            if layer == "eroded":
                lines.extend(f'<circle cx="{_f(x)}" cy="{_f(y)}" r="{_f(3 / scale)}"/>' for x, y in points)
        lines.append("</g>")
    lines += ["</g>", "</svg>", ""]
    return "\n".join(lines)
