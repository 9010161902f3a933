"""Minimal deterministic SVG rendering for geodesic fan plots."""

from __future__ import annotations

CANVAS = 600
MARGIN = 30

_PALETTE = [
    "#1f77b4",
    "#d62728",
    "#2ca02c",
    "#9467bd",
    "#ff7f0e",
    "#8c564b",
    "#17becf",
    "#7f7f7f",
]


def _to_px(R: float, x: float, y: float) -> tuple[float, float]:
    scale = (CANVAS / 2 - MARGIN) / R
    return CANVAS / 2 + x * scale, CANVAS / 2 - y * scale


def render_fan_svg(path: str, R: float, rays, markers=()) -> None:
    """Write a 600x600 SVG: disk boundary, one polyline per ray, dot markers.

    rays: iterable of (n, 2) coordinate arrays; markers: iterable of (x, y).
    """
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{CANVAS}" height="{CANVAS}" viewBox="0 0 {CANVAS} {CANVAS}">',
        f'<rect width="{CANVAS}" height="{CANVAS}" fill="white"/>',
        f'<circle cx="{CANVAS // 2}" cy="{CANVAS // 2}" r="{CANVAS // 2 - MARGIN}" '
        'fill="none" stroke="black" stroke-width="1.5"/>',
    ]
    for i, ray in enumerate(rays):
        color = _PALETTE[i % len(_PALETTE)]
        pts = " ".join(
            "%.3f,%.3f" % _to_px(R, float(x), float(y)) for x, y in ray
        )
        lines.append(
            f'<polyline points="{pts}" fill="none" stroke="{color}" stroke-width="1"/>'
        )
    for x, y in markers:
        px, py = _to_px(R, float(x), float(y))
        lines.append(
            f'<circle cx="{px:.3f}" cy="{py:.3f}" r="4" fill="none" '
            'stroke="#d62728" stroke-width="1.5"/>'
        )
    lines.append("</svg>")
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")
