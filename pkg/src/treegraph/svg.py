"""Deterministic SVG drawings of point sets with optional overlays."""

from __future__ import annotations

from typing import Optional, Sequence

from .enumeration import Edge, Sst
from .geometry import PointSet

_MARGIN = 24
_SIZE = 480


def _scale(ps: PointSet) -> list[tuple[float, float]]:
    xs = [p.x for p in ps.points]
    ys = [p.y for p in ps.points]
    span_x = max(xs) - min(xs) or 1
    span_y = max(ys) - min(ys) or 1
    span = max(span_x, span_y)
    s = (_SIZE - 2 * _MARGIN) / span
    # flip y so larger y is drawn higher
    return [
        (
            _MARGIN + (p.x - min(xs)) * s,
            _SIZE - _MARGIN - (p.y - min(ys)) * s,
        )
        for p in ps.points
    ]


def _fmt(v: float) -> str:
    return f"{v:.2f}"


def render_svg(
    ps: PointSet,
    tree: Optional[Sst] = None,
    highlight: Optional[Sequence[Edge]] = None,
) -> str:
    """Points, an optional tree overlay, and optional highlighted edges
    (e.g. a crossing pair).  Byte-deterministic for identical inputs."""
    coords = _scale(ps)
    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_SIZE}" '
        f'height="{_SIZE}" viewBox="0 0 {_SIZE} {_SIZE}">',
        f'<rect width="{_SIZE}" height="{_SIZE}" fill="white"/>',
    ]
    if tree is not None:
        for a, b in tree.edges:
            (x1, y1), (x2, y2) = coords[a], coords[b]
            parts.append(
                f'<line x1="{_fmt(x1)}" y1="{_fmt(y1)}" x2="{_fmt(x2)}" '
                f'y2="{_fmt(y2)}" stroke="steelblue" stroke-width="1.5"/>'
            )
    for a, b in highlight or ():
        (x1, y1), (x2, y2) = coords[a], coords[b]
        parts.append(
            f'<line x1="{_fmt(x1)}" y1="{_fmt(y1)}" x2="{_fmt(x2)}" '
            f'y2="{_fmt(y2)}" stroke="crimson" stroke-width="2.5"/>'
        )
    for i, (x, y) in enumerate(coords):
        parts.append(
            f'<circle cx="{_fmt(x)}" cy="{_fmt(y)}" r="4" fill="black"/>'
        )
        parts.append(
            f'<text x="{_fmt(x + 7)}" y="{_fmt(y - 7)}" '
            f'font-size="12" font-family="monospace">{i}</text>'
        )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
