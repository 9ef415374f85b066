"""Deterministic instance generation and the plain-text point format.

Files are UTF-8, one "x y" integer pair per line; blank lines and
`#`-comments are ignored.  All generation is driven by an explicit seed,
so the same (n, seed, mode) always yields the same point set.
"""

from __future__ import annotations

import random
from pathlib import Path
from typing import Union

from .errors import InputError
from .geometry import COORD_BOUND, Point, PointSet, in_general_position

MODES = ("convex", "random", "grid-jitter")

_MAX_TRIES = 10_000


def generate_instance(n: int, seed: int, mode: str = "random") -> PointSet:
    """A seeded point set of n points in general position.

    convex: distinct x values on the parabola y = x**2 (always in convex
    position and general position).  random: uniform integer points with
    rejection.  grid-jitter: a rounded grid layout plus small jitter,
    with rejection.
    """
    if n < 3:
        raise InputError("instances need n >= 3")
    if mode not in MODES:
        raise InputError(f"unknown mode {mode!r}; expected one of {MODES}")
    rng = random.Random((mode, n, seed).__repr__())
    if mode == "convex":
        xs = rng.sample(range(-1024, 1024), n)
        return PointSet([(x, x * x) for x in xs])
    for _ in range(_MAX_TRIES):
        if mode == "random":
            pts = [
                (rng.randint(-10_000, 10_000), rng.randint(-10_000, 10_000))
                for _ in range(n)
            ]
        else:
            side = 1
            while side * side < n:
                side += 1
            cells = rng.sample(range(side * side), n)
            pts = [
                (
                    (c % side) * 1000 + rng.randint(-400, 400),
                    (c // side) * 1000 + rng.randint(-400, 400),
                )
                for c in cells
            ]
        if in_general_position([Point(x, y) for x, y in pts]):
            return PointSet(pts)
    raise InputError(
        f"could not find a general-position instance (n={n}, mode={mode})"
    )


def parse_points(text: str) -> PointSet:
    """Parse the point format; errors carry 1-based line numbers."""
    pts = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise InputError(
                f"line {lineno}: expected 'x y', got {raw.strip()!r}"
            )
        try:
            x, y = int(parts[0]), int(parts[1])
        except ValueError:
            raise InputError(
                f"line {lineno}: coordinates must be integers"
            ) from None
        if abs(x) > COORD_BOUND or abs(y) > COORD_BOUND:
            raise InputError(
                f"line {lineno}: |coordinate| exceeds bound {COORD_BOUND}"
            )
        pts.append((x, y))
    try:
        return PointSet(pts)
    except InputError as exc:
        raise InputError(f"invalid point set: {exc}") from None


def load_points(path: Union[str, Path]) -> PointSet:
    p = Path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {p}: {exc}") from None
    return parse_points(text)


def format_points(ps: PointSet, header: str = "") -> str:
    lines = []
    if header:
        lines.extend(f"# {h}" for h in header.splitlines())
    lines.extend(f"{pt.x} {pt.y}" for pt in ps.points)
    return "\n".join(lines) + "\n"


def save_points(ps: PointSet, path: Union[str, Path], header: str = "") -> None:
    Path(path).write_text(format_points(ps, header), encoding="utf-8")
