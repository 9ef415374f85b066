"""Exact integer predicates: orientation, segment crossing, convex hulls.

All arithmetic is on Python ints; with |x|,|y| <= 2**20 every 2x2
determinant fits comfortably in 64 bits, so results are exact by
construction.  This module is the single source of geometric truth for
the whole package.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence

from .errors import InputError

COORD_BOUND = 1 << 20


class Point(NamedTuple):
    x: int
    y: int


@dataclass(frozen=True)
class SegPair:
    """Two vertex-disjoint segments given by point indices (a,b) and (c,d)."""

    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        if len({self.a, self.b, self.c, self.d}) != 4:
            raise InputError(f"segment pair indices must be distinct: {self}")


def orient(p: Point, q: Point, r: Point) -> int:
    """Sign of the determinant of (q-p, r-p): +1 ccw, -1 cw, 0 collinear."""
    det = (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0])
    if det > 0:
        return 1
    if det < 0:
        return -1
    return 0


def in_general_position(points: Sequence[Point]) -> bool:
    """True iff all points are distinct and no three are collinear."""
    if len(set(points)) != len(points):
        return False
    n = len(points)
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                if orient(points[i], points[j], points[k]) == 0:
                    return False
    return True


class PointSet:
    """An ordered set of distinct integer points in general position.

    Collinear or duplicate inputs are rejected here, once, so that no
    downstream code has to tolerate degeneracy.
    """

    def __init__(self, points: Iterable[tuple[int, int]]):
        pts = []
        for i, (x, y) in enumerate(points):
            if not (isinstance(x, int) and isinstance(y, int)):
                raise InputError(f"point {i}: coordinates must be integers")
            if abs(x) > COORD_BOUND or abs(y) > COORD_BOUND:
                raise InputError(
                    f"point {i}: |coordinate| exceeds bound {COORD_BOUND}"
                )
            pts.append(Point(x, y))
        if len(set(pts)) != len(pts):
            raise InputError("duplicate points")
        if not in_general_position(pts):
            raise InputError("points are not in general position")
        self.points: tuple[Point, ...] = tuple(pts)

    def __len__(self) -> int:
        return len(self.points)

    def __getitem__(self, i: int) -> Point:
        return self.points[i]

    def __eq__(self, other) -> bool:
        return isinstance(other, PointSet) and self.points == other.points

    def __hash__(self) -> int:
        return hash(self.points)

    def __repr__(self) -> str:
        return f"PointSet({list(self.points)!r})"


def segments_cross(ps: PointSet, a: int, b: int, c: int, d: int) -> bool:
    """True iff the open segments (a,b) and (c,d) share an interior point.

    Requires the four indices to be distinct; shared endpoints never count
    as a crossing.  Under general position the test reduces to two strict
    orientation sign checks.
    """
    n = len(ps)
    for i in (a, b, c, d):
        if not 0 <= i < n:
            raise InputError(f"point index {i} out of range 0..{n - 1}")
    if len({a, b, c, d}) != 4:
        raise InputError(f"segment indices must be distinct: {(a, b, c, d)}")
    pa, pb, pc, pd = ps[a], ps[b], ps[c], ps[d]
    return (
        orient(pa, pb, pc) * orient(pa, pb, pd) < 0
        and orient(pc, pd, pa) * orient(pc, pd, pb) < 0
    )


def segpair_cross(ps: PointSet, sp: SegPair) -> bool:
    return segments_cross(ps, sp.a, sp.b, sp.c, sp.d)


def convex_hull(ps: PointSet) -> list[int]:
    """Indices of hull vertices in counterclockwise order (monotone chain).

    Every non-hull point is strictly inside (general position guarantees
    no collinear hull chains).
    """
    n = len(ps)
    if n < 3:
        raise InputError("convex hull needs at least 3 points")
    order = sorted(range(n), key=lambda i: ps[i])

    def half(idx: list[int]) -> list[int]:
        out: list[int] = []
        for i in idx:
            while len(out) >= 2 and orient(ps[out[-2]], ps[out[-1]], ps[i]) <= 0:
                out.pop()
            out.append(i)
        return out

    lower = half(order)
    upper = half(order[::-1])
    return lower[:-1] + upper[:-1]
