import random
from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, strategies as st

from treegraph.errors import InputError
from treegraph.geometry import (
    COORD_BOUND,
    Point,
    PointSet,
    SegPair,
    convex_hull,
    in_general_position,
    orient,
    segments_cross,
    segpair_cross,
)

coords = st.integers(min_value=-200, max_value=200)
points = st.tuples(coords, coords).map(lambda t: Point(*t))


def test_orient_basic():
    assert orient(Point(0, 0), Point(1, 0), Point(0, 1)) == 1
    assert orient(Point(0, 0), Point(1, 1), Point(2, 2)) == 0
    assert orient(Point(0, 0), Point(0, 1), Point(1, 0)) == -1


@given(points, points, points)
def test_orient_antisymmetric(p, q, r):
    s = orient(p, q, r)
    assert orient(q, p, r) == -s
    assert orient(p, r, q) == -s
    # cyclic rotation preserves the sign
    assert orient(q, r, p) == s


SQUARE = PointSet([(0, 0), (2, 0), (2, 2), (0, 2)])


def test_segments_cross_square():
    assert segments_cross(SQUARE, 0, 2, 1, 3)
    assert not segments_cross(SQUARE, 0, 1, 2, 3)


def test_segments_cross_disjoint_boxes():
    ps = PointSet([(0, 0), (1, 1), (5, 0), (6, 2)])
    assert not segments_cross(ps, 0, 1, 2, 3)


def test_segments_cross_validation():
    with pytest.raises(InputError):
        segments_cross(SQUARE, 0, 1, 1, 2)
    with pytest.raises(InputError):
        segments_cross(SQUARE, 0, 1, 2, 7)
    with pytest.raises(InputError):
        SegPair(0, 1, 1, 3)


def test_segments_cross_symmetry():
    rng = random.Random(5)
    for _ in range(200):
        pts = {(rng.randint(-50, 50), rng.randint(-50, 50)) for _ in range(4)}
        if len(pts) != 4 or not in_general_position([Point(*p) for p in pts]):
            continue
        ps = PointSet(sorted(pts))
        base = segments_cross(ps, 0, 1, 2, 3)
        assert segments_cross(ps, 1, 0, 2, 3) == base
        assert segments_cross(ps, 0, 1, 3, 2) == base
        assert segments_cross(ps, 2, 3, 0, 1) == base
        assert segpair_cross(ps, SegPair(0, 1, 2, 3)) == base


def _float_cross(ps, a, b, c, d):
    # exact rational line-intersection oracle, independent of orient
    (x1, y1), (x2, y2) = ps[a], ps[b]
    (x3, y3), (x4, y4) = ps[c], ps[d]
    den = (x2 - x1) * (y4 - y3) - (y2 - y1) * (x4 - x3)
    if den == 0:
        return False
    t = Fraction((x3 - x1) * (y4 - y3) - (y3 - y1) * (x4 - x3), den)
    u = Fraction((x3 - x1) * (y2 - y1) - (y3 - y1) * (x2 - x1), den)
    return 0 < t < 1 and 0 < u < 1


def test_segments_cross_against_intersection_oracle():
    rng = random.Random(17)
    trials = 0
    while trials < 20:
        pts = {(rng.randint(-100, 100), rng.randint(-100, 100)) for _ in range(7)}
        if len(pts) != 7 or not in_general_position([Point(*p) for p in pts]):
            continue
        trials += 1
        ps = PointSet(sorted(pts))
        for a, b, c, d in combinations(range(7), 4):
            assert segments_cross(ps, a, b, c, d) == _float_cross(ps, a, b, c, d)


def test_in_general_position():
    assert in_general_position([Point(0, 0), Point(1, 0), Point(0, 1)])
    assert not in_general_position([Point(0, 0), Point(1, 1), Point(2, 2)])
    assert not in_general_position([Point(0, 0), Point(0, 0)])


def test_pointset_validation():
    with pytest.raises(InputError):
        PointSet([(0, 0), (1, 1), (2, 2)])
    with pytest.raises(InputError):
        PointSet([(0, 0), (0, 0), (1, 2)])
    with pytest.raises(InputError):
        PointSet([(0, 0), (COORD_BOUND + 1, 1)])
    with pytest.raises(InputError):
        PointSet([(0.5, 0), (1, 1)])


def _cyclic_normalize(seq):
    i = seq.index(min(seq))
    return seq[i:] + seq[:i]


def test_convex_hull_basic():
    square_center = PointSet([(0, 0), (4, 0), (4, 4), (0, 4), (1, 2)])
    assert sorted(convex_hull(square_center)) == [0, 1, 2, 3]
    tri = PointSet([(0, 0), (3, 1), (1, 4)])
    assert sorted(convex_hull(tri)) == [0, 1, 2]


def test_convex_hull_pentagon_ccw():
    ps = PointSet([(0, 0), (4, 0), (6, 3), (2, 6), (-2, 3)])
    hull = convex_hull(ps)
    assert sorted(hull) == [0, 1, 2, 3, 4]
    h = len(hull)
    for i in range(h):
        a, b, c = hull[i], hull[(i + 1) % h], hull[(i + 2) % h]
        assert orient(ps[a], ps[b], ps[c]) == 1


def test_convex_hull_permutation_invariant():
    rng = random.Random(3)
    base = [(0, 0), (10, 1), (7, 9), (2, 11), (-3, 5), (4, 4)]
    ps = PointSet(base)
    reference = _cyclic_normalize([tuple(ps[i]) for i in convex_hull(ps)])
    for _ in range(10):
        perm = base[:]
        rng.shuffle(perm)
        ps2 = PointSet(perm)
        got = _cyclic_normalize([tuple(ps2[i]) for i in convex_hull(ps2)])
        assert got == reference


def test_convex_hull_too_small():
    with pytest.raises(InputError):
        convex_hull(PointSet([(0, 0), (1, 2)]))
