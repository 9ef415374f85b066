"""Blind recovery of the crossing structure from an abstract tree graph.

The pipeline never sees coordinates or edge sets: it types all maximal
cliques as union- or intersection-cliques, locates the spanning stars
(which name the points, up to relabeling), locates the two-center
brushes, labels each brush's two leaf sides, and finally decides for
every disjoint segment quadruple whether the segments cross.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from itertools import combinations
from typing import Optional

from .cliques import CliqueStructure, EdgeCliqueReport, bfs_distances
from .enumeration import TreeGraph
from .errors import MalformedGraphError, TooFewPoints

U, I = "U", "I"


def classify_degenerate(report: EdgeCliqueReport) -> str:
    """Tag (U or I) of the degenerate pair-clique at a single-clique edge.

    A unique clique of size 3 forces the companion to be the I side; a
    unique clique of size >= 4 forces it to be the U side.
    """
    if len(report.cliques) != 1 or not report.has_degenerate_companion:
        raise MalformedGraphError("edge does not carry a degenerate companion")
    size = len(report.cliques[0])
    if size == 3:
        return I
    if size >= 4:
        return U
    raise MalformedGraphError(
        f"edge {report.edge}: unique clique of size {size} is impossible"
    )


def find_seed(structure: CliqueStructure) -> tuple[int, str]:
    """A typed starting clique: the non-degenerate clique over the
    lexicographically first single-clique edge, with the tag opposite to
    its degenerate companion."""
    for edge in sorted(structure.edge_cliques):
        c1, c2 = structure.edge_cliques[edge]
        for cid, other in ((c1, c2), (c2, c1)):
            if structure.degenerate[cid]:
                companion_tag = (
                    I if structure.size(other) == 3 else U
                )
                return other, (U if companion_tag == I else I)
    raise MalformedGraphError(
        "no degenerate clique exists (instance has n < 5 or is malformed)"
    )


def type_all_cliques(
    structure: CliqueStructure, seed: tuple[int, str]
) -> dict[int, str]:
    """Unique 2-coloring of all cliques, propagated from the seed.

    Cliques sharing a tree-graph edge (degenerate companions included)
    get opposite tags; the clique-incidence structure of a geometric
    tree graph is connected, so one seed determines everything.
    """
    constraints: list[list[int]] = [[] for _ in range(len(structure))]
    for c1, c2 in structure.edge_cliques.values():
        constraints[c1].append(c2)
        constraints[c2].append(c1)
    tags: dict[int, str] = {}
    seed_cid, seed_tag = seed
    tags[seed_cid] = seed_tag
    queue = deque([seed_cid])
    while queue:
        cid = queue.popleft()
        opposite = I if tags[cid] == U else U
        for other in constraints[cid]:
            prev = tags.get(other)
            if prev is None:
                tags[other] = opposite
                queue.append(other)
            elif prev != opposite:
                raise MalformedGraphError(
                    f"clique typing conflict between {cid} and {other}"
                )
    if len(tags) != len(structure):
        raise MalformedGraphError(
            f"{len(structure) - len(tags)} cliques unreachable from seed"
        )
    # every degenerate companion must end opposite to its unique clique,
    # consistent with its size-based classification
    for cid, deg in enumerate(structure.degenerate):
        if deg and tags[cid] not in (U, I):
            raise MalformedGraphError("untagged degenerate clique")
    return tags


@dataclass(frozen=True)
class StarSet:
    """The vertices identified as spanning stars; the label of star i is
    its rank in ascending vertex-id order."""

    star_ids: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.star_ids)

    def label_of(self, vid: int) -> int:
        return self.star_ids.index(vid)


def identify_stars(
    g: TreeGraph, structure: CliqueStructure, tags: dict[int, str]
) -> StarSet:
    """Vertices all of whose U-tagged cliques have size exactly 3.

    A degenerate U companion (size 2) disqualifies.  The star count is
    the number of points n; pairwise star distance must be n-2.
    """
    stars = []
    for v in range(g.vertex_count):
        if all(
            structure.size(cid) == 3
            for cid in structure.cliques_at(v)
            if tags[cid] == U
        ):
            stars.append(v)
    n = len(stars)
    if n < 5:
        raise TooFewPoints(
            f"found {n} stars; blind reconstruction requires n >= 5"
        )
    for a, b in combinations(stars, 2):
        d = bfs_distances(g, a)[b]
        if d != n - 2:
            raise MalformedGraphError(
                f"star pair ({a},{b}) at distance {d}, expected {n - 2}"
            )
    return StarSet(tuple(stars))


@dataclass(frozen=True)
class BrushInfo:
    vertex: int
    p: int  # star label, p < q
    q: int
    k: int  # leaves attached to p; equals d(T, S(q))
    l: int  # leaves attached to q; equals d(T, S(p))


def identify_brushes(
    g: TreeGraph, stars: StarSet, star_dists: list[list[int]]
) -> dict[tuple[int, int], list[BrushInfo]]:
    """Per star-label pair (p,q): the non-star vertices T with
    d(T,S(p)) + d(T,S(q)) = n - 2, typed by those two distances."""
    n = stars.n
    star_set = set(stars.star_ids)
    brushes: dict[tuple[int, int], list[BrushInfo]] = {
        (p, q): [] for p, q in combinations(range(n), 2)
    }
    for v in range(g.vertex_count):
        if v in star_set:
            continue
        hit: Optional[tuple[int, int]] = None
        for p, q in combinations(range(n), 2):
            dp, dq = star_dists[p][v], star_dists[q][v]
            if dp + dq == n - 2:
                if hit is not None:
                    raise MalformedGraphError(
                        f"vertex {v} qualifies as a brush for two star pairs"
                    )
                hit = (p, q)
                brushes[(p, q)].append(
                    BrushInfo(vertex=v, p=p, q=q, k=dq, l=dp)
                )
        del hit
    return brushes


class SameCenterOracle:
    """Distance-based test for whether two leaf labels of a brush hang
    on the same internal vertex.

    For a brush T and labels x,y the minimum tree-graph distance from T
    to any xy-brush is n-2 or more exactly when x and y share a center,
    and exactly n-3 when they do not; no other value can occur.
    """

    def __init__(
        self,
        g: TreeGraph,
        stars: StarSet,
        brushes: dict[tuple[int, int], list[BrushInfo]],
    ):
        self.g = g
        self.n = stars.n
        self.brushes = brushes
        self._dist: dict[int, list[int]] = {}

    def dist_from(self, vid: int) -> list[int]:
        d = self._dist.get(vid)
        if d is None:
            d = bfs_distances(self.g, vid)
            self._dist[vid] = d
        return d

    def same_center(self, t_vid: int, x: int, y: int) -> bool:
        if x == y:
            raise MalformedGraphError("same_center needs two distinct labels")
        key = (x, y) if x < y else (y, x)
        xy_brushes = self.brushes.get(key)
        if not xy_brushes:
            raise MalformedGraphError(f"no brush exists for label pair {key}")
        d = self.dist_from(t_vid)
        m = min(d[b.vertex] for b in xy_brushes)
        if m >= self.n - 2:
            return True
        if m == self.n - 3:
            return False
        raise MalformedGraphError(
            f"brush distance {m} outside the n-3 / n-2 dichotomy"
        )


def same_center(
    g: TreeGraph,
    stars: StarSet,
    brushes: dict[tuple[int, int], list[BrushInfo]],
    t_vid: int,
    x: int,
    y: int,
) -> bool:
    return SameCenterOracle(g, stars, brushes).same_center(t_vid, x, y)


@dataclass(frozen=True)
class BrushLabel:
    """Complete identification of one brush: which leaf labels hang on
    each of its two centers."""

    vertex: int
    p: int
    q: int
    p_side: frozenset[int]
    q_side: frozenset[int]
    chain_length: int

    @property
    def brush_type(self) -> tuple[int, int]:
        return (len(self.p_side), len(self.q_side))


def _chain_to_position_one(
    g: TreeGraph,
    info: BrushInfo,
    star_dists: list[list[int]],
    brush_index: dict[int, BrushInfo],
) -> tuple[int, int]:
    """Walk back from a brush towards S(p) through brushes of the same
    pair, one q-leaf fewer per step; returns (position-1 vertex, steps)."""
    p, q = info.p, info.q
    current, pos, steps = info.vertex, info.l, 0
    while pos > 1:
        nxt = None
        for nb in g.neighbors(current):
            cand = brush_index.get(nb)
            if (
                cand is not None
                and (cand.p, cand.q) == (p, q)
                and star_dists[p][nb] == pos - 1
            ):
                nxt = nb
                break  # neighbors are sorted, so this is the lowest id
        if nxt is None:
            raise MalformedGraphError(
                f"brush chain for vertex {info.vertex} cannot be extended"
            )
        current, pos, steps = nxt, pos - 1, steps + 1
    return current, steps


def label_brush(
    g: TreeGraph,
    info: BrushInfo,
    stars: StarSet,
    star_dists: list[list[int]],
    oracle: SameCenterOracle,
    brush_index: dict[int, BrushInfo],
) -> BrushLabel:
    """Assign every non-center label to one side of the brush.

    The walk back to the position-1 brush pins down the single q-attached
    label there; the q side of the original brush is then the
    same-center class containing that label.
    """
    n = stars.n
    p, q = info.p, info.q
    others = [z for z in range(n) if z not in (p, q)]
    t1, steps = _chain_to_position_one(g, info, star_dists, brush_index)
    a = others[0]
    cls_a = {a} | {
        z for z in others[1:] if oracle.same_center(t1, a, z)
    }
    if len(cls_a) == 1:
        x1 = a
    elif len(cls_a) == len(others) - 1:
        (x1,) = set(others) - cls_a
    else:
        raise MalformedGraphError(
            f"ambiguous single q-leaf at position-1 brush {t1} "
            f"(requires n >= 5)"
        )
    q_side = {x1} | {
        z
        for z in others
        if z != x1 and oracle.same_center(info.vertex, x1, z)
    }
    p_side = set(others) - q_side
    if len(q_side) != info.l or len(p_side) != info.k:
        raise MalformedGraphError(
            f"brush {info.vertex}: side sizes {(len(p_side), len(q_side))} "
            f"disagree with type {(info.k, info.l)}"
        )
    return BrushLabel(
        vertex=info.vertex,
        p=p,
        q=q,
        p_side=frozenset(p_side),
        q_side=frozenset(q_side),
        chain_length=steps,
    )


@dataclass(frozen=True)
class CrossingRelation:
    """For every unordered pair of disjoint label pairs, whether the two
    segments cross."""

    n: int
    table: dict[tuple[tuple[int, int], tuple[int, int]], bool]

    @staticmethod
    def key(a: int, b: int, c: int, d: int):
        s1 = (a, b) if a < b else (b, a)
        s2 = (c, d) if c < d else (d, c)
        return (s1, s2) if s1 < s2 else (s2, s1)

    def crosses(self, a: int, b: int, c: int, d: int) -> bool:
        return self.table[self.key(a, b, c, d)]

    def canonical_items(self) -> list[tuple[tuple[int, int], tuple[int, int], bool]]:
        return [(k[0], k[1], v) for k, v in sorted(self.table.items())]


@dataclass
class ReconstructionAudit:
    """Side information for reviewing a run; not part of the answer."""

    clique_count: int = 0
    degenerate_edge_count: int = 0
    brush_count: int = 0
    chain_lengths: dict[int, int] = field(default_factory=dict)


def crossing_relation(
    g: TreeGraph,
) -> tuple[StarSet, CrossingRelation, ReconstructionAudit]:
    """Full blind pipeline: typing, stars, brushes, brush labels, and the
    crossing table.  Input must be (isomorphic to) a geometric tree graph
    with n >= 5."""
    structure = CliqueStructure(g)
    seed = find_seed(structure)
    tags = type_all_cliques(structure, seed)
    stars = identify_stars(g, structure, tags)
    n = stars.n
    star_dists = [bfs_distances(g, sid) for sid in stars.star_ids]
    brushes = identify_brushes(g, stars, star_dists)
    oracle = SameCenterOracle(g, stars, brushes)
    audit = ReconstructionAudit(
        clique_count=len(structure),
        degenerate_edge_count=sum(structure.degenerate),
    )

    labels_by_pair: dict[tuple[int, int], list[BrushLabel]] = {}
    for pair, infos in brushes.items():
        index = {info.vertex: info for info in infos}
        labeled = [
            label_brush(g, info, stars, star_dists, oracle, index)
            for info in infos
        ]
        labels_by_pair[pair] = labeled
        for lab in labeled:
            audit.chain_lengths[lab.vertex] = lab.chain_length
        audit.brush_count += len(labeled)

    table: dict[tuple[tuple[int, int], tuple[int, int]], bool] = {}
    for quad in combinations(range(n), 4):
        for s1, s2 in _pairings(quad):
            p, x = s1
            q, y = s2
            pair = (p, q) if p < q else (q, p)
            separated = False
            for lab in labels_by_pair[pair]:
                side_p = lab.p_side if lab.p == p else lab.q_side
                side_q = lab.q_side if lab.q == q else lab.p_side
                if x in side_p and y in side_q:
                    separated = True
                    break
            table[CrossingRelation.key(p, x, q, y)] = not separated
    return stars, CrossingRelation(n=n, table=table), audit


def _pairings(quad: tuple[int, int, int, int]):
    a, b, c, d = quad
    return (
        ((a, b), (c, d)),
        ((a, c), (b, d)),
        ((a, d), (b, c)),
    )
