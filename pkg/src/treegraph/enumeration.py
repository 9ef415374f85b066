"""Spanning-tree enumeration and tree-graph construction.

Vertices of a tree graph are spanning trees (identified with their edge
sets); two trees are adjacent when their edge sets differ in exactly two
edges.  The geometric variant keeps only the non-crossing (simple)
spanning trees of the complete geometric graph on a point set.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator, Optional, Sequence

from .errors import CapExceeded, InputError
from .geometry import PointSet, segments_cross

Edge = tuple[int, int]

DEFAULT_MAX_SSTS = 200_000
DEFAULT_KN_CAP = 6


def _canon_edges(edges: Iterable[Edge]) -> tuple[Edge, ...]:
    out = tuple(sorted((i, j) if i < j else (j, i) for i, j in edges))
    if any(i == j for i, j in out):
        raise InputError("self-loop edge")
    return out


@dataclass(frozen=True, order=True)
class Sst:
    """A spanning tree, stored as its canonically sorted edge set."""

    edges: tuple[Edge, ...]

    @classmethod
    def from_edges(cls, edges: Iterable[Edge]) -> "Sst":
        return cls(_canon_edges(edges))

    @property
    def n(self) -> int:
        return len(self.edges) + 1

    def edge_set(self) -> frozenset[Edge]:
        return frozenset(self.edges)

    def degrees(self) -> list[int]:
        deg = [0] * self.n
        for i, j in self.edges:
            deg[i] += 1
            deg[j] += 1
        return deg

    def adjacency(self) -> list[list[int]]:
        adj: list[list[int]] = [[] for _ in range(self.n)]
        for i, j in self.edges:
            adj[i].append(j)
            adj[j].append(i)
        return adj

    def tree_distance(self, a: int, b: int) -> int:
        adj = self.adjacency()
        dist = {a: 0}
        frontier = [a]
        while frontier:
            nxt = []
            for v in frontier:
                for w in adj[v]:
                    if w not in dist:
                        dist[w] = dist[v] + 1
                        nxt.append(w)
            frontier = nxt
        return dist[b]

    def diameter(self) -> int:
        adj = self.adjacency()

        def far(src: int) -> tuple[int, int]:
            dist = [-1] * self.n
            dist[src] = 0
            frontier = [src]
            last, dmax = src, 0
            while frontier:
                nxt = []
                for v in frontier:
                    for w in adj[v]:
                        if dist[w] < 0:
                            dist[w] = dist[v] + 1
                            if dist[w] > dmax:
                                dmax, last = dist[w], w
                            nxt.append(w)
                frontier = nxt
            return last, dmax

        a, _ = far(0)
        _, d = far(a)
        return d


def _is_spanning_tree(edges: Sequence[Edge], n: int) -> bool:
    if len(edges) != n - 1:
        return False
    parent = list(range(n))

    def find(v: int) -> int:
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for i, j in edges:
        if not (0 <= i < n and 0 <= j < n):
            return False
        ri, rj = find(i), find(j)
        if ri == rj:
            return False
        parent[ri] = rj
    return True


def crossing_masks(ps: PointSet) -> tuple[list[Edge], list[int]]:
    """All edges of K(P) in lex order, plus per-edge bitmasks of the
    edges it crosses (indices into the same list)."""
    n = len(ps)
    edges = [(i, j) for i in range(n) for j in range(i + 1, n)]
    masks = [0] * len(edges)
    for u, v in combinations(range(len(edges)), 2):
        a, b = edges[u]
        c, d = edges[v]
        if len({a, b, c, d}) == 4 and segments_cross(ps, a, b, c, d):
            masks[u] |= 1 << v
            masks[v] |= 1 << u
    return edges, masks


def is_simple_tree(edge_list: Iterable[Edge], ps: PointSet) -> bool:
    """True iff the edges form a spanning tree of K(P) with no two
    vertex-disjoint members crossing."""
    edges = _canon_edges(edge_list)
    if not _is_spanning_tree(edges, len(ps)):
        return False
    for (a, b), (c, d) in combinations(edges, 2):
        if len({a, b, c, d}) == 4 and segments_cross(ps, a, b, c, d):
            return False
    return True


def _enumerate_trees(
    n: int,
    edges: list[Edge],
    cross: Optional[list[int]],
    cap: Optional[int],
) -> Iterator[tuple[Edge, ...]]:
    """All spanning trees over `edges`, skipping any tree containing a
    crossing pair when `cross` masks are given.  Recursive edge
    inclusion/exclusion with union-find connectivity pruning."""
    m = len(edges)
    count = 0

    def rec(idx: int, chosen: list[Edge], parent: list[int], banned: int):
        nonlocal count
        if len(chosen) == n - 1:
            count += 1
            if cap is not None and count > cap:
                raise CapExceeded(f"spanning-tree count exceeds cap {cap}")
            yield tuple(chosen)
            return
        if m - idx < (n - 1) - len(chosen):
            return
        # exclude edges[idx]
        yield from rec(idx + 1, chosen, parent, banned)
        # include edges[idx], if it neither closes a cycle nor crosses
        if cross is not None and (banned >> idx) & 1:
            return
        i, j = edges[idx]

        def find(p: list[int], v: int) -> int:
            while p[v] != v:
                v = p[v]
            return v

        ri, rj = find(parent, i), find(parent, j)
        if ri == rj:
            return
        p2 = list(parent)
        p2[ri] = rj
        chosen.append(edges[idx])
        yield from rec(
            idx + 1,
            chosen,
            p2,
            banned | (cross[idx] if cross is not None else 0),
        )
        chosen.pop()

    yield from rec(0, [], list(range(n)), 0)


def enumerate_ssts(ps: PointSet, max_ssts: int = DEFAULT_MAX_SSTS) -> list[Sst]:
    """All simple (non-crossing) spanning trees of K(P), canonically
    ordered.  Raises CapExceeded past `max_ssts` trees."""
    n = len(ps)
    if n < 3:
        raise InputError("SST enumeration needs n >= 3")
    edges, masks = crossing_masks(ps)
    trees = [Sst(t) for t in _enumerate_trees(n, edges, masks, max_ssts)]
    trees.sort()
    return trees


def enumerate_trees_kn(n: int, cap: int = DEFAULT_KN_CAP) -> list[Sst]:
    """All n**(n-2) labeled spanning trees of the abstract K_n."""
    if not 3 <= n <= cap:
        raise CapExceeded(f"n={n} outside allowed range 3..{cap}")
    edges = [(i, j) for i in range(n) for j in range(i + 1, n)]
    trees = [Sst(t) for t in _enumerate_trees(n, edges, None, None)]
    trees.sort()
    return trees


class TreeGraph:
    """Abstract graph on opaque vertex ids with sorted adjacency lists."""

    def __init__(self, adjacency: Sequence[Sequence[int]]):
        self.adj: tuple[tuple[int, ...], ...] = tuple(
            tuple(sorted(nbrs)) for nbrs in adjacency
        )
        self.nbr_sets: tuple[frozenset[int], ...] = tuple(
            frozenset(nbrs) for nbrs in self.adj
        )
        for v, nbrs in enumerate(self.adj):
            if v in self.nbr_sets[v]:
                raise InputError(f"self-loop at vertex {v}")
            for w in nbrs:
                if not 0 <= w < len(self.adj) or v not in self.nbr_sets[w]:
                    raise InputError("adjacency is not symmetric")

    @property
    def vertex_count(self) -> int:
        return len(self.adj)

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adj[v]

    def has_edge(self, a: int, b: int) -> bool:
        return b in self.nbr_sets[a]

    def edge_count(self) -> int:
        return sum(len(n) for n in self.adj) // 2

    def edges(self) -> Iterator[Edge]:
        for v, nbrs in enumerate(self.adj):
            for w in nbrs:
                if v < w:
                    yield (v, w)


@dataclass(frozen=True)
class SstTable:
    """Harness-side ground truth: vertex id -> spanning tree.  Never
    handed to the blind reconstructor."""

    trees: tuple[Sst, ...]

    def __getitem__(self, vid: int) -> Sst:
        return self.trees[vid]

    def __len__(self) -> int:
        return len(self.trees)


def build_tree_graph(trees: Sequence[Sst]) -> tuple[TreeGraph, SstTable]:
    """Tree graph over `trees`: ids in canonical (sorted) tree order, an
    edge whenever two edge sets differ in exactly two edges.

    Adjacency is found by hashing each (n-2)-edge deletion of every
    tree; two trees adjacent iff they share a deletion key.
    """
    if len(set(trees)) != len(trees):
        raise InputError("duplicate trees in input")
    ordered = sorted(trees)
    buckets: dict[frozenset[Edge], list[int]] = {}
    for vid, t in enumerate(ordered):
        full = t.edge_set()
        for e in t.edges:
            buckets.setdefault(full - {e}, []).append(vid)
    adjacency: list[set[int]] = [set() for _ in ordered]
    for group in buckets.values():
        for a, b in combinations(group, 2):
            adjacency[a].add(b)
            adjacency[b].add(a)
    return TreeGraph(adjacency), SstTable(tuple(ordered))


def shuffle_vertices(g: TreeGraph, seed: int) -> tuple[TreeGraph, list[int]]:
    """Relabel vertices by a seeded pseudorandom permutation.

    Returns (shuffled graph, new_to_old) where new_to_old[new_id] is the
    original id, so applying it maps new ids back to old ids exactly.
    """
    rng = random.Random(seed)
    new_to_old = list(range(g.vertex_count))
    rng.shuffle(new_to_old)
    old_to_new = [0] * g.vertex_count
    for new, old in enumerate(new_to_old):
        old_to_new[old] = new
    adjacency = [
        [old_to_new[w] for w in g.adj[new_to_old[new]]]
        for new in range(g.vertex_count)
    ]
    return TreeGraph(adjacency), new_to_old
