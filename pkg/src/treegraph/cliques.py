"""Label-free structural analysis of an abstract tree graph.

Everything here sees only vertex ids and adjacency: BFS distances,
maximal cliques through an edge (via common-neighbor partitioning), and
the clique-incidence graph around a fixed vertex.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import combinations
from typing import Optional, Sequence

from .enumeration import TreeGraph
from .errors import InputError, MalformedGraphError

UNREACHABLE = -1


def bfs_distances(g: TreeGraph, source: int) -> list[int]:
    """Exact shortest-path distances from `source`; -1 for unreachable."""
    if not 0 <= source < g.vertex_count:
        raise InputError(f"vertex id {source} out of range")
    dist = [UNREACHABLE] * g.vertex_count
    dist[source] = 0
    queue = deque([source])
    while queue:
        v = queue.popleft()
        dv = dist[v]
        for w in g.adj[v]:
            if dist[w] == UNREACHABLE:
                dist[w] = dv + 1
                queue.append(w)
    return dist


@dataclass(frozen=True)
class MaxClique:
    """A maximal clique, identified with its sorted vertex-id set.
    Degenerate cliques are the two endpoints of one edge."""

    members: tuple[int, ...]
    degenerate: bool = False

    def __len__(self) -> int:
        return len(self.members)

    def member_set(self) -> frozenset[int]:
        return frozenset(self.members)


@dataclass(frozen=True)
class EdgeCliqueReport:
    """The maximal cliques through one tree-graph edge.

    Any edge lies in at most two maximal cliques; when only one exists
    the pair itself is flagged as a degenerate companion of the
    opposite type.
    """

    edge: tuple[int, int]
    cliques: tuple[MaxClique, ...]
    has_degenerate_companion: bool


def _partition_common_neighbors(
    g: TreeGraph, a: int, b: int
) -> list[list[int]]:
    common = sorted(g.nbr_sets[a] & g.nbr_sets[b])
    groups: list[list[int]] = []
    for c in common:
        placed = False
        for grp in groups:
            if all(g.has_edge(c, m) for m in grp):
                grp.append(c)
                placed = True
                break
        if placed:
            continue
        groups.append([c])
    # groups must be cliques and pairwise non-adjacent, else the input
    # is not a valid tree graph
    for grp in groups:
        for u, v in combinations(grp, 2):
            if not g.has_edge(u, v):
                raise MalformedGraphError(
                    f"common neighbors of edge ({a},{b}) do not split into cliques"
                )
    for g1, g2 in combinations(groups, 2):
        if any(g.has_edge(u, v) for u in g1 for v in g2):
            raise MalformedGraphError(
                f"ambiguous common-neighbor split at edge ({a},{b})"
            )
    return groups


def edge_cliques(g: TreeGraph, a: int, b: int) -> EdgeCliqueReport:
    """Maximal cliques through the edge (a,b).

    Common neighbors of a,b split into mutual-adjacency groups; each
    group plus {a,b} is one maximal clique.  More than two groups means
    the graph is not a tree graph.
    """
    if not g.has_edge(a, b):
        raise InputError(f"({a},{b}) is not an edge")
    groups = _partition_common_neighbors(g, a, b)
    if len(groups) > 2:
        raise MalformedGraphError(
            f"edge ({a},{b}) lies in {len(groups)} maximal cliques"
        )
    if not groups:
        raise MalformedGraphError(
            f"edge ({a},{b}) lies in no non-degenerate maximal clique"
        )
    edge = (a, b) if a < b else (b, a)
    cliques = tuple(
        MaxClique(tuple(sorted(grp + [a, b]))) for grp in groups
    )
    return EdgeCliqueReport(
        edge=edge,
        cliques=cliques,
        has_degenerate_companion=(len(groups) == 1),
    )


class CliqueStructure:
    """All maximal cliques of a tree graph, interned with stable ids.

    Non-degenerate cliques come from per-edge common-neighbor splitting;
    every single-clique edge additionally contributes its degenerate
    pair-clique.  Clique ids are canonical: assigned in sorted order of
    member tuples after extraction.
    """

    def __init__(self, g: TreeGraph):
        self.graph = g
        member_tuples: dict[tuple[int, ...], bool] = {}
        edge_groups: dict[tuple[int, int], list[tuple[int, ...]]] = {}
        for a, b in g.edges():
            report = edge_cliques(g, a, b)
            keys = [c.members for c in report.cliques]
            if report.has_degenerate_companion:
                keys.append((a, b))
                member_tuples[(a, b)] = True
            for c in report.cliques:
                member_tuples.setdefault(c.members, False)
            edge_groups[(a, b)] = keys
        ordered = sorted(member_tuples)
        self.members: list[tuple[int, ...]] = ordered
        self.degenerate: list[bool] = [member_tuples[m] for m in ordered]
        ids = {m: i for i, m in enumerate(ordered)}
        # per edge: the one or two clique ids through it (degenerate
        # companion included, so every edge maps to exactly two ids)
        self.edge_cliques: dict[tuple[int, int], tuple[int, int]] = {}
        for edge, keys in edge_groups.items():
            cid = tuple(sorted(ids[k] for k in keys))
            if len(cid) != 2:
                raise MalformedGraphError(
                    f"edge {edge} is covered by {len(cid)} cliques"
                )
            self.edge_cliques[edge] = (cid[0], cid[1])
        self.by_vertex: list[list[int]] = [[] for _ in range(g.vertex_count)]
        for i, m in enumerate(ordered):
            for v in m:
                self.by_vertex[v].append(i)
        self._check_triple_uniqueness()

    def __len__(self) -> int:
        return len(self.members)

    def size(self, cid: int) -> int:
        return len(self.members[cid])

    def _check_triple_uniqueness(self) -> None:
        # three mutually adjacent vertices lie in exactly one maximal
        # clique, so no pair of distinct cliques may share 3+ members
        seen: dict[tuple[int, int, int], int] = {}
        for cid, m in enumerate(self.members):
            for triple in combinations(m, 3):
                other = seen.setdefault(triple, cid)
                if other != cid:
                    raise MalformedGraphError(
                        f"vertex triple {triple} lies in two maximal cliques"
                    )

    def cliques_at(self, v: int) -> list[int]:
        return self.by_vertex[v]


@dataclass(frozen=True)
class DtGraph:
    """Cliques through one fixed vertex, adjacent when they share two
    tree-graph vertices (i.e. one edge)."""

    nodes: tuple[MaxClique, ...]
    adjacency: tuple[tuple[int, ...], ...]

    def is_connected(self) -> bool:
        if not self.nodes:
            return True
        seen = {0}
        stack = [0]
        while stack:
            v = stack.pop()
            for w in self.adjacency[v]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == len(self.nodes)


def build_dt_graph(
    g: TreeGraph,
    t: int,
    reports: Optional[Sequence[EdgeCliqueReport]] = None,
) -> DtGraph:
    """The clique-incidence graph D at vertex `t`.

    `reports` may carry precomputed EdgeCliqueReports for the edges at
    `t`; they are recomputed when absent.
    """
    if reports is None:
        reports = [edge_cliques(g, t, s) for s in g.neighbors(t)]
    nodes: dict[tuple[int, ...], MaxClique] = {}
    for rep in reports:
        if t not in rep.edge:
            raise InputError(f"report for edge {rep.edge} does not involve {t}")
        for c in rep.cliques:
            nodes.setdefault(c.members, c)
        if rep.has_degenerate_companion:
            pair = MaxClique(rep.edge, degenerate=True)
            nodes.setdefault(pair.members, pair)
    ordered = sorted(nodes)
    cliques = tuple(nodes[m] for m in ordered)
    sets = [frozenset(m) for m in ordered]
    adjacency = [
        tuple(
            j
            for j in range(len(ordered))
            if j != i and len(sets[i] & sets[j]) == 2
        )
        for i in range(len(ordered))
    ]
    return DtGraph(nodes=cliques, adjacency=tuple(adjacency))
