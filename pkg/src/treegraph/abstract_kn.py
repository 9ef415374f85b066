"""Blind reconstruction over the tree graph of the abstract K_n.

Without geometry the analysis is sharper: graph distance equals half the
symmetric difference, so stars are exactly the center of the graph and
every vertex's valence at every label is a distance.  That is enough to
recover each vertex's full labeled edge set and to show the automorphism
group is the symmetric group on the labels.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, permutations
from typing import Optional

from .cliques import bfs_distances, edge_cliques
from .enumeration import Sst, TreeGraph, enumerate_trees_kn
from .errors import (
    AmbiguousClique,
    CapExceeded,
    InputError,
    MalformedGraphError,
)
from .reconstruct import StarSet

U, I = "U", "I"

DEFAULT_AUT_CAP = 125


def identify_stars_abstract(g: TreeGraph) -> StarSet:
    """Stars are the center: eccentricity n-2, all other vertices n-1."""
    eccs = []
    for v in range(g.vertex_count):
        dist = bfs_distances(g, v)
        if min(dist) < 0:
            raise MalformedGraphError("graph is disconnected")
        eccs.append(max(dist))
    emin = min(eccs)
    stars = [v for v, e in enumerate(eccs) if e == emin]
    n = len(stars)
    if n < 3 or g.vertex_count != n ** (n - 2):
        raise MalformedGraphError(
            f"center size {n} inconsistent with {g.vertex_count} vertices"
        )
    if emin != n - 2 or (n > 3 and max(eccs) != n - 1):
        raise MalformedGraphError(
            f"eccentricities {emin}..{max(eccs)} do not fit a tree graph of K_{n}"
        )
    return StarSet(tuple(stars))


def star_distances(g: TreeGraph, stars: StarSet) -> list[list[int]]:
    return [bfs_distances(g, sid) for sid in stars.star_ids]


def valence(star_dists: list[list[int]], n: int, t: int, v: int) -> int:
    """Degree of label v inside the tree represented by vertex t."""
    return n - 1 - star_dists[v][t]


def valence_matrix(g: TreeGraph, stars: StarSet) -> list[tuple[int, ...]]:
    """valences[t][v] = degree of label v in the tree at vertex t.
    Checks the handshake identity for every vertex."""
    n = stars.n
    dists = star_distances(g, stars)
    out = []
    for t in range(g.vertex_count):
        row = tuple(n - 1 - dists[v][t] for v in range(n))
        if sum(row) != 2 * (n - 1) or min(row) < 1:
            raise MalformedGraphError(
                f"vertex {t}: valences {row} violate the handshake identity"
            )
        out.append(row)
    return out


def _is_path_valences(row: tuple[int, ...]) -> bool:
    return sorted(row) == [1, 1] + [2] * (len(row) - 2)


def classify_clique_abstract(
    members: tuple[int, ...],
    valences: list[tuple[int, ...]],
    n: int,
) -> str:
    """U or I, from clique size and member valence profiles.

    U-clique sizes lie in [3, n]; I-clique sizes are k(n-k).  The two
    ranges meet only at n-1 (for n >= 5), where the leaf-count profile
    of the members decides: a size-(n-1) U-clique has exactly two path
    members and a single label that is a leaf in more than two members,
    while the I case exposes path endpoints that are leaves in n-2
    members.  For n = 4 the profiles coincide and no local test decides.
    """
    m = len(members)
    i_sizes = {k * (n - k) for k in range(1, n)}
    in_u = 3 <= m <= n
    in_i = m in i_sizes
    if in_u and not in_i:
        return U
    if in_i and not in_u:
        return I
    if not (in_u or in_i):
        raise MalformedGraphError(f"clique size {m} fits neither type (n={n})")
    if n == 4 or m != n - 1:
        raise AmbiguousClique(
            f"size-{m} clique undecidable by valence profiles at n={n}"
        )
    paths = [t for t in members if _is_path_valences(valences[t])]
    leaf_count = [
        sum(1 for t in members if valences[t][v] == 1) for v in range(n)
    ]
    heavy = [v for v in range(n) if leaf_count[v] > 2]
    if len(paths) == 2 and len(heavy) == 1:
        return U
    if len(paths) != 2:
        return I
    if sum(1 for v in range(n) if leaf_count[v] == n - 2) >= 2:
        return I
    raise MalformedGraphError(
        f"no classification rule fires for clique {members}"
    )


def has_edge_internal(
    g: TreeGraph,
    t: int,
    p: int,
    q: int,
    valences: list[tuple[int, ...]],
) -> bool:
    """For two internal labels p,q of the tree at t: is [p,q] an edge?
    True iff some neighbor drops the valence of both by one."""
    if valences[t][p] < 2 or valences[t][q] < 2:
        raise InputError("has_edge_internal requires both valences >= 2")
    return any(
        valences[nb][p] == valences[t][p] - 1
        and valences[nb][q] == valences[t][q] - 1
        for nb in g.neighbors(t)
    )


@dataclass
class LeafAudit:
    """Which branch answered each leaf query (star short-circuit vs the
    full four-step procedure)."""

    star_branch: int = 0
    chain_branch: int = 0
    max_partner_distance: int = 0


def leaf_neighbor(
    g: TreeGraph,
    t: int,
    p: int,
    stars: StarSet,
    valences: list[tuple[int, ...]],
    audit: Optional[LeafAudit] = None,
) -> int:
    """The unique neighbor label of the leaf p in the tree at vertex t.

    If every other leaf sits at tree-distance 2 the tree is a star and
    the answer is its center.  Otherwise a partner leaf p' at distance
    greater than 2 is detected through a tree-graph neighbor raising
    both valences to 2; the U-clique over that edge contains a tree
    whose valence drop pinpoints p's neighbor.
    """
    n = stars.n
    if valences[t][p] != 1:
        raise InputError(f"label {p} is not a leaf of vertex {t}")
    partner: Optional[tuple[int, int]] = None
    for p2 in range(n):
        if p2 == p or valences[t][p2] != 1:
            continue
        for nb in g.neighbors(t):
            if valences[nb][p] == 2 and valences[nb][p2] == 2:
                partner = (p2, nb)
                break
        if partner:
            break
    if partner is None:
        # all other leaves at distance 2: t is a star
        centers = [v for v in range(n) if valences[t][v] > 1]
        if len(centers) != 1:
            raise MalformedGraphError(
                f"vertex {t} has no distant leaf partner but is not a star"
            )
        if audit is not None:
            audit.star_branch += 1
        return centers[0]
    p2, t2 = partner
    report = edge_cliques(g, t, t2)
    if len(report.cliques) != 2:
        raise MalformedGraphError(
            f"edge ({t},{t2}) lies in {len(report.cliques)} cliques; "
            f"expected both types in an abstract tree graph"
        )
    tags = [
        classify_clique_abstract(c.members, valences, n)
        for c in report.cliques
    ]
    if sorted(tags) != [I, U]:
        raise MalformedGraphError(
            f"cliques at edge ({t},{t2}) typed {tags}; expected one of each"
        )
    u_clique = report.cliques[tags.index(U)]
    candidates = [
        s
        for s in u_clique.members
        if valences[s][p] == 1 and valences[s][p2] == 2
    ]
    if len(candidates) != 1:
        raise MalformedGraphError(
            f"U-clique at ({t},{t2}) has {len(candidates)} witnesses"
        )
    s = candidates[0]
    dropped = [
        v for v in range(n) if valences[s][v] == valences[t][v] - 1
    ]
    if len(dropped) != 1:
        raise MalformedGraphError(
            f"witness tree {s} drops {len(dropped)} valences; expected one"
        )
    if audit is not None:
        audit.chain_branch += 1
    return dropped[0]


def _tree_edges_via_procedure(
    g: TreeGraph,
    t: int,
    stars: StarSet,
    valences: list[tuple[int, ...]],
    audit: LeafAudit,
) -> frozenset[tuple[int, int]]:
    n = stars.n
    edges: set[tuple[int, int]] = set()
    leaves = [v for v in range(n) if valences[t][v] == 1]
    internal = [v for v in range(n) if valences[t][v] >= 2]
    for p in leaves:
        nb = leaf_neighbor(g, t, p, stars, valences, audit)
        edges.add((p, nb) if p < nb else (nb, p))
    for p, q in combinations(internal, 2):
        if has_edge_internal(g, t, p, q, valences):
            edges.add((p, q))
    return frozenset(edges)


def _reconstruct_by_matching(
    g: TreeGraph,
    stars: StarSet,
    valences: list[tuple[int, ...]],
) -> dict[int, frozenset[tuple[int, int]]]:
    """n=4 fallback: the local U/I tests are undecidable there, but the
    valence vectors pin each vertex to at most two labeled trees and the
    adjacency relation eliminates all but the true assignment (up to the
    global label permutation already fixed by the star choice)."""
    n = stars.n
    trees = enumerate_trees_kn(n)
    by_valence: dict[tuple[int, ...], list[Sst]] = {}
    for tr in trees:
        by_valence.setdefault(tuple(tr.degrees()), []).append(tr)
    candidates: list[list[Sst]] = [
        list(by_valence.get(valences[t], [])) for t in range(g.vertex_count)
    ]
    for label, sid in enumerate(stars.star_ids):
        candidates[sid] = [
            tr for tr in candidates[sid] if tr.degrees()[label] == n - 1
        ]
    order = sorted(range(g.vertex_count), key=lambda v: len(candidates[v]))
    assignment: dict[int, Sst] = {}
    used: set[Sst] = set()

    def consistent(v: int, tr: Sst) -> bool:
        es = tr.edge_set()
        for w, other in assignment.items():
            adjacent = len(es ^ other.edge_set()) == 2
            if adjacent != g.has_edge(v, w):
                return False
        return True

    def solve(i: int) -> bool:
        if i == len(order):
            return True
        v = order[i]
        for tr in candidates[v]:
            if tr in used or not consistent(v, tr):
                continue
            assignment[v] = tr
            used.add(tr)
            if solve(i + 1):
                return True
            del assignment[v]
            used.remove(tr)
        return False

    if not solve(0):
        raise MalformedGraphError("no consistent labeled-tree assignment")
    return {v: tr.edge_set() for v, tr in assignment.items()}


def reconstruct_all_trees(
    g: TreeGraph,
) -> tuple[StarSet, dict[int, frozenset[tuple[int, int]]], LeafAudit]:
    """Labeled edge set of every vertex of a tree graph of K_n, n >= 4,
    over the star labeling (fixed up to one global permutation)."""
    stars = identify_stars_abstract(g)
    n = stars.n
    if n < 4:
        raise InputError("tree reconstruction needs n >= 4")
    valences = valence_matrix(g, stars)
    audit = LeafAudit()
    if n == 4:
        result = _reconstruct_by_matching(g, stars, valences)
    else:
        result = {
            t: _tree_edges_via_procedure(g, t, stars, valences, audit)
            for t in range(g.vertex_count)
        }
    for t, edges in result.items():
        tr = Sst.from_edges(edges)
        if tr.n != n or tuple(tr.degrees()) != valences[t]:
            raise MalformedGraphError(
                f"reconstructed edges of vertex {t} contradict its valences"
            )
    return stars, result, audit


def automorphism_count(g: TreeGraph, cap: int = DEFAULT_AUT_CAP) -> int:
    """Exact order of Aut(G) for a tree graph of K_n.

    Vertices are partitioned by their distance vector to the center
    (the stars); every automorphism permutes the stars, so the search
    runs one constrained matching per star permutation.
    """
    if g.vertex_count > cap:
        raise CapExceeded(
            f"{g.vertex_count} vertices exceeds automorphism cap {cap}"
        )
    stars = identify_stars_abstract(g)
    n = stars.n
    dists = star_distances(g, stars)
    dvec = [
        tuple(dists[i][t] for i in range(n)) for t in range(g.vertex_count)
    ]
    groups: dict[tuple[int, ...], list[int]] = {}
    for t, vec in enumerate(dvec):
        groups.setdefault(vec, []).append(t)

    total = 0
    verts = list(range(g.vertex_count))
    for perm in permutations(range(n)):
        candidates = []
        feasible = True
        for t in verts:
            target = [0] * n
            for i in range(n):
                target[perm[i]] = dvec[t][i]
            cand = groups.get(tuple(target), [])
            if not cand:
                feasible = False
                break
            candidates.append(cand)
        if not feasible:
            continue
        order = sorted(verts, key=lambda v: len(candidates[v]))
        image: dict[int, int] = {}
        used: set[int] = set()

        def count_from(i: int) -> int:
            if i == len(order):
                return 1
            v = order[i]
            found = 0
            for w in candidates[v]:
                if w in used:
                    continue
                ok = True
                for v2, w2 in image.items():
                    if g.has_edge(v, v2) != g.has_edge(w, w2):
                        ok = False
                        break
                if not ok:
                    continue
                image[v] = w
                used.add(w)
                found += count_from(i + 1)
                del image[v]
                used.remove(w)
            return found

        total += count_from(0)
    return total
