"""Ground-truth verification and machine-readable run reports.

The blind pipeline only ever sees a shuffled abstract graph; this module
holds the other half of each experiment: the id -> tree side table, the
exact geometric predicates, and the invariant checks that compare the
blind answers against the truth.
"""

from __future__ import annotations

import hashlib
import json
import time
from dataclasses import dataclass, field
from itertools import combinations
from typing import Optional

from . import abstract_kn, reconstruct
from .cliques import CliqueStructure
from .enumeration import (
    DEFAULT_MAX_SSTS,
    Edge,
    Sst,
    SstTable,
    TreeGraph,
    build_tree_graph,
    enumerate_ssts,
    enumerate_trees_kn,
    is_simple_tree,
    shuffle_vertices,
)
from .errors import TreegraphError, VerificationError
from .geometry import PointSet, convex_hull, orient, segments_cross
from .instances import format_points

# all-pairs BFS for the diameter is skipped above this vertex count
DIAMETER_VERTEX_CAP = 5000


# ---------------------------------------------------------------------------
# ground truth about individual trees

def star_center(tree: Sst) -> Optional[int]:
    """The center index if the tree is a spanning star, else None."""
    deg = tree.degrees()
    for v, d in enumerate(deg):
        if d == tree.n - 1:
            return v
    return None


@dataclass(frozen=True)
class BrushTruth:
    p: int
    q: int
    p_side: frozenset[int]
    q_side: frozenset[int]


def brush_structure(tree: Sst) -> Optional[BrushTruth]:
    """(p, q, sides) if the tree has exactly one internal edge, else None."""
    deg = tree.degrees()
    internal = [v for v, d in enumerate(deg) if d >= 2]
    if len(internal) != 2:
        return None
    p, q = internal
    if (p, q) not in tree.edge_set():
        return None
    adj = tree.adjacency()
    return BrushTruth(
        p=p,
        q=q,
        p_side=frozenset(v for v in adj[p] if v != q),
        q_side=frozenset(v for v in adj[q] if v != p),
    )


# ---------------------------------------------------------------------------
# ground truth about cliques

def clique_true_type(trees: list[Sst]) -> str:
    """U if all members stay inside a constant n-edge union, I if all
    contain a constant (n-2)-edge intersection; unambiguous for 3+
    distinct members."""
    if len(trees) < 3:
        raise VerificationError("true type needs a non-degenerate clique")
    union = frozenset().union(*(t.edge_set() for t in trees))
    inter = frozenset.intersection(*(t.edge_set() for t in trees))
    n = trees[0].n
    if len(union) == n:
        return reconstruct.U
    if len(inter) == n - 2:
        return reconstruct.I
    raise VerificationError(
        f"clique is neither union- nor intersection-constant "
        f"(|union|={len(union)}, |inter|={len(inter)})"
    )


def swapped_edges(t1: Sst, t2: Sst) -> tuple[Edge, Edge]:
    d1 = t1.edge_set() - t2.edge_set()
    d2 = t2.edge_set() - t1.edge_set()
    if len(d1) != 1 or len(d2) != 1:
        raise VerificationError("trees are not adjacent (|delta| != 2)")
    return next(iter(d1)), next(iter(d2))


def _triangle_empty(ps: PointSet, x: int, v: int, y: int) -> bool:
    for w in range(len(ps)):
        if w in (x, v, y):
            continue
        s1 = orient(ps[x], ps[v], ps[w])
        s2 = orient(ps[v], ps[y], ps[w])
        s3 = orient(ps[y], ps[x], ps[w])
        if s1 == s2 == s3:
            return False
    return True


def ear_configuration(ps: PointSet, t1: Sst, t2: Sst) -> bool:
    """True iff the swap pair of t1,t2 is a hull ear: edges [x,v],[v,y]
    with x,v,y consecutive hull vertices, empty triangle, and [x,y] kept
    by both trees."""
    e1, e2 = swapped_edges(t1, t2)
    shared = set(e1) & set(e2)
    if len(shared) != 1:
        return False
    (v,) = shared
    (x,) = set(e1) - {v}
    (y,) = set(e2) - {v}
    hull = convex_hull(ps)
    h = len(hull)
    consecutive = any(
        hull[i - 1] in (x, y) and hull[i] == v and hull[(i + 1) % h] in (x, y)
        and hull[i - 1] != hull[(i + 1) % h]
        for i in range(h)
    )
    if not consecutive:
        return False
    xy = (x, y) if x < y else (y, x)
    if xy not in (t1.edge_set() & t2.edge_set()):
        return False
    return _triangle_empty(ps, x, v, y)


def _is_leaf_edge(tree: Sst, e: Edge) -> bool:
    deg = tree.degrees()
    return deg[e[0]] == 1 or deg[e[1]] == 1


# ---------------------------------------------------------------------------
# check results and reports

@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str = ""

    def as_dict(self) -> dict:
        return {"name": self.name, "passed": self.passed, "detail": self.detail}


@dataclass
class RunReport:
    kind: str
    instance_digest: str
    n: int
    sst_count: int
    edge_count: int
    diameter: Optional[int]
    seeds: dict
    checks: list[CheckResult] = field(default_factory=list)
    crossing_digest: str = ""
    error: str = ""
    timings: dict = field(default_factory=dict)

    @property
    def verdict(self) -> str:
        if self.error:
            return "ERROR"
        return "PASS" if all(c.passed for c in self.checks) else "FAIL"

    def add(self, name: str, passed: bool, detail: str = "") -> None:
        self.checks.append(CheckResult(name, passed, detail))

    def to_json(self, include_timings: bool = True) -> str:
        doc = {
            "kind": self.kind,
            "instance_digest": self.instance_digest,
            "n": self.n,
            "sst_count": self.sst_count,
            "edge_count": self.edge_count,
            "diameter": self.diameter,
            "seeds": self.seeds,
            "checks": [c.as_dict() for c in self.checks],
            "crossing_digest": self.crossing_digest,
            "error": self.error,
            "verdict": self.verdict,
        }
        if include_timings:
            doc["timings"] = {k: round(v, 6) for k, v in self.timings.items()}
        return json.dumps(doc, indent=2) + "\n"


def instance_digest(ps: PointSet) -> str:
    return hashlib.sha256(format_points(ps).encode()).hexdigest()


def crossing_digest(relation: reconstruct.CrossingRelation) -> str:
    payload = repr(relation.canonical_items()).encode()
    return hashlib.sha256(payload).hexdigest()


# ---------------------------------------------------------------------------
# invariant suites over one geometric instance

def graph_diameter(g: TreeGraph) -> int:
    from .cliques import bfs_distances

    best = 0
    for v in range(g.vertex_count):
        dist = bfs_distances(g, v)
        if min(dist) < 0:
            raise VerificationError("graph is disconnected")
        best = max(best, max(dist))
    return best


def check_connectivity(g: TreeGraph, n: int, report: RunReport) -> None:
    from .cliques import bfs_distances

    dist = bfs_distances(g, 0)
    connected = min(dist) >= 0
    report.add("connected", connected)
    if not connected:
        return
    if g.vertex_count <= DIAMETER_VERTEX_CAP:
        diam = graph_diameter(g)
        report.diameter = diam
        report.add(
            "diameter_bound",
            diam <= 2 * n - 4,
            f"diameter {diam}, bound {2 * n - 4}",
        )
    else:
        report.add(
            "diameter_bound",
            True,
            f"skipped: {g.vertex_count} vertices over cap {DIAMETER_VERTEX_CAP}",
        )


def check_clique_structure(
    ps: PointSet,
    g: TreeGraph,
    table: SstTable,
    structure: CliqueStructure,
    tags: dict[int, str],
    report: RunReport,
) -> None:
    """Degeneracy characterizations, type correctness, and the
    leaf-edge bound, all against the id -> tree side table."""
    type_ok = all(
        tags[cid]
        == clique_true_type([table[v] for v in structure.members[cid]])
        for cid in range(len(structure))
        if not structure.degenerate[cid]
    )
    report.add("clique_types_match_truth", type_ok)

    deg_u_ok = deg_i_ok = leaf_ok = True
    for edge, (c1, c2) in structure.edge_cliques.items():
        t1, t2 = table[edge[0]], table[edge[1]]
        e1, e2 = swapped_edges(t1, t2)
        crossing = segments_cross(ps, *e1, *e2) if len(set(e1) | set(e2)) == 4 else False
        ear = ear_configuration(ps, t1, t2)
        deg_tags = [
            tags[c] for c in (c1, c2) if structure.degenerate[c]
        ]
        if (reconstruct.U in deg_tags) != crossing:
            deg_u_ok = False
        if (reconstruct.I in deg_tags) != ear:
            deg_i_ok = False
        i_cid = c1 if tags[c1] == reconstruct.I else c2
        if not _is_leaf_edge(t1, e1) and structure.size(i_cid) < 4:
            leaf_ok = False
        if not _is_leaf_edge(t2, e2) and structure.size(i_cid) < 4:
            leaf_ok = False
    report.add("degenerate_u_iff_crossing_swap", deg_u_ok)
    report.add("degenerate_i_iff_hull_ear", deg_i_ok)
    report.add("internal_edge_i_clique_size", leaf_ok)


def typing_seed_independent(structure: CliqueStructure) -> bool:
    """Retype from every degenerate seed; all colorings must agree."""
    baseline = None
    for edge, (c1, c2) in sorted(structure.edge_cliques.items()):
        deg_id = next(
            (c for c in (c1, c2) if structure.degenerate[c]), None
        )
        if deg_id is None:
            continue
        other = c2 if deg_id == c1 else c1
        companion_tag = (
            reconstruct.I if structure.size(other) == 3 else reconstruct.U
        )
        seed_tag = reconstruct.U if companion_tag == reconstruct.I else reconstruct.I
        tags = reconstruct.type_all_cliques(structure, (other, seed_tag))
        if baseline is None:
            baseline = tags
        elif tags != baseline:
            return False
    return baseline is not None


def dt_connected_all(structure: CliqueStructure) -> bool:
    """Connectivity of the clique-incidence graph at every vertex,
    computed from the interned clique structure."""
    member_sets = [frozenset(m) for m in structure.members]
    for v in range(structure.graph.vertex_count):
        cids = structure.cliques_at(v)
        if len(cids) <= 1:
            continue
        index = {cid: i for i, cid in enumerate(cids)}
        seen = {cids[0]}
        stack = [cids[0]]
        while stack:
            c = stack.pop()
            for d in cids:
                if d not in seen and len(member_sets[c] & member_sets[d]) == 2:
                    seen.add(d)
                    stack.append(d)
        if len(seen) != len(cids):
            return False
    return True


def check_stars_brushes(
    g: TreeGraph,
    table: SstTable,
    stars: reconstruct.StarSet,
    brushes: dict[tuple[int, int], list[reconstruct.BrushInfo]],
    report: RunReport,
) -> None:
    from .cliques import bfs_distances

    true_stars = {
        v: star_center(table[v])
        for v in range(len(table))
        if star_center(table[v]) is not None
    }
    report.add(
        "stars_match_truth",
        set(stars.star_ids) == set(true_stars),
        f"found {len(stars.star_ids)}, truth {len(true_stars)}",
    )
    n = stars.n
    dist_ok = all(
        bfs_distances(g, a)[b] == n - 2
        for a, b in combinations(stars.star_ids, 2)
    )
    report.add("star_pairwise_distance", dist_ok)

    label_to_point = {i: true_stars[sid] for i, sid in enumerate(stars.star_ids)}
    truth_brushes: dict[tuple[int, int], dict[int, BrushTruth]] = {}
    for v in range(len(table)):
        bt = brush_structure(table[v])
        if bt is not None:
            key = (bt.p, bt.q)
            truth_brushes.setdefault(key, {})[v] = bt
    ok = True
    for (lp, lq), infos in brushes.items():
        pp, pq = label_to_point[lp], label_to_point[lq]
        key = (pp, pq) if pp < pq else (pq, pp)
        want = truth_brushes.get(key, {})
        got = {info.vertex: info for info in infos}
        if set(got) != set(want):
            ok = False
            continue
        for v, info in got.items():
            bt = want[v]
            # sides of the true brush, read in (pp, pq) order
            at_pp = bt.p_side if bt.p == pp else bt.q_side
            at_pq = bt.q_side if bt.q == pq else bt.p_side
            if (info.k, info.l) != (len(at_pp), len(at_pq)):
                ok = False
    report.add("brushes_match_truth", ok)


def compare_crossing(
    ps: PointSet,
    relation: reconstruct.CrossingRelation,
    label_to_point: dict[int, int],
) -> int:
    """Mismatch count between the blind crossing table and the exact
    predicate, under the star correspondence."""
    mismatches = 0
    for (s1, s2), claimed in relation.table.items():
        a, b = label_to_point[s1[0]], label_to_point[s1[1]]
        c, d = label_to_point[s2[0]], label_to_point[s2[1]]
        if claimed != segments_cross(ps, a, b, c, d):
            mismatches += 1
    return mismatches


# ---------------------------------------------------------------------------
# top-level runs

def run_enumerate(
    ps: PointSet, max_ssts: int = DEFAULT_MAX_SSTS
) -> tuple[RunReport, list[Sst]]:
    report = RunReport(
        kind="enumerate",
        instance_digest=instance_digest(ps),
        n=len(ps),
        sst_count=0,
        edge_count=0,
        diameter=None,
        seeds={},
    )
    t0 = time.perf_counter()
    trees = enumerate_ssts(ps, max_ssts)
    report.timings["enumerate"] = time.perf_counter() - t0
    report.sst_count = len(trees)
    t0 = time.perf_counter()
    g, _table = build_tree_graph(trees)
    report.timings["build_graph"] = time.perf_counter() - t0
    report.edge_count = g.edge_count()
    report.add("all_simple", all(is_simple_tree(t.edges, ps) for t in trees))
    check_connectivity(g, len(ps), report)
    return report, trees


def run_reconstruct(
    ps: PointSet,
    shuffle_seed: int = 0,
    max_ssts: int = DEFAULT_MAX_SSTS,
    deep_checks: bool = True,
) -> RunReport:
    """End-to-end experiment: enumerate, build, shuffle, reconstruct
    blindly, and compare everything against the ground truth."""
    report = RunReport(
        kind="reconstruct",
        instance_digest=instance_digest(ps),
        n=len(ps),
        sst_count=0,
        edge_count=0,
        diameter=None,
        seeds={"shuffle_seed": shuffle_seed},
    )
    t0 = time.perf_counter()
    trees = enumerate_ssts(ps, max_ssts)
    report.sst_count = len(trees)
    g0, table0 = build_tree_graph(trees)
    report.edge_count = g0.edge_count()
    report.timings["enumerate_build"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    check_connectivity(g0, len(ps), report)
    report.timings["connectivity"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    gs, new_to_old = shuffle_vertices(g0, shuffle_seed)
    stars, relation, audit = reconstruct.crossing_relation(gs)
    report.timings["blind_pipeline"] = time.perf_counter() - t0
    report.crossing_digest = crossing_digest(relation)

    # star correspondence: blind label -> point index
    label_to_point = {}
    for i, sid in enumerate(stars.star_ids):
        center = star_center(table0[new_to_old[sid]])
        if center is None:
            raise VerificationError(
                f"blind star {sid} is not a star tree in truth"
            )
        label_to_point[i] = center
    report.add(
        "star_labels_bijective",
        sorted(label_to_point.values()) == list(range(len(ps))),
    )
    t0 = time.perf_counter()
    mismatches = compare_crossing(ps, relation, label_to_point)
    report.timings["crossing_compare"] = time.perf_counter() - t0
    report.add(
        "crossing_table_exact", mismatches == 0, f"{mismatches} mismatches"
    )

    if deep_checks:
        t0 = time.perf_counter()
        structure = CliqueStructure(g0)
        seed = reconstruct.find_seed(structure)
        tags = reconstruct.type_all_cliques(structure, seed)
        check_clique_structure(ps, g0, table0, structure, tags, report)
        report.add("typing_seed_independent", typing_seed_independent(structure))
        report.add("dt_connected", dt_connected_all(structure))
        blind_stars0 = reconstruct.identify_stars(g0, structure, tags)
        from .cliques import bfs_distances

        star_dists = [bfs_distances(g0, sid) for sid in blind_stars0.star_ids]
        brushes0 = reconstruct.identify_brushes(g0, blind_stars0, star_dists)
        check_stars_brushes(g0, table0, blind_stars0, brushes0, report)
        report.timings["deep_checks"] = time.perf_counter() - t0
    return report


def run_abstract(n: int, shuffle_seed: int = 0, aut_cap: int = 125) -> RunReport:
    """Tree-graph experiment on the abstract complete graph: reconstruct
    all labeled trees blindly and count automorphisms when feasible."""
    report = RunReport(
        kind="abstract-kn",
        instance_digest=hashlib.sha256(f"K_{n}".encode()).hexdigest(),
        n=n,
        sst_count=0,
        edge_count=0,
        diameter=None,
        seeds={"shuffle_seed": shuffle_seed},
    )
    t0 = time.perf_counter()
    trees = enumerate_trees_kn(n)
    report.sst_count = len(trees)
    g0, table0 = build_tree_graph(trees)
    report.edge_count = g0.edge_count()
    report.timings["enumerate_build"] = time.perf_counter() - t0
    report.add("tree_count", len(trees) == n ** (n - 2))

    gs, new_to_old = shuffle_vertices(g0, shuffle_seed)
    if n >= 4:
        t0 = time.perf_counter()
        stars, recon, _audit = abstract_kn.reconstruct_all_trees(gs)
        report.timings["reconstruct_trees"] = time.perf_counter() - t0
        # the label permutation is fixed by the stars themselves
        sigma = {}
        for i, sid in enumerate(stars.star_ids):
            center = star_center(table0[new_to_old[sid]])
            if center is None:
                raise VerificationError(f"blind star {sid} is not a star tree")
            sigma[i] = center
        report.add(
            "star_labels_bijective",
            sorted(sigma.values()) == list(range(n)),
        )
        bad = 0
        for v, edges in recon.items():
            mapped = frozenset(
                (sigma[a], sigma[b]) if sigma[a] < sigma[b] else (sigma[b], sigma[a])
                for a, b in edges
            )
            if mapped != table0[new_to_old[v]].edge_set():
                bad += 1
        report.add(
            "trees_reconstructed_exactly",
            bad == 0,
            f"{bad} of {len(recon)} wrong",
        )
    if g0.vertex_count <= aut_cap:
        t0 = time.perf_counter()
        count = abstract_kn.automorphism_count(gs, cap=aut_cap)
        report.timings["automorphisms"] = time.perf_counter() - t0
        import math

        report.add(
            "automorphism_count",
            count == math.factorial(n),
            f"counted {count}, expected {math.factorial(n)}",
        )
    else:
        report.add(
            "automorphism_count",
            True,
            f"skipped: {g0.vertex_count} vertices over cap {aut_cap}",
        )
    return report
