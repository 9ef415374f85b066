from itertools import combinations

import pytest

from treegraph import reconstruct
from treegraph.cliques import CliqueStructure, bfs_distances
from treegraph.enumeration import build_tree_graph, enumerate_ssts, shuffle_vertices
from treegraph.errors import TreegraphError
from treegraph.geometry import PointSet, segments_cross
from treegraph.harness import (
    brush_structure,
    clique_true_type,
    compare_crossing,
    run_reconstruct,
    star_center,
    typing_seed_independent,
)
from treegraph.instances import generate_instance


def _typed(graph_fixture):
    ps, g, table = graph_fixture
    structure = CliqueStructure(g)
    tags = reconstruct.type_all_cliques(structure, reconstruct.find_seed(structure))
    return ps, g, table, structure, tags


def test_typing_matches_truth(pentagon_graph, random5_graph):
    for fixture in (pentagon_graph, random5_graph):
        _, _, table, structure, tags = _typed(fixture)
        for cid in range(len(structure)):
            if structure.degenerate[cid]:
                continue
            truth = clique_true_type([table[v] for v in structure.members[cid]])
            assert tags[cid] == truth


def test_typing_edge_consistency(pentagon_graph):
    _, _, _, structure, tags = _typed(pentagon_graph)
    for c1, c2 in structure.edge_cliques.values():
        assert {tags[c1], tags[c2]} == {reconstruct.U, reconstruct.I}


def test_typing_seed_independent(pentagon_graph, jitter6_graph):
    for fixture in (pentagon_graph, jitter6_graph):
        _, g, _ = fixture
        assert typing_seed_independent(CliqueStructure(g))


def test_stars_match_truth(pentagon_graph, jitter6_graph):
    for fixture in (pentagon_graph, jitter6_graph):
        _, g, table, structure, tags = _typed(fixture)
        stars = reconstruct.identify_stars(g, structure, tags)
        truth = {v for v in range(len(table)) if star_center(table[v]) is not None}
        assert set(stars.star_ids) == truth
        n = stars.n
        for a, b in combinations(stars.star_ids, 2):
            assert bfs_distances(g, a)[b] == n - 2


def test_small_instance_rejected():
    ps = PointSet([(0, 0), (3, 0), (4, 3), (1, 4)])
    g, _ = build_tree_graph(enumerate_ssts(ps))
    with pytest.raises(TreegraphError):
        reconstruct.crossing_relation(g)


def _brush_setup(fixture):
    ps, g, table, structure, tags = _typed(fixture)
    stars = reconstruct.identify_stars(g, structure, tags)
    dists = [bfs_distances(g, sid) for sid in stars.star_ids]
    brushes = reconstruct.identify_brushes(g, stars, dists)
    label_to_point = {
        i: star_center(table[sid]) for i, sid in enumerate(stars.star_ids)
    }
    return ps, g, table, stars, dists, brushes, label_to_point


def test_brushes_match_truth(pentagon_graph):
    ps, g, table, stars, dists, brushes, l2p = _brush_setup(pentagon_graph)
    found = {info.vertex for infos in brushes.values() for info in infos}
    truth = {
        v for v in range(len(table)) if brush_structure(table[v]) is not None
    }
    assert found == truth
    for (lp, lq), infos in brushes.items():
        for info in infos:
            bt = brush_structure(table[info.vertex])
            assert {l2p[lp], l2p[lq]} == {bt.p, bt.q}
            # k leaves hang on lp's point, l on lq's point
            at_p = bt.p_side if bt.p == l2p[lp] else bt.q_side
            assert info.k == len(at_p)
            assert info.l == stars.n - 2 - len(at_p)


def test_same_center_dichotomy_exhaustive(pentagon_graph):
    ps, g, table, stars, dists, brushes, l2p = _brush_setup(pentagon_graph)
    oracle = reconstruct.SameCenterOracle(g, stars, brushes)
    n = stars.n
    for infos in brushes.values():
        for info in infos:
            bt = brush_structure(table[info.vertex])
            others = [z for z in range(n) if z not in (info.p, info.q)]
            for x, y in combinations(others, 2):
                key = (x, y) if x < y else (y, x)
                m = min(
                    oracle.dist_from(info.vertex)[b.vertex]
                    for b in brushes[key]
                )
                assert m == n - 3 or m >= n - 2
                px, py = l2p[x], l2p[y]
                same = (
                    {px, py} <= bt.p_side or {px, py} <= bt.q_side
                )
                assert oracle.same_center(info.vertex, x, y) == same
                assert oracle.same_center(info.vertex, y, x) == same


def test_label_brush_sides(pentagon_graph):
    ps, g, table, stars, dists, brushes, l2p = _brush_setup(pentagon_graph)
    oracle = reconstruct.SameCenterOracle(g, stars, brushes)
    for infos in brushes.values():
        index = {info.vertex: info for info in infos}
        for info in infos:
            lab = reconstruct.label_brush(g, info, stars, dists, oracle, index)
            bt = brush_structure(table[info.vertex])
            p_pts = {l2p[z] for z in lab.p_side}
            q_pts = {l2p[z] for z in lab.q_side}
            if bt.p == l2p[lab.p]:
                assert (p_pts, q_pts) == (set(bt.p_side), set(bt.q_side))
            else:
                assert (p_pts, q_pts) == (set(bt.q_side), set(bt.p_side))


def test_crossing_relation_blind_roundtrip(pentagon_graph, random5_graph):
    for fixture in (pentagon_graph, random5_graph):
        ps, g, table = fixture
        gs, new_to_old = shuffle_vertices(g, seed=13)
        stars, relation, audit = reconstruct.crossing_relation(gs)
        l2p = {
            i: star_center(table[new_to_old[sid]])
            for i, sid in enumerate(stars.star_ids)
        }
        assert compare_crossing(ps, relation, l2p) == 0
        assert audit.brush_count > 0
        assert all(v >= 0 for v in audit.chain_lengths.values())


def test_crossing_relation_shuffle_invariant(pentagon_graph):
    ps, g, table = pentagon_graph
    for seed in (0, 1, 2):
        gs, new_to_old = shuffle_vertices(g, seed)
        stars, relation, _ = reconstruct.crossing_relation(gs)
        l2p = {
            i: star_center(table[new_to_old[sid]])
            for i, sid in enumerate(stars.star_ids)
        }
        assert compare_crossing(ps, relation, l2p) == 0


def test_run_reconstruct_deterministic():
    ps = generate_instance(5, 6, "grid-jitter")
    r1 = run_reconstruct(ps, shuffle_seed=2)
    r2 = run_reconstruct(ps, shuffle_seed=2)
    assert r1.verdict == "PASS"
    assert r1.to_json(include_timings=False) == r2.to_json(include_timings=False)


def test_crossing_relation_key_symmetry():
    key = reconstruct.CrossingRelation.key
    assert key(3, 1, 0, 2) == key(1, 3, 2, 0) == key(0, 2, 1, 3)
