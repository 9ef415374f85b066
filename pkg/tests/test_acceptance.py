"""Acceptance gate: one test per criterion, one printed verdict line each.

The instance matrix is 21 seeded instances per n in {5, 6} (7 seeds x 3
generator modes) plus 3 instances at n = 7 (one per mode).
"""

import math
from itertools import combinations

import pytest

from treegraph import abstract_kn, reconstruct
from treegraph.cliques import CliqueStructure, bfs_distances
from treegraph.enumeration import build_tree_graph, enumerate_ssts, enumerate_trees_kn
from treegraph.harness import (
    brush_structure,
    run_abstract,
    run_reconstruct,
    star_center,
)
from treegraph.instances import MODES, generate_instance
from treegraph.svg import render_svg

SEEDS = range(1, 8)


def _check(report, name):
    return next(c for c in report.checks if c.name == name)


def _line(num, desc, ok, extra=""):
    suffix = f" ({extra})" if extra else ""
    print(f"[criterion {num}] {desc}: {'PASS' if ok else 'FAIL'}{suffix}")


@pytest.fixture(scope="module")
def suite():
    results = []
    for n in (5, 6):
        for mode in MODES:
            for seed in SEEDS:
                ps = generate_instance(n, seed, mode)
                rep = run_reconstruct(ps, shuffle_seed=seed, deep_checks=True)
                results.append((n, mode, seed, ps, rep))
    for mode in MODES:
        ps = generate_instance(7, 1, mode)
        rep = run_reconstruct(ps, shuffle_seed=1, deep_checks=False)
        results.append((7, mode, 1, ps, rep))
    return results


def test_criterion_1_end_to_end(suite):
    counts = {5: 0, 6: 0, 7: 0}
    ok = True
    for n, mode, seed, ps, rep in suite:
        counts[n] += 1
        if not (_check(rep, "crossing_table_exact").passed
                and _check(rep, "star_labels_bijective").passed):
            ok = False
    ok = ok and counts[5] >= 20 and counts[6] >= 20 and counts[7] >= 3
    _line(1, "end-to-end crossing reconstruction, 0 mismatches", ok,
          f"{counts[5]}+{counts[6]}+{counts[7]} instances")
    assert ok


def test_criterion_2_clique_structure(suite):
    names = (
        "clique_types_match_truth",
        "degenerate_u_iff_crossing_swap",
        "degenerate_i_iff_hull_ear",
        "internal_edge_i_clique_size",
    )
    deep = [(n, rep) for n, _, _, _, rep in suite if n in (5, 6)]
    ok = all(_check(rep, name).passed for _, rep in deep for name in names)
    _line(2, "clique structure suite (degeneracy, types, leaf-edge bound)",
          ok, f"{len(deep)} instances")
    assert ok


def test_criterion_3_connectivity(suite):
    ok = True
    dt_checked = 0
    for n, mode, seed, ps, rep in suite:
        if n <= 6:
            if not (_check(rep, "connected").passed
                    and _check(rep, "diameter_bound").passed):
                ok = False
        if n in (5, 6):
            if not (_check(rep, "dt_connected").passed
                    and _check(rep, "typing_seed_independent").passed):
                ok = False
            dt_checked += 1
    ok = ok and dt_checked >= 5
    _line(3, "connectivity, diameter bound, D_T, seed-independent typing",
          ok, f"D_T on {dt_checked} instances")
    assert ok


def test_criterion_4_stars_and_brushes(suite):
    names = ("stars_match_truth", "star_pairwise_distance", "brushes_match_truth")
    deep = [(n, rep) for n, _, _, _, rep in suite if n in (5, 6)]
    ok = all(_check(rep, name).passed for _, rep in deep for name in names)
    _line(4, "stars and brushes match ground truth with exact distances",
          ok, f"{len(deep)} instances")
    assert ok


def _dichotomy_queries(ps, exhaustive):
    trees = enumerate_ssts(ps)
    g, table = build_tree_graph(trees)
    structure = CliqueStructure(g)
    tags = reconstruct.type_all_cliques(structure, reconstruct.find_seed(structure))
    stars = reconstruct.identify_stars(g, structure, tags)
    dists = [bfs_distances(g, sid) for sid in stars.star_ids]
    brushes = reconstruct.identify_brushes(g, stars, dists)
    oracle = reconstruct.SameCenterOracle(g, stars, brushes)
    l2p = {i: star_center(table[sid]) for i, sid in enumerate(stars.star_ids)}
    n = stars.n
    queries = 0
    for infos in brushes.values():
        for info in infos:
            bt = brush_structure(table[info.vertex])
            others = [z for z in range(n) if z not in (info.p, info.q)]
            for x, y in combinations(others, 2):
                key = (x, y) if x < y else (y, x)
                m = min(oracle.dist_from(info.vertex)[b.vertex]
                        for b in brushes[key])
                if not (m == n - 3 or m >= n - 2):
                    return queries, False
                same_truth = (
                    {l2p[x], l2p[y]} <= bt.p_side
                    or {l2p[x], l2p[y]} <= bt.q_side
                )
                if (m >= n - 2) != same_truth:
                    return queries, False
                queries += 1
    return queries, True


def test_criterion_5_same_center_dichotomy():
    ok = True
    total5 = 0
    for mode in MODES:
        for seed in SEEDS:
            q, good = _dichotomy_queries(generate_instance(5, seed, mode), True)
            total5 += q
            ok = ok and good
    total6 = 0
    for mode in MODES:
        for seed in SEEDS:
            q, good = _dichotomy_queries(generate_instance(6, seed, mode), False)
            total6 += q
            ok = ok and good
    ok = ok and total6 >= 10_000
    _line(5, "same-center distance dichotomy (n-3 vs >= n-2)",
          ok, f"exhaustive n=5 ({total5} queries), n=6 sampled ({total6})")
    assert ok


def test_criterion_6_abstract_kn():
    failures = []
    for n in (4, 5, 6):
        rep = run_abstract(n, shuffle_seed=1)
        if not _check(rep, "star_labels_bijective").passed:
            failures.append(f"n={n} center/labels")
        if not _check(rep, "trees_reconstructed_exactly").passed:
            failures.append(f"n={n} tree reconstruction")
        # valence formula against the labeled trees
        trees = enumerate_trees_kn(n)
        g, table = build_tree_graph(trees)
        stars = abstract_kn.identify_stars_abstract(g)
        valences = abstract_kn.valence_matrix(g, stars)
        center = [star_center(table[sid]) for sid in stars.star_ids]
        if not all(
            valences[v][i] == table[v].degrees()[center[i]]
            for v in range(g.vertex_count)
            for i in range(n)
        ):
            failures.append(f"n={n} valence formula")
    for n in (3, 4, 5):
        g, _ = build_tree_graph(enumerate_trees_kn(n))
        count = abstract_kn.automorphism_count(g)
        if count != math.factorial(n):
            failures.append(f"n={n} automorphisms: {count} != {math.factorial(n)}")
    ok = not failures
    _line(6, "abstract complete-graph suite (center, valences, trees, Aut)",
          ok, "; ".join(failures))
    assert ok, failures


def test_criterion_7_determinism():
    ps = generate_instance(5, 2, "random")
    r1 = run_reconstruct(ps, shuffle_seed=4)
    r2 = run_reconstruct(ps, shuffle_seed=4)
    reports_ok = (
        r1.to_json(include_timings=False) == r2.to_json(include_timings=False)
    )
    a1 = run_abstract(5, shuffle_seed=4)
    a2 = run_abstract(5, shuffle_seed=4)
    abstract_ok = (
        a1.to_json(include_timings=False) == a2.to_json(include_timings=False)
    )
    tree = enumerate_ssts(ps)[0]
    svg_ok = render_svg(ps, tree=tree) == render_svg(ps, tree=tree)
    ok = reports_ok and abstract_ok and svg_ok
    _line(7, "byte-identical reports (minus timings) and SVGs", ok)
    assert ok
