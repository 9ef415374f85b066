import pytest

from treegraph.enumeration import build_tree_graph, enumerate_ssts
from treegraph.geometry import PointSet
from treegraph.instances import generate_instance


@pytest.fixture(scope="session")
def pentagon():
    return PointSet([(0, 0), (4, 0), (6, 3), (2, 6), (-2, 3)])


@pytest.fixture(scope="session")
def pentagon_graph(pentagon):
    trees = enumerate_ssts(pentagon)
    g, table = build_tree_graph(trees)
    return pentagon, g, table


@pytest.fixture(scope="session")
def random5():
    return generate_instance(5, 11, "random")


@pytest.fixture(scope="session")
def random5_graph(random5):
    trees = enumerate_ssts(random5)
    g, table = build_tree_graph(trees)
    return random5, g, table


@pytest.fixture(scope="session")
def jitter6_graph():
    ps = generate_instance(6, 4, "grid-jitter")
    trees = enumerate_ssts(ps)
    g, table = build_tree_graph(trees)
    return ps, g, table
