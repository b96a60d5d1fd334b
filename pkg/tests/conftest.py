import pytest

from digraph_balancing import Digraph, parse_edge_list

# 4-node example: v1 -> v2 -> v3 -> v1, plus v3 -> v4 -> v1 (0-indexed)
DEMO4_TEXT = "4\n0 1\n1 2\n2 0\n2 3\n3 0\n"

# every directed cycle has even length (4 and 2): irreducible but periodic
PERIODIC4_EDGES = [(0, 1), (1, 2), (2, 3), (3, 0), (0, 3)]


@pytest.fixture
def demo4() -> Digraph:
    return parse_edge_list(DEMO4_TEXT)


@pytest.fixture
def two_cycle() -> Digraph:
    return Digraph.from_edges(2, [(0, 1), (1, 0)])


@pytest.fixture
def periodic4() -> Digraph:
    return Digraph.from_edges(4, PERIODIC4_EDGES)
