"""Shared fixtures and independent brute-force oracles.

The oracles here deliberately avoid the package's bitmask/branch-and-bound
machinery: plain itertools over Python sets, and networkx where a mature
second opinion exists.  Expected values frozen in the tests were computed
with these.
"""

from itertools import combinations

import networkx as nx
import pytest

from frepkit import FrCode, Graph, TransversalDesign


def brute_min_union(code: FrCode, k: int) -> int:
    """Reference file size: plain scan over all k-subsets of nodes."""
    sets = [set(s) for s in code.node_sets]
    return min(len(set().union(*(sets[i] for i in chosen)))
               for chosen in combinations(range(code.n), k))


def brute_max_edges(g: Graph, k: int) -> int:
    """Reference induced-edge maximum: plain scan over vertex subsets."""
    best = 0
    for chosen in combinations(range(1, g.v + 1), k):
        members = set(chosen)
        count = sum(1 for u, w in g.edges if u in members and w in members)
        best = max(best, count)
    return best


def brute_hall_ok(code: FrCode, symbols) -> bool:
    """Reference retrievability: Hall's condition checked on every subset."""
    holders = code.nodes_of_symbol
    symbols = list(symbols)
    for r in range(1, len(symbols) + 1):
        for sub in combinations(symbols, r):
            neighborhood = set()
            for j in sub:
                neighborhood.update(holders[j - 1])
            if len(neighborhood) < len(sub):
                return False
    return True


def to_networkx(g: Graph) -> nx.Graph:
    G = nx.Graph()
    G.add_nodes_from(range(1, g.v + 1))
    G.add_edges_from(g.edges)
    return G


@pytest.fixture
def paper_td34() -> TransversalDesign:
    """The TD(3,4) block list as published: 12 points in 3 groups, 16 blocks."""
    blocks = [
        (1, 5, 9), (1, 6, 10), (1, 7, 11), (1, 8, 12),
        (2, 5, 10), (2, 6, 9), (2, 7, 12), (2, 8, 11),
        (3, 5, 12), (3, 6, 11), (3, 7, 10), (3, 8, 9),
        (4, 5, 11), (4, 6, 12), (4, 7, 9), (4, 8, 10),
    ]
    groups = [(1, 2, 3, 4), (5, 6, 7, 8), (9, 10, 11, 12)]
    return TransversalDesign(points=12, blocks=blocks, groups=groups)
