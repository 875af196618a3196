"""Covering relation of a family of bitsets ordered by inclusion."""

from typing import List, Sequence, Tuple

import networkx as nx

from atomspec.utils.bitset import is_subset


def inclusion_graph(family: Sequence[int]) -> nx.DiGraph:
    """Build the strict inclusion order on ``family`` as a DAG over positions."""
    graph = nx.DiGraph()
    graph.add_nodes_from(range(len(family)))
    graph.add_edges_from(
        (i, j)
        for i, low in enumerate(family)
        for j, high in enumerate(family)
        if low != high and is_subset(low, high)
    )
    return graph


def covering_pairs(family: Sequence[int]) -> List[Tuple[int, int]]:
    """Return the Hasse edges ``(low, high)`` of ``family``, sorted by position."""
    return sorted(nx.transitive_reduction(inclusion_graph(family)).edges())
