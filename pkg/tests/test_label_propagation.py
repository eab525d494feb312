"""Tests for the label propagation detector."""

import pytest

from commcent.analysis.label_propagation import detect_communities_label_propagation
from commcent.models.graph import Graph
from tests.conftest import complete, random_connected, star, two_cliques


@pytest.mark.parametrize("seed", range(10))
def test_two_cliques_are_separated(seed):
    """Test two K20 cliques joined by one edge come out as exactly two communities."""
    graph = two_cliques(20)

    partition = detect_communities_label_propagation(graph, seed=seed)

    assert partition.k == 2
    assert len(set(partition.assignment[:20].tolist())) == 1
    assert len(set(partition.assignment[20:].tolist())) == 1


def test_complete_graph_converges_to_one_label():
    assert detect_communities_label_propagation(complete(5), seed=0).k == 1


def test_star_shares_the_hub_label():
    """Test every leaf ends with the hub's label."""
    for seed in range(5):
        partition = detect_communities_label_propagation(star(5), seed=seed)
        assert partition.k == 1


def test_deterministic_given_seed():
    graph = random_connected(50, 0.08, 2)

    first = detect_communities_label_propagation(graph, seed=7)
    second = detect_communities_label_propagation(graph, seed=7)

    assert first == second


def test_isolated_nodes_keep_their_own_label():
    partition = detect_communities_label_propagation(Graph(3, [(0, 1)]), seed=0)

    assert partition.k == 2
    assert partition.assignment[0] == partition.assignment[1]


def test_result_is_canonical():
    partition = detect_communities_label_propagation(two_cliques(5), seed=1)

    assert partition == partition.canonical()
