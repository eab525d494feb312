"""Shared fixtures and small graph builders."""

from itertools import combinations
from pathlib import Path

import networkx as nx
import numpy as np
import pytest

from commcent.analysis.graph_io import read_edge_list
from commcent.config import NetworkSpec, RunConfig
from commcent.models.graph import Graph
from commcent.models.partition import Partition

FIXTURES = Path(__file__).parent / "fixtures"


def star(n: int) -> Graph:
    """Hub 0 joined to leaves 1..n-1."""
    return Graph(n, [(0, leaf) for leaf in range(1, n)])


def complete(n: int) -> Graph:
    return Graph(n, list(combinations(range(n), 2)))


def path(n: int) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def two_cliques(size: int = 10) -> Graph:
    """Two K_size cliques joined by one edge between nodes size-1 and size."""
    edges = list(combinations(range(size), 2))
    edges += [(u + size, v + size) for u, v in combinations(range(size), 2)]
    edges.append((size - 1, size))
    return Graph(2 * size, edges)


def from_networkx(g: nx.Graph) -> Graph:
    nodes = sorted(g.nodes())
    index = {node: i for i, node in enumerate(nodes)}
    return Graph(len(nodes), [(index[u], index[v]) for u, v in g.edges()])


def to_networkx(graph: Graph) -> nx.Graph:
    g = nx.Graph()
    g.add_nodes_from(range(graph.n))
    g.add_edges_from(graph.edges.tolist())
    return g


def random_connected(n: int, p: float, seed: int) -> Graph:
    """Erdos-Renyi graph reduced to its largest component."""
    g = nx.gnp_random_graph(n, p, seed=seed)
    giant = max(nx.connected_components(g), key=len)
    return from_networkx(g.subgraph(giant).copy())


@pytest.fixture
def barbell() -> Graph:
    """Triangles a-b-c and d-e-f joined by the bridge c-d."""
    graph, _ = read_edge_list(FIXTURES / "barbell.edges")
    return graph


@pytest.fixture
def barbell_partition() -> Partition:
    return Partition([0, 0, 0, 1, 1, 1])


@pytest.fixture
def barbell_spec() -> NetworkSpec:
    return NetworkSpec(
        name="barbell",
        edges=FIXTURES / "barbell.edges",
        partition=FIXTURES / "barbell.partition",
    )


@pytest.fixture
def run_config(tmp_path) -> RunConfig:
    return RunConfig(output_dir=tmp_path / "out")


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(12345)
