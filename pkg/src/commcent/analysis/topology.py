"""Community-agnostic topological statistics."""

import logging

import numpy as np

from commcent.analysis.paths import distance_sums
from commcent.errors import GraphError, InvalidParameterError
from commcent.models.graph import Graph
from commcent.models.report import TopoStats

logger = logging.getLogger(__name__)


def triangle_count(graph: Graph) -> int:
    adjacency = graph.adjacency()
    closed = (adjacency @ adjacency).multiply(adjacency).sum()
    return int(round(closed)) // 6


def connected_triples(graph: Graph) -> int:
    degrees = graph.degrees
    return int(np.sum(degrees * (degrees - 1)) // 2)


def transitivity(graph: Graph) -> float:
    """Global clustering coefficient: 3 x triangles / connected triples."""
    triples = connected_triples(graph)
    if triples == 0:
        return 0.0
    return 3.0 * triangle_count(graph) / triples


def degree_assortativity(graph: Graph) -> float | None:
    """Pearson correlation of endpoint degrees over both orientations of every edge.

    Returns None when the endpoint degrees have no variance (e.g. regular graphs).
    """
    if graph.m == 0:
        return None
    degrees = graph.degrees.astype(np.float64)
    x = np.concatenate([degrees[graph.edges[:, 0]], degrees[graph.edges[:, 1]]])
    y = np.concatenate([degrees[graph.edges[:, 1]], degrees[graph.edges[:, 0]]])
    mean = x.mean()
    variance = np.mean((x - mean) ** 2)
    if variance <= 1e-12 * max(mean * mean, 1.0):
        return None
    return float(np.mean((x - mean) * (y - mean)) / variance)


def topo_stats(
    graph: Graph,
    sample_paths: int | None = None,
    rng: np.random.Generator | None = None,
) -> TopoStats:
    """Compute the topological profile of a connected graph.

    Average shortest path and diameter come from BFS over every source, or over
    ``sample_paths`` uniformly drawn sources when given (approximate).

    Raises:
        GraphError: If the graph has fewer than two nodes or is disconnected
    """
    n, m = graph.n, graph.m
    if n < 2:
        raise GraphError("topological statistics need at least two nodes")
    if not graph.is_connected():
        raise GraphError("graph is disconnected; extract the largest component first")

    sources = None
    if sample_paths is not None:
        if sample_paths < 1:
            raise InvalidParameterError("sample_paths must be at least 1")
        if sample_paths < n:
            rng = rng if rng is not None else np.random.default_rng(0)
            sources = np.sort(rng.choice(n, size=sample_paths, replace=False))
        else:
            sample_paths = None

    used, sums, eccentricities = distance_sums(graph, sources)
    avg_path = float(sums.sum() / (len(used) * (n - 1)))
    diameter = int(eccentricities.max())

    stats = TopoStats(
        n=n,
        m=m,
        avg_degree=2.0 * m / n,
        avg_shortest_path=avg_path,
        density=2.0 * m / (n * (n - 1)),
        transitivity=transitivity(graph),
        assortativity=degree_assortativity(graph),
        diameter=diameter,
        paths_sampled=sample_paths,
    )
    logger.info("Topology: n=%d m=%d <d>=%.4f D=%d", n, m, avg_path, diameter)
    return stats
