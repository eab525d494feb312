"""Classical centrality measures: degree, betweenness, closeness, Katz and PageRank."""

import logging
from concurrent.futures import ThreadPoolExecutor

import numpy as np
from scipy import sparse

from commcent.analysis.paths import distance_sums, source_batches
from commcent.errors import ConvergenceError, GraphError, KatzDivergenceError
from commcent.models.graph import FloatArray, Graph, IntArray
from commcent.models.scores import CentralityParams, MeasureId, ScoreVector

logger = logging.getLogger(__name__)

# Brandes keeps several (n x batch) arrays alive at once.
_BRANDES_BATCH_ENTRIES = 1 << 20


def degree_centrality(graph: Graph) -> ScoreVector:
    return ScoreVector.from_array(MeasureId.DEGREE, graph.degrees.astype(np.float64))


def _brandes_batch(adjacency: sparse.csr_matrix, sources: IntArray) -> FloatArray:
    """Dependency of every node, summed over the BFS trees rooted at ``sources``.

    The BFS runs level-synchronously for all sources at once, one column per source.
    """
    n, width = adjacency.shape[0], len(sources)
    columns = np.arange(width)
    sigma = np.zeros((n, width))
    sigma[sources, columns] = 1.0
    dist = np.full((n, width), -1, dtype=np.int64)
    dist[sources, columns] = 0

    frontier = sigma.copy()
    depth = 0
    while True:
        reached = adjacency @ frontier
        reached[dist >= 0] = 0.0
        discovered = reached > 0
        if not discovered.any():
            break
        depth += 1
        dist[discovered] = depth
        sigma[discovered] = reached[discovered]
        frontier = reached

    delta = np.zeros((n, width))
    for level in range(depth, 0, -1):
        at_level = dist == level
        coefficient = np.where(at_level, (1.0 + delta) / np.where(at_level, sigma, 1.0), 0.0)
        pushed = adjacency @ coefficient
        delta += np.where(dist == level - 1, sigma * pushed, 0.0)
    delta[sources, columns] = 0.0
    result: FloatArray = delta.sum(axis=1)
    return result


def betweenness_centrality(graph: Graph, workers: int = 1) -> ScoreVector:
    """Unnormalized betweenness over unordered pairs, endpoints excluded (Brandes).

    Sources are processed in batches; with ``workers > 1`` batches run on a thread
    pool and their partial sums are reduced in batch order.
    """
    adjacency = graph.adjacency()
    batches = list(source_batches(graph.n, max_entries=_BRANDES_BATCH_ENTRIES))
    if workers > 1 and len(batches) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            partials = list(pool.map(lambda b: _brandes_batch(adjacency, b), batches))
    else:
        partials = [_brandes_batch(adjacency, b) for b in batches]
    total = np.zeros(graph.n)
    for partial in partials:
        total += partial
    return ScoreVector.from_array(
        MeasureId.BETWEENNESS, total / 2.0, {"normalized": False, "pairs": "unordered"}
    )


def closeness_centrality(graph: Graph) -> ScoreVector:
    """(N-1) divided by the sum of shortest-path distances from each node.

    Raises:
        GraphError: If the graph is disconnected
    """
    if graph.n == 1:
        return ScoreVector.from_array(MeasureId.CLOSENESS, np.zeros(1))
    _, sums, _ = distance_sums(graph)
    return ScoreVector.from_array(MeasureId.CLOSENESS, (graph.n - 1) / sums)


def spectral_radius(
    graph: Graph, tolerance: float = 1e-8, max_iterations: int = 10_000
) -> float:
    """Largest adjacency eigenvalue by power iteration on ``A + I``.

    The unit shift keeps the dominant eigenvalue unique on bipartite graphs.
    """
    if graph.m == 0:
        return 0.0
    adjacency = graph.adjacency()
    x = graph.degrees.astype(np.float64) + 1.0
    x /= np.linalg.norm(x)
    estimate = 0.0
    for iteration in range(1, max_iterations + 1):
        y = adjacency @ x + x
        rayleigh = float(x @ y)
        x = y / np.linalg.norm(y)
        if abs(rayleigh - estimate) <= tolerance * max(1.0, rayleigh):
            logger.debug("lambda_max converged after %d iterations", iteration)
            return rayleigh - 1.0
        estimate = rayleigh
    raise ConvergenceError("lambda_max power iteration", max_iterations, abs(rayleigh - estimate))


def katz_centrality(graph: Graph, params: CentralityParams | None = None) -> ScoreVector:
    """Katz centrality, the series sum over p >= 1 of s^p A^p 1.

    Evaluated by the fixed-point iteration ``x <- s A (x + 1)`` from ``x = 0``, whose
    t-th iterate is the series truncated at p = t.

    Raises:
        KatzDivergenceError: If s >= 1/lambda_max
        ConvergenceError: If the iteration cap is reached
    """
    params = params or CentralityParams()
    lambda_max = spectral_radius(graph, params.spectral_tolerance, params.max_iterations)
    bound = 1.0 / lambda_max if lambda_max > 0 else float("inf")
    if params.katz_attenuation is None:
        s = params.katz_fraction * bound if lambda_max > 0 else 0.0
    else:
        s = params.katz_attenuation
    if s >= bound:
        raise KatzDivergenceError(s, bound)

    adjacency = graph.adjacency()
    x = np.zeros(graph.n)
    for iteration in range(1, params.max_iterations + 1):
        updated = s * (adjacency @ (x + 1.0))
        change = float(np.max(np.abs(updated - x))) if graph.n else 0.0
        x = updated
        if change <= params.tolerance * max(1.0, float(np.max(x, initial=0.0))):
            logger.debug("Katz converged after %d iterations", iteration)
            break
    else:
        raise ConvergenceError("katz", params.max_iterations, change)
    return ScoreVector.from_array(
        MeasureId.KATZ, x, {"attenuation": s, "lambda_max": lambda_max}
    )


def pagerank_centrality(graph: Graph, params: CentralityParams | None = None) -> ScoreVector:
    """PageRank with every undirected edge read as two directed links.

    Power iteration from the uniform vector with an L1 convergence test. Mass of
    isolated nodes, if any, is spread uniformly.

    Raises:
        ConvergenceError: If the iteration cap is reached
    """
    params = params or CentralityParams()
    n, d = graph.n, params.pagerank_damping
    if n == 0:
        raise GraphError("PageRank needs at least one node")
    adjacency = graph.adjacency()
    degrees = graph.degrees.astype(np.float64)
    dangling = degrees == 0
    inverse = np.where(dangling, 0.0, 1.0 / np.where(dangling, 1.0, degrees))

    x = np.full(n, 1.0 / n)
    for iteration in range(1, params.max_iterations + 1):
        updated = (1.0 - d) / n + d * (adjacency @ (x * inverse) + x[dangling].sum() / n)
        change = float(np.abs(updated - x).sum())
        x = updated
        if change <= params.tolerance:
            logger.debug("PageRank converged after %d iterations", iteration)
            break
    else:
        raise ConvergenceError("pagerank", params.max_iterations, change)
    return ScoreVector.from_array(MeasureId.PAGERANK, x, {"damping": d})


def classical_centralities(
    graph: Graph, params: CentralityParams | None = None, workers: int = 1
) -> dict[MeasureId, ScoreVector]:
    """All five classical measures, keyed by measure id in heatmap row order."""
    params = params or CentralityParams()
    if not graph.is_connected():
        raise GraphError("graph is disconnected; extract the largest component first")
    return {
        MeasureId.DEGREE: degree_centrality(graph),
        MeasureId.BETWEENNESS: betweenness_centrality(graph, workers),
        MeasureId.CLOSENESS: closeness_centrality(graph),
        MeasureId.KATZ: katz_centrality(graph, params),
        MeasureId.PAGERANK: pagerank_centrality(graph, params),
    }
