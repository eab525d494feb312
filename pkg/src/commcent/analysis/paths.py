"""Breadth-first shortest-path distances, batched over sources."""

from collections.abc import Iterator

import numpy as np
import numpy.typing as npt
from scipy.sparse import csgraph

from commcent.errors import GraphError
from commcent.models.graph import FloatArray, Graph, IntArray

# Upper bound on the number of distance entries held in memory per batch.
_BATCH_ENTRIES = 1 << 22


def source_batches(
    n: int, sources: npt.ArrayLike | None = None, max_entries: int = _BATCH_ENTRIES
) -> Iterator[IntArray]:
    ids = np.arange(n, dtype=np.int64) if sources is None else np.asarray(sources, np.int64)
    size = max(1, max_entries // max(n, 1))
    for start in range(0, len(ids), size):
        yield ids[start : start + size]


def distance_rows(
    graph: Graph, sources: npt.ArrayLike | None = None
) -> Iterator[tuple[IntArray, FloatArray]]:
    """Yield ``(batch_sources, distances)`` with one row of hop distances per source.

    Raises:
        GraphError: If any source cannot reach every node
    """
    adjacency = graph.adjacency()
    for batch in source_batches(graph.n, sources):
        dist = csgraph.shortest_path(
            adjacency, method="D", directed=False, unweighted=True, indices=batch
        )
        dist = np.atleast_2d(dist)
        if not np.all(np.isfinite(dist)):
            raise GraphError("graph is disconnected; extract the largest component first")
        yield batch, dist


def distance_sums(
    graph: Graph, sources: npt.ArrayLike | None = None
) -> tuple[IntArray, FloatArray, FloatArray]:
    """Per-source distance sums and eccentricities.

    Returns:
        Tuple of (sources, sum of distances to all nodes, eccentricity)
    """
    all_sources: list[IntArray] = []
    sums: list[FloatArray] = []
    eccentricities: list[FloatArray] = []
    for batch, dist in distance_rows(graph, sources):
        all_sources.append(batch)
        sums.append(dist.sum(axis=1))
        eccentricities.append(dist.max(axis=1))
    if not all_sources:
        empty = np.zeros(0)
        return np.zeros(0, dtype=np.int64), empty, empty
    return np.concatenate(all_sources), np.concatenate(sums), np.concatenate(eccentricities)
