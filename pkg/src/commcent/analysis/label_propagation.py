"""Asynchronous label propagation, a fast fallback community detector."""

import logging
from collections import Counter

import numpy as np

from commcent.models.graph import Graph
from commcent.models.partition import Partition

logger = logging.getLogger(__name__)

MAX_ITERATIONS = 100


def detect_communities_label_propagation(
    graph: Graph, seed: int = 0, max_iterations: int = MAX_ITERATIONS
) -> Partition:
    """Label propagation with random visiting order and random tie breaking.

    Every node starts with its own label. Nodes are visited in a fresh random order
    each sweep and adopt the most frequent label among their neighbors, keeping their
    current label when it is among the most frequent. The run stops at a fixpoint
    (no node can change) or after ``max_iterations`` sweeps. Deterministic given
    ``seed``.
    """
    rng = np.random.default_rng(np.random.SeedSequence(seed))
    labels = list(range(graph.n))
    neighbors = [graph.neighbors(i).tolist() for i in range(graph.n)]

    for iteration in range(1, max_iterations + 1):
        changed = 0
        for node in rng.permutation(graph.n).tolist():
            if not neighbors[node]:
                continue
            counts = Counter(labels[j] for j in neighbors[node])
            top = max(counts.values())
            if counts.get(labels[node], 0) == top:
                continue
            winners = sorted(label for label, count in counts.items() if count == top)
            labels[node] = winners[int(rng.integers(len(winners)))]
            changed += 1
        if not changed:
            logger.info("Label propagation reached a fixpoint after %d sweeps", iteration)
            break
    else:
        logger.warning("Label propagation stopped at the %d-sweep cap", max_iterations)

    return Partition.from_labels(labels)
