"""Two-level map equation on undirected, unweighted graphs and its minimization.

The random walk is the unrecorded walk on the graph: node ``i`` is visited with
probability ``degree(i) / 2m`` and a module is exited along each of its boundary
links with probability ``1 / 2m``. Codelengths are in bits.
"""

import logging
from collections import defaultdict
from collections.abc import Iterator
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np
import numpy.typing as npt

from commcent.errors import InvalidParameterError
from commcent.models.graph import FloatArray, Graph, IntArray
from commcent.models.partition import Partition

logger = logging.getLogger(__name__)

# Graphs up to this size are solved by enumerating every partition.
EXACT_SEARCH_MAX_NODES = 8
MIN_IMPROVEMENT = 1e-10
CODELENGTH_TIE = 1e-12
MAX_SWEEPS = 200
MAX_REFINEMENTS = 10


def plogp(x: npt.ArrayLike) -> FloatArray:
    """Elementwise ``x log2 x`` with ``0 log 0 = 0``."""
    values = np.asarray(x, dtype=np.float64)
    safe = np.where(values > 0, values, 1.0)
    return np.where(values > 0, values * np.log2(safe), 0.0)


def _plogp(x: float) -> float:
    return float(x * np.log2(x)) if x > 0 else 0.0


def _codelength(
    degrees: FloatArray, module_volume: FloatArray, module_exit: FloatArray, total: float
) -> float:
    exit_flow = module_exit / total
    node_entropy = float(np.sum(plogp(degrees / total)))
    return float(
        _plogp(float(exit_flow.sum()))
        - 2.0 * np.sum(plogp(exit_flow))
        - node_entropy
        + np.sum(plogp(exit_flow + module_volume / total))
    )


def map_equation(graph: Graph, partition: Partition) -> float:
    """Two-level codelength L(M) of ``partition`` in bits.

    With a single community the index codebook vanishes and L equals the entropy
    of the stationary visit distribution.
    """
    if partition.n != graph.n:
        raise InvalidParameterError("partition and graph sizes differ")
    if graph.m == 0:
        return 0.0
    assignment = partition.assignment
    degrees = graph.degrees.astype(np.float64)
    module_volume = np.bincount(assignment, weights=degrees, minlength=partition.k)
    u, v = graph.edges[:, 0], graph.edges[:, 1]
    crossing = assignment[u] != assignment[v]
    module_exit = np.bincount(
        np.concatenate([assignment[u[crossing]], assignment[v[crossing]]]),
        minlength=partition.k,
    ).astype(np.float64)
    return max(_codelength(degrees, module_volume, module_exit, 2.0 * graph.m), 0.0)


@dataclass
class _FlowGraph:
    """Weighted graph of modules; ``volume`` counts every member degree."""

    neighbors: list[dict[int, float]]
    volume: list[float]
    out: list[float]

    @classmethod
    def from_graph(cls, graph: Graph) -> "_FlowGraph":
        neighbors = [
            {int(j): 1.0 for j in graph.neighbors(i)} for i in range(graph.n)
        ]
        degrees = [float(d) for d in graph.degrees]
        return cls(neighbors, degrees, list(degrees))

    @property
    def size(self) -> int:
        return len(self.volume)

    def aggregate(self, module: list[int], k: int) -> "_FlowGraph":
        neighbors: list[dict[int, float]] = [defaultdict(float) for _ in range(k)]
        volume = [0.0] * k
        for node, links in enumerate(self.neighbors):
            a = module[node]
            volume[a] += self.volume[node]
            for other, weight in links.items():
                b = module[other]
                if a != b:
                    neighbors[a][b] += weight
        merged = [dict(links) for links in neighbors]
        return _FlowGraph(merged, volume, [sum(links.values()) for links in merged])


def _dense(labels: list[int]) -> tuple[list[int], int]:
    ids: dict[int, int] = {}
    return [ids.setdefault(label, len(ids)) for label in labels], len(ids)


def _move_nodes(
    flow: _FlowGraph, module: list[int], total: float, rng: np.random.Generator
) -> tuple[list[int], bool]:
    """Greedy local moves of single flow-graph nodes until no move shortens the code."""
    n = flow.size
    module = list(module)
    volume = [0.0] * n
    exit_ = [0.0] * n
    members = [0] * n
    for node in range(n):
        a = module[node]
        volume[a] += flow.volume[node]
        members[a] += 1
        exit_[a] += sum(w for other, w in flow.neighbors[node].items() if module[other] != a)
    empty = [c for c in range(n) if members[c] == 0]
    sum_exit = sum(exit_)

    def term(e: float, v: float) -> float:
        return -2.0 * _plogp(e / total) + _plogp((e + v) / total)

    moved_any = False
    for _ in range(MAX_SWEEPS):
        moved = 0
        for node in rng.permutation(n).tolist():
            a = module[node]
            weights: dict[int, float] = defaultdict(float)
            for other, w in flow.neighbors[node].items():
                weights[module[other]] += w
            out_a, vol_a = flow.out[node], flow.volume[node]
            exit_a_without = exit_[a] - out_a + 2.0 * weights.get(a, 0.0)
            vol_a_without = volume[a] - vol_a
            base = _plogp(sum_exit / total) + term(exit_[a], volume[a])
            removed = term(exit_a_without, vol_a_without)

            candidates = sorted(b for b in weights if b != a)
            if members[a] > 1 and empty:
                candidates.append(empty[-1])

            best, best_delta, best_exit = a, -MIN_IMPROVEMENT, 0.0
            for b in candidates:
                exit_b_with = exit_[b] + out_a - 2.0 * weights.get(b, 0.0)
                new_sum = sum_exit - exit_[a] - exit_[b] + exit_a_without + exit_b_with
                delta = (
                    _plogp(new_sum / total)
                    + removed
                    + term(exit_b_with, volume[b] + vol_a)
                    - base
                    - term(exit_[b], volume[b])
                )
                if delta < best_delta:
                    best, best_delta, best_exit = b, delta, exit_b_with

            if best == a:
                continue
            if members[best] == 0:
                empty.remove(best)
            sum_exit += exit_a_without - exit_[a] + best_exit - exit_[best]
            exit_[a], volume[a] = exit_a_without, vol_a_without
            exit_[best], volume[best] = best_exit, volume[best] + vol_a
            members[a] -= 1
            members[best] += 1
            if members[a] == 0:
                empty.append(a)
            module[node] = best
            moved += 1
        if not moved:
            break
        moved_any = True
    return module, moved_any


def _coarsen(
    base: _FlowGraph, assignment: list[int], total: float, rng: np.random.Generator
) -> list[int]:
    """Repeat node moves and module aggregation starting from ``assignment``."""
    assignment, k = _dense(assignment)
    flow = base if k == base.size else base.aggregate(assignment, k)
    while True:
        module, _ = _move_nodes(flow, list(range(flow.size)), total, rng)
        module, k = _dense(module)
        assignment = [module[a] for a in assignment]
        if k == flow.size:
            return assignment
        flow = flow.aggregate(module, k)


def _greedy_trial(graph: Graph, seed: np.random.SeedSequence) -> IntArray:
    rng = np.random.default_rng(seed)
    total = 2.0 * graph.m
    base = _FlowGraph.from_graph(graph)
    assignment = _coarsen(base, list(range(graph.n)), total, rng)
    for _ in range(MAX_REFINEMENTS):
        refined, moved = _move_nodes(base, assignment, total, rng)
        if not moved:
            break
        assignment = _coarsen(base, refined, total, rng)
    return Partition.from_labels(assignment).assignment


def restricted_growth_strings(n: int) -> Iterator[list[int]]:
    """Every set partition of ``n`` items as a canonical label list, in lexicographic order."""
    if n == 0:
        yield []
        return
    labels = [0] * n

    def extend(position: int, used: int) -> Iterator[list[int]]:
        if position == n:
            yield list(labels)
            return
        for label in range(used + 1):
            labels[position] = label
            yield from extend(position + 1, max(used, label + 1))

    yield from extend(1, 1)


def _exact_search(graph: Graph) -> Partition:
    best: Partition | None = None
    best_length = np.inf
    for labels in restricted_growth_strings(graph.n):
        candidate = Partition(labels)
        length = map_equation(graph, candidate)
        if length < best_length - CODELENGTH_TIE:
            best, best_length = candidate, length
    assert best is not None
    return best


def _better(
    length: float, assignment: IntArray, best_length: float, best: IntArray | None
) -> bool:
    if best is None or length < best_length - CODELENGTH_TIE:
        return True
    if length > best_length + CODELENGTH_TIE:
        return False
    return tuple(assignment.tolist()) < tuple(best.tolist())


def detect_communities_infomap(
    graph: Graph, seed: int = 0, trials: int = 10, workers: int = 1
) -> Partition:
    """Find the partition minimizing the two-level map equation.

    Graphs with at most :data:`EXACT_SEARCH_MAX_NODES` nodes are solved exactly.
    Larger graphs run ``trials`` greedy optimizations (node moves, aggregation and
    single-node refinement), each with its own shuffle stream spawned from
    ``seed``; the shortest codelength wins, ties going to the lexicographically
    smallest canonical assignment.

    Args:
        graph: Graph to partition
        seed: Root seed
        trials: Number of independent optimizations
        workers: Processes used to run trials in parallel

    Returns:
        Canonical partition
    """
    if trials < 1:
        raise InvalidParameterError("trials must be at least 1")
    if graph.m == 0:
        return Partition.singletons(graph.n)
    if graph.n <= EXACT_SEARCH_MAX_NODES:
        partition = _exact_search(graph)
        logger.info("Exact map equation search: %d communities", partition.k)
        return partition

    seeds = np.random.SeedSequence(seed).spawn(trials)
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_greedy_trial, [graph] * trials, seeds))
    else:
        results = [_greedy_trial(graph, s) for s in seeds]

    best: IntArray | None = None
    best_length = np.inf
    for trial, assignment in enumerate(results):
        length = map_equation(graph, Partition(assignment))
        logger.debug("Trial %d: L=%.6f bits, %d modules", trial, length, assignment.max() + 1)
        if _better(length, assignment, best_length, best):
            best, best_length = assignment, length
    assert best is not None
    partition = Partition(best)
    logger.info("Map equation: %d communities, L=%.6f bits", partition.k, best_length)
    return partition
