"""Partition I/O and partition-dependent statistics."""

import logging
from collections.abc import Iterable
from pathlib import Path

import numpy as np
from scipy import sparse

from commcent.analysis.graph_io import (
    DEFAULT_COMMENT_PREFIXES,
    data_lines,
    split_fields,
    utf8_lines,
)
from commcent.errors import InvalidParameterError, PartitionError
from commcent.models.graph import Graph
from commcent.models.partition import LinkDecomposition, Partition

logger = logging.getLogger(__name__)


def _check_sizes(graph: Graph, partition: Partition) -> None:
    if partition.n != graph.n:
        raise PartitionError(
            f"partition covers {partition.n} nodes but the graph has {graph.n}"
        )


def link_decomposition(graph: Graph, partition: Partition) -> LinkDecomposition:
    """Split every node's links into intra- and inter-community parts."""
    _check_sizes(graph, partition)
    assignment = partition.assignment
    src = np.concatenate([graph.edges[:, 0], graph.edges[:, 1]])
    dst = np.concatenate([graph.edges[:, 1], graph.edges[:, 0]])
    community_links = sparse.csr_matrix(
        (np.ones(len(src), dtype=np.int64), (src, assignment[dst])),
        shape=(graph.n, partition.k),
    )
    community_links.sum_duplicates()
    community_links.sort_indices()

    intra = np.bincount(src[assignment[src] == assignment[dst]], minlength=graph.n)
    k_tot = graph.degrees.astype(np.int64)
    k_intra = intra.astype(np.int64)
    return LinkDecomposition(
        k_intra=k_intra,
        k_inter=k_tot - k_intra,
        k_tot=k_tot,
        community_links=community_links,
    )


def _intra_mask(graph: Graph, partition: Partition) -> np.ndarray:
    assignment = partition.assignment
    return assignment[graph.edges[:, 0]] == assignment[graph.edges[:, 1]]


def modularity(graph: Graph, partition: Partition) -> float:
    """Newman-Girvan modularity: sum over communities of e_c/m - (d_c/2m)^2."""
    _check_sizes(graph, partition)
    m = graph.m
    if m == 0:
        raise InvalidParameterError("modularity needs at least one edge")
    assignment = partition.assignment
    intra = _intra_mask(graph, partition)
    e_c = np.bincount(assignment[graph.edges[intra, 0]], minlength=partition.k)
    d_c = np.bincount(assignment, weights=graph.degrees, minlength=partition.k)
    return float(np.sum(e_c / m - (d_c / (2.0 * m)) ** 2))


def mixing_parameter(graph: Graph, partition: Partition) -> float:
    """Fraction of edges whose endpoints lie in different communities."""
    _check_sizes(graph, partition)
    if graph.m == 0:
        raise InvalidParameterError("mixing parameter needs at least one edge")
    return float(np.count_nonzero(~_intra_mask(graph, partition)) / graph.m)


def load_partition(
    source: Iterable[str],
    graph: Graph,
    allow_extra: bool = False,
    delimiter: str | None = None,
    comment_prefixes: tuple[str, ...] = DEFAULT_COMMENT_PREFIXES,
) -> Partition:
    """Read a two-column ``node_label community_id`` assignment for ``graph``.

    Community ids that are exactly ``0..k-1`` integers are kept; any other labels are
    numbered by first appearance along the node ids.

    Args:
        source: Text lines
        graph: Graph whose node labels the file refers to
        allow_extra: Skip labels absent from the graph instead of failing (used when
            the graph is the largest component of the network the file describes)

    Raises:
        PartitionError: On unknown, duplicate or missing node labels, or malformed lines
    """
    community_of: list[str | None] = [None] * graph.n
    skipped = 0
    for line_number, line in data_lines(source, comment_prefixes):
        tokens = split_fields(line, delimiter)
        if len(tokens) < 2:
            raise PartitionError(f"line {line_number}: expected node label and community id")
        label, community = tokens[0], tokens[1]
        if not graph.has_label(label):
            if allow_extra:
                skipped += 1
                continue
            raise PartitionError(f"line {line_number}: unknown node {label!r}", label)
        node = graph.index_of(label)
        if community_of[node] is not None:
            raise PartitionError(f"line {line_number}: node {label!r} assigned twice", label)
        community_of[node] = community

    for node, community in enumerate(community_of):
        if community is None:
            label = graph.labels[node]
            raise PartitionError(f"node {label!r} has no community assignment", label)

    labels = [c for c in community_of if c is not None]
    if skipped:
        logger.info("Ignored %d partition entries outside the graph", skipped)
    try:
        ids = [int(c) for c in labels]
    except ValueError:
        return Partition.from_labels(labels)
    if sorted(set(ids)) == list(range(len(set(ids)))):
        return Partition(ids)
    return Partition.from_labels(ids)


def _encoding_error(message: str, line_number: int) -> PartitionError:
    return PartitionError(f"line {line_number}: {message}")


def read_partition(path: Path, graph: Graph, allow_extra: bool = False) -> Partition:
    try:
        with open(path, "rb") as f:
            lines = utf8_lines(f, _encoding_error)
            return load_partition(lines, graph, allow_extra=allow_extra)
    except OSError as exc:
        raise PartitionError(f"cannot read {path}: {exc.strerror}") from exc


def format_partition(graph: Graph, partition: Partition) -> str:
    """Two-column text form of ``partition``, one ``label<TAB>community`` per node."""
    _check_sizes(graph, partition)
    lines = ["# node_label\tcommunity_id"]
    lines.extend(
        f"{label}\t{community}"
        for label, community in zip(graph.labels, partition.assignment.tolist())
    )
    return "\n".join(lines) + "\n"


def save_partition(path: Path, graph: Graph, partition: Partition) -> None:
    with open(path, "w", encoding="utf-8") as f:
        f.write(format_partition(graph, partition))
