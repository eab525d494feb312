"""Edge-list ingestion and largest-connected-component extraction."""

import logging
import re
from collections.abc import Callable, Iterable, Iterator
from pathlib import Path

import numpy as np

from commcent.errors import DataError, IngestionError
from commcent.models.graph import ComponentReport, Graph, IngestionReport, IntArray

logger = logging.getLogger(__name__)

DEFAULT_COMMENT_PREFIXES = ("#", "%")
_DEFAULT_SPLIT = re.compile(r"[,\s]+")


def split_fields(line: str, delimiter: str | None) -> list[str]:
    """Split a data line on ``delimiter``, or on commas and whitespace when it is None."""
    stripped = line.strip()
    if delimiter is None:
        return [token for token in _DEFAULT_SPLIT.split(stripped) if token]
    return [token.strip() for token in stripped.split(delimiter)]


def utf8_lines(
    raw: Iterable[bytes], error: Callable[[str, int], DataError]
) -> Iterator[str]:
    """Decode byte lines as UTF-8, raising ``error(message, line_number)`` on bad bytes."""
    for line_number, data in enumerate(raw, start=1):
        try:
            yield data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise error(f"invalid UTF-8 at byte {exc.start} ({exc.reason})", line_number) from exc


def data_lines(
    lines: Iterable[str], comment_prefixes: tuple[str, ...] = DEFAULT_COMMENT_PREFIXES
) -> Iterable[tuple[int, str]]:
    """Yield ``(line_number, line)`` for lines that are neither blank nor comments."""
    for line_number, line in enumerate(lines, start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith(comment_prefixes):
            continue
        yield line_number, stripped


def ingest_edge_list(
    source: Iterable[str],
    delimiter: str | None = None,
    comment_prefixes: tuple[str, ...] = DEFAULT_COMMENT_PREFIXES,
) -> tuple[Graph, IngestionReport]:
    """Read an undirected edge list into a :class:`Graph`.

    Labels are remapped to dense ids in order of first appearance. Duplicate edges
    (in either orientation) and self-loops are dropped and counted. Tokens after the
    first two on a line are ignored.

    Args:
        source: Text lines, e.g. an open file
        delimiter: Field separator; None splits on commas and whitespace
        comment_prefixes: Lines starting with one of these are skipped

    Returns:
        Tuple of (graph, ingestion report)

    Raises:
        IngestionError: On a line with fewer than two fields, or when no edges are read
    """
    ids: dict[str, int] = {}
    seen: set[tuple[int, int]] = set()
    edges: list[tuple[int, int]] = []
    n_lines = duplicates = loops = extra = 0

    for line_number, line in data_lines(source, comment_prefixes):
        n_lines += 1
        tokens = split_fields(line, delimiter)
        if len(tokens) < 2 or not tokens[0] or not tokens[1]:
            raise IngestionError(f"expected two node labels, got {line!r}", line_number)
        if len(tokens) > 2:
            extra += 1
        u = ids.setdefault(tokens[0], len(ids))
        v = ids.setdefault(tokens[1], len(ids))
        if u == v:
            loops += 1
            continue
        key = (u, v) if u < v else (v, u)
        if key in seen:
            duplicates += 1
            continue
        seen.add(key)
        edges.append(key)

    if n_lines == 0:
        raise IngestionError("edge list is empty")

    labels = [""] * len(ids)
    for label, index in ids.items():
        labels[index] = label
    graph = Graph(len(ids), np.array(edges, dtype=np.int64).reshape(-1, 2), labels)
    report = IngestionReport(
        data_lines=n_lines,
        duplicate_edges=duplicates,
        self_loops=loops,
        extra_columns_lines=extra,
        nodes=graph.n,
        edges=graph.m,
    )
    logger.info(
        "Ingested %d nodes, %d edges (%d duplicates, %d self-loops dropped)",
        graph.n,
        graph.m,
        duplicates,
        loops,
    )
    return graph, report


def read_edge_list(
    path: Path,
    delimiter: str | None = None,
    comment_prefixes: tuple[str, ...] = DEFAULT_COMMENT_PREFIXES,
) -> tuple[Graph, IngestionReport]:
    """Read an edge list file; see :func:`ingest_edge_list`."""
    try:
        with open(path, "rb") as f:
            lines = utf8_lines(f, IngestionError)
            return ingest_edge_list(lines, delimiter, comment_prefixes)
    except OSError as exc:
        raise IngestionError(f"cannot read {path}: {exc.strerror}") from exc


def largest_connected_component(graph: Graph) -> tuple[Graph, IntArray, ComponentReport]:
    """Extract the largest connected component.

    Ties between equally large components go to the one containing the smallest
    node id. A connected graph is returned unchanged with the identity remap.

    Returns:
        Tuple of (component graph, original id of each component node, report)
    """
    if graph.n == 0:
        raise IngestionError("graph has no nodes")

    count, labels = graph.component_labels()
    if count == 1:
        report = ComponentReport(components=1, nodes_kept=graph.n, nodes_dropped=0, edges_dropped=0)
        return graph, np.arange(graph.n, dtype=np.int64), report

    sizes = np.bincount(labels, minlength=count)
    smallest_member = np.full(count, graph.n, dtype=np.int64)
    np.minimum.at(smallest_member, labels, np.arange(graph.n, dtype=np.int64))
    best = min(range(count), key=lambda c: (-int(sizes[c]), int(smallest_member[c])))

    nodes = np.flatnonzero(labels == best).astype(np.int64)
    component = graph.subgraph(nodes)
    report = ComponentReport(
        components=count,
        nodes_kept=component.n,
        nodes_dropped=graph.n - component.n,
        edges_dropped=graph.m - component.m,
    )
    logger.info(
        "Largest of %d components keeps %d/%d nodes", count, component.n, graph.n
    )
    return component, nodes, report
