"""Graph representation and ingestion bookkeeping."""

from collections.abc import Sequence

import numpy as np
import numpy.typing as npt
from pydantic import BaseModel, Field
from scipy import sparse
from scipy.sparse import csgraph

from commcent.errors import GraphError

IntArray = npt.NDArray[np.int64]
FloatArray = npt.NDArray[np.float64]


def _readonly(array: npt.NDArray[np.generic]) -> npt.NDArray[np.generic]:
    array.flags.writeable = False
    return array


class Graph:
    """Immutable undirected simple graph over dense node ids ``0..n-1``.

    Edges are stored once as ``(u, v)`` with ``u < v``; the adjacency is kept in CSR
    form with sorted neighbor lists. Every array handed out is read-only, so a graph
    can be shared between threads and pickled into worker processes.
    """

    def __init__(
        self,
        n: int,
        edges: npt.ArrayLike,
        labels: Sequence[str] | None = None,
    ) -> None:
        if n < 0:
            raise GraphError(f"node count must be non-negative, got {n}")
        pairs = np.asarray(edges, dtype=np.int64).reshape(-1, 2)
        if pairs.size and (pairs.min() < 0 or pairs.max() >= n):
            raise GraphError(f"edge endpoint outside 0..{n - 1}")
        if np.any(pairs[:, 0] == pairs[:, 1]):
            raise GraphError("self-loops are not allowed")

        pairs = np.sort(pairs, axis=1)
        order = np.lexsort((pairs[:, 1], pairs[:, 0]))
        pairs = pairs[order]
        if len(pairs) > 1 and np.any(np.all(pairs[1:] == pairs[:-1], axis=1)):
            raise GraphError("duplicate edges are not allowed")

        if labels is None:
            labels = [str(i) for i in range(n)]
        if len(labels) != n:
            raise GraphError(f"expected {n} labels, got {len(labels)}")

        rows = np.concatenate([pairs[:, 0], pairs[:, 1]])
        cols = np.concatenate([pairs[:, 1], pairs[:, 0]])
        adjacency = sparse.csr_matrix(
            (np.ones(len(rows), dtype=np.float64), (rows, cols)), shape=(n, n)
        )
        adjacency.sort_indices()

        self._n = n
        self._labels = tuple(labels)
        self._edges = _readonly(pairs)
        self._adjacency = adjacency
        self._indptr = _readonly(adjacency.indptr.astype(np.int64))
        self._indices = _readonly(adjacency.indices.astype(np.int64))
        self._degrees = _readonly(np.diff(self._indptr))
        self._label_index: dict[str, int] | None = None

    @property
    def n(self) -> int:
        return self._n

    @property
    def m(self) -> int:
        return len(self._edges)

    @property
    def edges(self) -> IntArray:
        """Edge array of shape ``(m, 2)``, each row ``u < v``, lexicographically sorted."""
        return self._edges

    @property
    def labels(self) -> tuple[str, ...]:
        return self._labels

    @property
    def degrees(self) -> IntArray:
        return self._degrees

    @property
    def indptr(self) -> IntArray:
        return self._indptr

    @property
    def indices(self) -> IntArray:
        return self._indices

    def adjacency(self) -> sparse.csr_matrix:
        """Return a copy of the symmetric 0/1 adjacency matrix."""
        return self._adjacency.copy()

    def neighbors(self, node: int) -> IntArray:
        return self._indices[self._indptr[node] : self._indptr[node + 1]]

    def index_of(self, label: str) -> int:
        if self._label_index is None:
            self._label_index = {label: i for i, label in enumerate(self._labels)}
        return self._label_index[label]

    def has_label(self, label: str) -> bool:
        try:
            self.index_of(label)
        except KeyError:
            return False
        return True

    def component_labels(self) -> tuple[int, IntArray]:
        count, labels = csgraph.connected_components(self._adjacency, directed=False)
        return int(count), labels.astype(np.int64)

    def is_connected(self) -> bool:
        return self._n <= 1 or self.component_labels()[0] == 1

    def subgraph(self, nodes: npt.ArrayLike) -> "Graph":
        """Induced subgraph on ``nodes``; new ids follow ascending old ids."""
        keep = np.unique(np.asarray(nodes, dtype=np.int64))
        remap = np.full(self._n, -1, dtype=np.int64)
        remap[keep] = np.arange(len(keep))
        mask = (remap[self._edges[:, 0]] >= 0) & (remap[self._edges[:, 1]] >= 0)
        return Graph(
            len(keep),
            remap[self._edges[mask]],
            [self._labels[i] for i in keep],
        )

    def relabel(self, permutation: npt.ArrayLike) -> "Graph":
        """Graph isomorphic to this one where old node ``i`` becomes ``permutation[i]``."""
        perm = np.asarray(permutation, dtype=np.int64)
        if sorted(perm.tolist()) != list(range(self._n)):
            raise GraphError("relabel expects a permutation of 0..n-1")
        labels = [""] * self._n
        for old, new in enumerate(perm.tolist()):
            labels[new] = self._labels[old]
        return Graph(self._n, perm[self._edges], labels)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return (
            self._n == other._n
            and self._labels == other._labels
            and np.array_equal(self._edges, other._edges)
        )

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"Graph(n={self._n}, m={self.m})"


class IngestionReport(BaseModel):
    """What happened while reading an edge list."""

    data_lines: int = Field(..., description="Non-comment, non-blank lines read")
    duplicate_edges: int = Field(0, description="Repeated edges dropped")
    self_loops: int = Field(0, description="Self-loops dropped")
    extra_columns_lines: int = Field(
        0, description="Lines whose tokens beyond the first two were ignored"
    )
    nodes: int = Field(..., description="Distinct node labels")
    edges: int = Field(..., description="Edges kept")


class ComponentReport(BaseModel):
    """Largest connected component extraction summary."""

    components: int = Field(..., description="Connected components in the input graph")
    nodes_kept: int = Field(..., description="Nodes in the largest component")
    nodes_dropped: int = Field(..., description="Nodes outside the largest component")
    edges_dropped: int = Field(..., description="Edges outside the largest component")
