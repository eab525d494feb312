"""Community partitions and the intra/inter link decomposition."""

import hashlib
from collections.abc import Hashable, Sequence
from dataclasses import dataclass

import numpy as np
import numpy.typing as npt
from scipy import sparse

from commcent.errors import PartitionError
from commcent.models.graph import IntArray


class Partition:
    """Assignment of every node to exactly one community.

    Community ids are dense (``0..k-1``) and no community is empty. The ids given
    to the constructor are kept as-is; :meth:`canonical` renumbers them in order of
    first appearance along the node ids.
    """

    def __init__(self, assignment: npt.ArrayLike) -> None:
        labels = np.asarray(assignment, dtype=np.int64).ravel()
        if labels.size and labels.min() < 0:
            raise PartitionError("community ids must be non-negative")
        k = int(labels.max()) + 1 if labels.size else 0
        sizes = np.bincount(labels, minlength=k)
        if np.any(sizes == 0):
            missing = int(np.flatnonzero(sizes == 0)[0])
            raise PartitionError(f"community ids must be dense; community {missing} is empty")
        labels.flags.writeable = False
        sizes.flags.writeable = False
        self._assignment = labels
        self._sizes = sizes

    @classmethod
    def from_labels(cls, labels: Sequence[Hashable]) -> "Partition":
        """Build a partition from arbitrary community labels, numbered by first appearance."""
        ids: dict[Hashable, int] = {}
        return cls([ids.setdefault(label, len(ids)) for label in labels])

    @classmethod
    def single(cls, n: int) -> "Partition":
        return cls(np.zeros(n, dtype=np.int64))

    @classmethod
    def singletons(cls, n: int) -> "Partition":
        return cls(np.arange(n, dtype=np.int64))

    @property
    def n(self) -> int:
        return len(self._assignment)

    @property
    def k(self) -> int:
        return len(self._sizes)

    @property
    def assignment(self) -> IntArray:
        return self._assignment

    @property
    def sizes(self) -> IntArray:
        return self._sizes

    def communities(self) -> list[IntArray]:
        """Members of each community, ascending node ids."""
        order = np.argsort(self._assignment, kind="stable")
        bounds = np.cumsum(self._sizes)[:-1]
        return list(np.split(order, bounds)) if self.n else []

    def canonical(self) -> "Partition":
        return Partition.from_labels(self._assignment.tolist())

    def fingerprint(self) -> str:
        """Stable hash of the canonical assignment, independent of community numbering."""
        canonical = self.canonical().assignment.astype("<i8")
        return hashlib.sha256(canonical.tobytes()).hexdigest()[:16]

    def restrict(self, nodes: npt.ArrayLike) -> "Partition":
        """Partition of the induced node subset, renumbered densely."""
        keep = np.asarray(nodes, dtype=np.int64)
        return Partition.from_labels(self._assignment[keep].tolist())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Partition):
            return NotImplemented
        return np.array_equal(self._assignment, other._assignment)

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"Partition(n={self.n}, k={self.k})"


@dataclass(frozen=True)
class LinkDecomposition:
    """Per-node split of links into intra-community (G_l) and inter-community (G_g) parts.

    ``community_links[i, c]`` is the number of links node ``i`` has into community ``c``.
    """

    k_intra: IntArray
    k_inter: IntArray
    k_tot: IntArray
    community_links: sparse.csr_matrix

    def links_to(self, node: int) -> dict[int, int]:
        row = self.community_links.getrow(node)
        return {int(c): int(v) for c, v in zip(row.indices, row.data)}
