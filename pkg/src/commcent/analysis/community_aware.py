"""Community-aware centrality measures."""

import logging
from dataclasses import dataclass
from enum import Enum

import numpy as np

from commcent.analysis.community import link_decomposition
from commcent.errors import InvalidParameterError
from commcent.models.graph import FloatArray, Graph, IntArray
from commcent.models.partition import LinkDecomposition, Partition
from commcent.models.scores import MeasureId, ScoreVector

logger = logging.getLogger(__name__)


class CbmWeighting(str, Enum):
    """How the Community-based Mediator turns a node's links into a distribution."""

    LINK_FRACTION = "link-fraction"
    COMMUNITY_DENSITY = "community-density"


@dataclass(frozen=True)
class CommunityCentralityInputs:
    graph: Graph
    partition: Partition
    decomposition: LinkDecomposition
    betweenness: ScoreVector

    @classmethod
    def build(
        cls, graph: Graph, partition: Partition, betweenness: ScoreVector
    ) -> "CommunityCentralityInputs":
        if len(betweenness) != graph.n:
            raise InvalidParameterError("betweenness vector length differs from node count")
        return cls(graph, partition, link_decomposition(graph, partition), betweenness)

    @property
    def own_community_size(self) -> FloatArray:
        return self.partition.sizes[self.partition.assignment].astype(np.float64)

    def metadata(self) -> dict[str, str | int]:
        return {
            "partition": self.partition.fingerprint(),
            "communities": self.partition.k,
        }


def _neighboring_communities(inputs: CommunityCentralityInputs) -> FloatArray:
    links = inputs.decomposition.community_links
    reached = np.diff(links.indptr).astype(np.float64)
    return reached - (inputs.decomposition.k_intra > 0)


def nnc(inputs: CommunityCentralityInputs) -> ScoreVector:
    """Number of distinct external communities holding at least one neighbor."""
    return ScoreVector.from_array(
        MeasureId.NEIGHBORING_COMMUNITIES, _neighboring_communities(inputs), inputs.metadata()
    )


def community_hub_bridge(inputs: CommunityCentralityInputs) -> ScoreVector:
    """Hub part |c_k| * k_intra plus bridge part NNC * k_inter."""
    d = inputs.decomposition
    values = inputs.own_community_size * d.k_intra + _neighboring_communities(inputs) * d.k_inter
    return ScoreVector.from_array(MeasureId.COMMUNITY_HUB_BRIDGE, values, inputs.metadata())


def participation_coefficient(inputs: CommunityCentralityInputs) -> ScoreVector:
    """One minus the sum over communities of the squared share of the node's links."""
    d = inputs.decomposition
    squares = np.asarray(d.community_links.multiply(d.community_links).sum(axis=1)).ravel()
    k = d.k_tot.astype(np.float64)
    safe = np.where(k > 0, k, 1.0)
    values = np.where(k > 0, 1.0 - squares / (safe * safe), 0.0)
    return ScoreVector.from_array(
        MeasureId.PARTICIPATION_COEFFICIENT, np.clip(values, 0.0, 1.0), inputs.metadata()
    )


def _row_starts(rows: IntArray) -> IntArray:
    """Index of the first entry of each run of equal ``rows``."""
    return np.flatnonzero(np.r_[True, rows[1:] != rows[:-1]])


def _link_distribution(
    inputs: CommunityCentralityInputs, weighting: CbmWeighting
) -> tuple[IntArray, FloatArray]:
    """Per-entry (row, probability) pairs of each node's community distribution.

    Entries are ordered by row and, inside a row, by ascending weight, so every
    per-row reduction sees the same sequence whatever the community numbering.
    """
    links = inputs.decomposition.community_links.tocoo()
    rows, cols = links.row.astype(np.int64), links.col
    weights = links.data.astype(np.float64)
    if weighting is CbmWeighting.COMMUNITY_DENSITY:
        sizes = inputs.partition.sizes.astype(np.float64)
        partners = sizes[cols] - (inputs.partition.assignment[rows] == cols)
        weights = weights / np.maximum(partners, 1.0)
    order = np.lexsort((weights, rows))
    rows, weights = rows[order], weights[order]
    if not rows.size:
        return rows, weights
    starts = _row_starts(rows)
    row_totals = np.zeros(inputs.graph.n)
    row_totals[rows[starts]] = np.add.reduceat(weights, starts)
    return rows, weights / row_totals[rows]


def community_based_mediator(
    inputs: CommunityCentralityInputs,
    weighting: CbmWeighting = CbmWeighting.LINK_FRACTION,
    log_base: float = 2.0,
) -> ScoreVector:
    """Entropy of the node's link distribution over communities, scaled by k_i / sum k.

    With link-fraction weighting the distribution is k_{i,c} / k_i over every
    community c the node links into, its own included. Community-density weighting
    uses k_{i,c} / |c| instead (own community: |c| - 1 partners), renormalized.
    """
    if log_base <= 0 or log_base == 1:
        raise InvalidParameterError("log base must be positive and different from 1")
    rows, probabilities = _link_distribution(inputs, weighting)
    contributions = -probabilities * np.log(probabilities) / np.log(log_base)
    entropy = np.zeros(inputs.graph.n)
    if rows.size:
        starts = _row_starts(rows)
        entropy[rows[starts]] = np.add.reduceat(contributions, starts)
    k = inputs.decomposition.k_tot.astype(np.float64)
    total = k.sum()
    values = entropy * k / total if total > 0 else np.zeros(inputs.graph.n)
    metadata: dict[str, str | int | float] = dict(inputs.metadata())
    metadata.update({"weighting": weighting.value, "log_base": log_base})
    return ScoreVector.from_array(
        MeasureId.COMMUNITY_BASED_MEDIATOR, np.maximum(values, 0.0) + 0.0, metadata
    )


def bridging_coefficient(graph: Graph) -> FloatArray:
    """Inverse degree over the sum of the neighbors' inverse degrees."""
    degrees = graph.degrees.astype(np.float64)
    inverse = np.where(degrees > 0, 1.0 / np.where(degrees > 0, degrees, 1.0), 0.0)
    neighbor_sum = graph.adjacency() @ inverse
    coefficient: FloatArray = np.where(
        neighbor_sum > 0, inverse / np.where(neighbor_sum > 0, neighbor_sum, 1.0), 0.0
    )
    return coefficient


def bridging_centrality(inputs: CommunityCentralityInputs) -> ScoreVector:
    """Betweenness times the bridging coefficient."""
    values = inputs.betweenness.as_array() * bridging_coefficient(inputs.graph)
    return ScoreVector.from_array(MeasureId.BRIDGING, values, {"betweenness": "unnormalized"})


def community_centralities(
    inputs: CommunityCentralityInputs,
    cbm_weighting: CbmWeighting = CbmWeighting.LINK_FRACTION,
    cbm_log_base: float = 2.0,
) -> dict[MeasureId, ScoreVector]:
    """All five community-aware measures, keyed by measure id in heatmap column order."""
    logger.debug(
        "Community-aware measures over %d communities (CBM %s, log base %g)",
        inputs.partition.k,
        cbm_weighting.value,
        cbm_log_base,
    )
    return {
        MeasureId.BRIDGING: bridging_centrality(inputs),
        MeasureId.COMMUNITY_HUB_BRIDGE: community_hub_bridge(inputs),
        MeasureId.PARTICIPATION_COEFFICIENT: participation_coefficient(inputs),
        MeasureId.COMMUNITY_BASED_MEDIATOR: community_based_mediator(
            inputs, cbm_weighting, cbm_log_base
        ),
        MeasureId.NEIGHBORING_COMMUNITIES: nnc(inputs),
    }
