"""Tests for the community-aware centrality measures."""

import math

import numpy as np
import pytest

from commcent.analysis.classical import betweenness_centrality, classical_centralities
from commcent.analysis.community_aware import (
    CbmWeighting,
    CommunityCentralityInputs,
    bridging_centrality,
    bridging_coefficient,
    community_based_mediator,
    community_centralities,
    community_hub_bridge,
    nnc,
    participation_coefficient,
)
from commcent.analysis.ranking import compare_measures
from commcent.errors import InvalidParameterError
from commcent.models.graph import Graph
from commcent.models.partition import Partition
from commcent.models.scores import MeasureId
from tests.conftest import random_connected, star


def inputs_for(graph: Graph, partition: Partition) -> CommunityCentralityInputs:
    return CommunityCentralityInputs.build(graph, partition, betweenness_centrality(graph))


@pytest.fixture
def barbell_inputs(barbell, barbell_partition):
    return inputs_for(barbell, barbell_partition)


def test_nnc_counts_external_communities(barbell_inputs):
    assert nnc(barbell_inputs).values == [0, 0, 1, 1, 0, 0]


def test_community_hub_bridge_on_barbell(barbell_inputs):
    """Test bridge endpoints score 3*2 + 1*1 = 7 and the other nodes 3*2 = 6."""
    assert community_hub_bridge(barbell_inputs).values == pytest.approx([6, 6, 7, 7, 6, 6])


def test_participation_coefficient_on_barbell(barbell_inputs):
    """Test bridge endpoints split 2:1 score 1 - (4/9 + 1/9)."""
    values = participation_coefficient(barbell_inputs).values

    assert values == pytest.approx([0, 0, 4 / 9, 4 / 9, 0, 0], abs=1e-12)


def test_cbm_link_fraction_on_barbell(barbell_inputs):
    entropy = -(2 / 3 * math.log2(2 / 3) + 1 / 3 * math.log2(1 / 3))

    values = community_based_mediator(barbell_inputs).values

    assert values == pytest.approx([0, 0, entropy * 3 / 14, entropy * 3 / 14, 0, 0], abs=1e-12)


def test_cbm_community_density_weighting(barbell_inputs):
    """Test own-community links are spread over |c| - 1 partners before normalizing."""
    # c: 2 links over 2 partners (1.0), 1 link into a 3-node community (1/3).
    entropy = -(0.75 * math.log2(0.75) + 0.25 * math.log2(0.25))

    scores = community_based_mediator(barbell_inputs, CbmWeighting.COMMUNITY_DENSITY)

    assert scores.values[2] == pytest.approx(entropy * 3 / 14, abs=1e-12)
    assert scores.parameters["weighting"] == "community-density"


def test_cbm_hand_computed_node():
    """Test a node with 2 intra and 2 inter links in a graph of total degree 20."""
    edges = [(0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (3, 4), (1, 5), (2, 5), (3, 6), (4, 6)]
    graph = Graph(7, edges)
    partition = Partition([0, 0, 0, 1, 1, 0, 1])

    scores = community_based_mediator(inputs_for(graph, partition))

    assert graph.degrees.sum() == 20
    assert scores.values[0] == pytest.approx(0.2, abs=1e-12)


def test_cbm_log_base_preserves_ranking():
    graph = random_connected(40, 0.12, 3)
    inputs = inputs_for(graph, Partition(np.arange(graph.n) % 3))

    bits = community_based_mediator(inputs, log_base=2.0).as_array()
    nats = community_based_mediator(inputs, log_base=math.e).as_array()

    np.testing.assert_allclose(nats, bits * math.log(2.0), atol=1e-12)


def test_cbm_rejects_bad_log_base(barbell_inputs):
    with pytest.raises(InvalidParameterError):
        community_based_mediator(barbell_inputs, log_base=1.0)


def test_bridging_centrality_of_star():
    """Test the star center: betweenness 6 times (1/4) / (4 * 1) gives 0.375."""
    graph = star(5)

    scores = bridging_centrality(inputs_for(graph, Partition.single(5)))

    assert bridging_coefficient(graph)[0] == pytest.approx(1 / 16)
    assert scores.values == pytest.approx([0.375, 0, 0, 0, 0], abs=1e-12)


def test_single_community_degenerates(barbell):
    """Test NNC, PC and CBM are all zero when there is one community."""
    scores = community_centralities(inputs_for(barbell, Partition.single(6)))

    for measure in (
        MeasureId.NEIGHBORING_COMMUNITIES,
        MeasureId.PARTICIPATION_COEFFICIENT,
        MeasureId.COMMUNITY_BASED_MEDIATOR,
    ):
        assert scores[measure].values == [0.0] * 6
    assert scores[MeasureId.COMMUNITY_HUB_BRIDGE].values == pytest.approx(
        [12, 12, 18, 18, 12, 12]
    )


def test_scores_carry_partition_fingerprint(barbell_inputs, barbell_partition):
    scores = community_centralities(barbell_inputs)

    assert list(scores) == [
        MeasureId.BRIDGING,
        MeasureId.COMMUNITY_HUB_BRIDGE,
        MeasureId.PARTICIPATION_COEFFICIENT,
        MeasureId.COMMUNITY_BASED_MEDIATOR,
        MeasureId.NEIGHBORING_COMMUNITIES,
    ]
    assert scores[MeasureId.NEIGHBORING_COMMUNITIES].parameters["partition"] == (
        barbell_partition.fingerprint()
    )


def test_participation_coefficient_bounds():
    graph = random_connected(60, 0.1, 2)
    inputs = inputs_for(graph, Partition(np.arange(graph.n) % 5))

    values = participation_coefficient(inputs).as_array()

    assert np.all((values >= 0) & (values <= 1))


def test_inputs_reject_mismatched_betweenness(barbell, barbell_partition):
    with pytest.raises(InvalidParameterError):
        CommunityCentralityInputs.build(
            barbell, barbell_partition, betweenness_centrality(star(3))
        )


def test_nnc_of_singletons_is_degree():
    graph = random_connected(30, 0.2, seed=4)

    scores = nnc(inputs_for(graph, Partition.singletons(graph.n)))

    assert scores.values == graph.degrees.astype(float).tolist()


@pytest.mark.parametrize("seed", range(40))
def test_community_renumbering_leaves_scores_and_matrices_unchanged(seed):
    """Test permuting community ids changes no score and no matrix cell, bit for bit."""
    rng = np.random.default_rng(seed)
    graph = random_connected(60, 0.1, seed=seed)
    k = int(rng.integers(2, 8))
    assignment = np.concatenate([np.arange(k), rng.integers(0, k, graph.n - k)])
    rng.shuffle(assignment)
    permutation = rng.permutation(k)
    original = Partition(assignment)
    renumbered = Partition(permutation[assignment])

    classical = classical_centralities(graph)
    aware = community_centralities(inputs_for(graph, original))
    aware_renumbered = community_centralities(inputs_for(graph, renumbered))

    for measure in aware:
        assert aware[measure].values == aware_renumbered[measure].values
    for statistic in ("tau_b", "rbo"):
        assert compare_measures(classical, aware, statistic) == compare_measures(
            classical, aware_renumbered, statistic
        )


@pytest.mark.parametrize("weighting", list(CbmWeighting))
def test_cbm_renumbering_invariant_for_both_weightings(weighting):
    graph = random_connected(50, 0.15, seed=21)
    assignment = np.arange(graph.n) % 5
    original = Partition(assignment)
    renumbered = Partition((assignment * 3 + 1) % 5)

    first = community_based_mediator(inputs_for(graph, original), weighting)
    second = community_based_mediator(inputs_for(graph, renumbered), weighting)

    assert first.values == second.values
