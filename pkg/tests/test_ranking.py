"""Tests for rankings, Kendall tau-b and Rank-Biased Overlap."""

import numpy as np
import pytest

from commcent.analysis.ranking import (
    TiePolicy,
    compare_measures,
    kendall_tau_b,
    rbo,
    to_rank_list,
)
from commcent.errors import InvalidParameterError
from commcent.models.scores import (
    CLASSICAL_MEASURES,
    COMMUNITY_MEASURES,
    MeasureId,
    RankList,
    ScoreVector,
)


def pairwise_tau_b(x: np.ndarray, y: np.ndarray) -> float | None:
    """O(n^2) pair classification."""
    i, j = np.triu_indices(len(x), k=1)
    sx = np.sign(x[i] - x[j])
    sy = np.sign(y[i] - y[j])
    untied_x = np.count_nonzero(sx)
    untied_y = np.count_nonzero(sy)
    if untied_x == 0 or untied_y == 0:
        return None
    return float(np.sum(sx * sy) / np.sqrt(float(untied_x) * float(untied_y)))


def naive_rbo(a: list[int], b: list[int], p: float, extrapolated: bool = True) -> float:
    n = len(a)
    total = 0.0
    agreement = 0.0
    for depth in range(1, n + 1):
        agreement = len(set(a[:depth]) & set(b[:depth])) / depth
        total += (1 - p) * p ** (depth - 1) * agreement
    if extrapolated:
        total += p**n * agreement
    return total


def ranking(order: list[int]) -> RankList:
    return RankList(order=order, group_sizes=[1] * len(order))


def test_to_rank_list_orders_descending_with_id_tie_break():
    ranks = to_rank_list([0.5, 2.0, 0.5, 1.0])

    assert ranks.order == [1, 3, 0, 2]
    assert ranks.group_sizes == [1, 1, 2]
    assert ranks.tie_groups() == [[1], [3], [0, 2]]


def test_tie_epsilon_fuses_close_scores():
    ranks = to_rank_list([1.0, 1.0 + 1e-9, 0.5], tie_epsilon=1e-6)

    assert ranks.order == [0, 1, 2]
    assert ranks.group_sizes == [2, 1]


def test_random_tie_policy_is_seeded():
    """Test random tie expansion permutes only inside groups and is reproducible."""
    scores = [1.0] * 6 + [0.0] * 4

    first = to_rank_list(scores, tie_policy=TiePolicy.RANDOM, rng=np.random.default_rng(5))
    second = to_rank_list(scores, tie_policy=TiePolicy.RANDOM, rng=np.random.default_rng(5))

    assert first.order == second.order
    assert sorted(first.order[:6]) == list(range(6))
    assert sorted(first.order[6:]) == list(range(6, 10))


def test_to_rank_list_keeps_measure():
    vector = ScoreVector(measure=MeasureId.DEGREE, values=[1.0, 3.0, 2.0])

    assert to_rank_list(vector).measure is MeasureId.DEGREE


def test_to_rank_list_rejects_negative_epsilon():
    with pytest.raises(InvalidParameterError):
        to_rank_list([1.0, 2.0], tie_epsilon=-1.0)


def test_tau_b_extremes():
    assert kendall_tau_b([1, 2, 3, 4], [10, 20, 30, 40]) == pytest.approx(1.0)
    assert kendall_tau_b([1, 2, 3, 4], [4, 3, 2, 1]) == pytest.approx(-1.0)


def test_tau_b_fully_tied_vector_is_undefined():
    assert kendall_tau_b([1, 2, 3], [0, 0, 0]) is None


def test_tau_b_rejects_short_or_mismatched_input():
    with pytest.raises(InvalidParameterError):
        kendall_tau_b([1.0], [2.0])
    with pytest.raises(InvalidParameterError):
        kendall_tau_b([1, 2, 3], [1, 2])


def test_tau_b_matches_pairwise_oracle():
    """Test 500 random vector pairs with injected ties against pair classification."""
    rng = np.random.default_rng(2024)
    for _ in range(500):
        n = int(rng.integers(2, 201))
        levels = int(rng.integers(2, 12))
        x = rng.integers(0, levels, n).astype(float)
        y = np.where(rng.random(n) < 0.5, x, rng.integers(0, levels, n)).astype(float)

        expected = pairwise_tau_b(x, y)
        actual = kendall_tau_b(x, y)

        if expected is None:
            assert actual is None
        else:
            assert actual == pytest.approx(expected, abs=1e-12)


def test_rbo_of_reversed_pair():
    """Test N=2 reversed with p=0.9: 0.1 * (0 + 0.9) + 0.81 = 0.9."""
    assert rbo(ranking([0, 1]), ranking([1, 0]), p=0.9) == pytest.approx(0.9, abs=1e-12)


def test_rbo_of_identical_lists():
    ranks = ranking([3, 1, 0, 2])

    assert rbo(ranks, ranks) == 1.0
    assert rbo(ranks, ranks, p=0.8, extrapolated=False) == pytest.approx(1 - 0.8**4)


def test_rbo_matches_naive_summation():
    """Test 200 random list pairs against per-depth set intersections."""
    rng = np.random.default_rng(77)
    for _ in range(200):
        n = int(rng.integers(1, 101))
        p = float(rng.uniform(0.05, 0.99))
        a = rng.permutation(n).tolist()
        b = rng.permutation(n).tolist()
        extrapolated = bool(rng.integers(2))

        expected = naive_rbo(a, b, p, extrapolated)

        assert rbo(ranking(a), ranking(b), p, extrapolated) == pytest.approx(expected, abs=1e-12)
        assert rbo(ranking(a), ranking(a), p) == 1.0


def test_rbo_rejects_bad_persistence():
    with pytest.raises(InvalidParameterError):
        rbo(ranking([0, 1]), ranking([1, 0]), p=1.0)


def test_rbo_rejects_different_lengths():
    with pytest.raises(InvalidParameterError):
        rbo(ranking([0, 1]), ranking([0, 1, 2]))


def vectors(measures, rng, n=30):
    return {m: ScoreVector.from_array(m, rng.random(n)) for m in measures}


def test_compare_measures_shapes_and_order(rng):
    classical = vectors(CLASSICAL_MEASURES, rng)
    community = vectors(COMMUNITY_MEASURES, rng)

    tau = compare_measures(classical, community, "tau_b")
    overlap = compare_measures(classical, community, "rbo", rbo_p=0.8)

    assert tau.rows == list(CLASSICAL_MEASURES)
    assert tau.columns == list(COMMUNITY_MEASURES)
    assert len(tau.values) == 5 and all(len(row) == 5 for row in tau.values)
    assert overlap.parameters["p"] == 0.8
    assert overlap.parameters["tie_policy"] == "id-order"
    assert all(0.0 <= v <= 1.0 for row in overlap.values for v in row)


def test_compare_measures_marks_tied_columns_undefined(rng):
    classical = vectors(CLASSICAL_MEASURES, rng)
    community = vectors(COMMUNITY_MEASURES, rng)
    community[MeasureId.NEIGHBORING_COMMUNITIES] = ScoreVector.from_array(
        MeasureId.NEIGHBORING_COMMUNITIES, np.zeros(30)
    )

    tau = compare_measures(classical, community, "tau_b")

    assert tau.column_values(MeasureId.NEIGHBORING_COMMUNITIES) == [None] * 5
    assert tau.value(MeasureId.DEGREE, MeasureId.BRIDGING) is not None


def test_compare_measures_random_ties_are_reproducible(rng):
    classical = vectors(CLASSICAL_MEASURES, rng)
    community = {
        m: ScoreVector.from_array(m, np.floor(rng.random(30) * 3)) for m in COMMUNITY_MEASURES
    }

    runs = [
        compare_measures(
            classical,
            community,
            "rbo",
            tie_policy=TiePolicy.RANDOM,
            seed=np.random.SeedSequence(9),
        )
        for _ in range(2)
    ]

    assert runs[0].values == runs[1].values


@pytest.mark.parametrize("seed", range(10))
def test_tau_b_is_symmetric(seed):
    rng = np.random.default_rng(seed)
    x = np.floor(rng.random(40) * 6)
    y = np.floor(rng.random(40) * 6)

    assert kendall_tau_b(x, y) == pytest.approx(kendall_tau_b(y, x), abs=1e-12)


@pytest.mark.parametrize("seed", range(10))
def test_tau_b_is_invariant_under_increasing_transforms(seed):
    rng = np.random.default_rng(seed)
    x = np.round(rng.normal(size=50), 1)
    y = np.round(rng.normal(size=50), 1)
    tau = kendall_tau_b(x, y)

    assert kendall_tau_b(x**3, y) == pytest.approx(tau, abs=1e-12)
    assert kendall_tau_b(np.exp(x), y) == pytest.approx(tau, abs=1e-12)
    assert kendall_tau_b(x, np.exp(y) + y**3) == pytest.approx(tau, abs=1e-12)


@pytest.mark.parametrize("n", [2, 3, 7, 20, 101])
def test_adjacent_swap_costs_two_over_pair_count(n):
    x = np.arange(n, dtype=float)
    for i in range(n - 1):
        y = x.copy()
        y[[i, i + 1]] = y[[i + 1, i]]

        assert kendall_tau_b(x, y) == pytest.approx(1.0 - 2.0 / (n * (n - 1) / 2))


@pytest.mark.parametrize("seed", range(10))
def test_rbo_is_symmetric(seed):
    rng = np.random.default_rng(seed)
    a = ranking(rng.permutation(30).tolist())
    b = ranking(rng.permutation(30).tolist())

    assert rbo(a, b) == pytest.approx(rbo(b, a), abs=1e-12)
    assert rbo(a, b, extrapolated=False) == pytest.approx(rbo(b, a, extrapolated=False), abs=1e-12)
