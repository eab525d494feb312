"""Rankings and rank comparison: Kendall tau-b and Rank-Biased Overlap."""

import logging
import warnings
from enum import Enum

import numpy as np
import numpy.typing as npt
from scipy import stats

from commcent.errors import InvalidParameterError
from commcent.models.scores import (
    CLASSICAL_MEASURES,
    COMMUNITY_MEASURES,
    ComparisonMatrix,
    MeasureId,
    RankList,
    ScoreVector,
    StatisticKind,
)

logger = logging.getLogger(__name__)

DEFAULT_RBO_PERSISTENCE = 0.9


class TiePolicy(str, Enum):
    """Order of nodes inside a tie group."""

    ID_ORDER = "id-order"
    RANDOM = "random"


def to_rank_list(
    scores: ScoreVector | npt.ArrayLike,
    tie_epsilon: float = 0.0,
    tie_policy: TiePolicy = TiePolicy.ID_ORDER,
    rng: np.random.Generator | None = None,
) -> RankList:
    """Order nodes by descending score.

    Consecutive scores whose relative difference is at most ``tie_epsilon`` are fused
    into one tie group. Inside a group nodes appear by ascending id, or in a seeded
    random order with :attr:`TiePolicy.RANDOM`.
    """
    if tie_epsilon < 0:
        raise InvalidParameterError("tie_epsilon must be non-negative")
    measure = scores.measure if isinstance(scores, ScoreVector) else None
    values = scores.as_array() if isinstance(scores, ScoreVector) else np.asarray(scores, float)
    if not np.all(np.isfinite(values)):
        raise InvalidParameterError("scores must be finite")

    order = np.lexsort((np.arange(len(values)), -values))
    ranked = values[order]
    gaps = np.abs(np.diff(ranked))
    scale = np.maximum(np.abs(ranked[:-1]), np.abs(ranked[1:]))
    breaks = np.flatnonzero(gaps > tie_epsilon * scale) + 1
    bounds = np.concatenate([[0], breaks, [len(values)]]).astype(np.int64)

    if tie_policy is TiePolicy.RANDOM:
        rng = rng if rng is not None else np.random.default_rng(0)
        for start, stop in zip(bounds[:-1], bounds[1:]):
            order[start:stop] = rng.permutation(np.sort(order[start:stop]))
    else:
        for start, stop in zip(bounds[:-1], bounds[1:]):
            order[start:stop] = np.sort(order[start:stop])

    return RankList(
        measure=measure,
        order=order.tolist(),
        group_sizes=np.diff(bounds).tolist() if len(values) else [],
    )


def kendall_tau_b(a: ScoreVector | npt.ArrayLike, b: ScoreVector | npt.ArrayLike) -> float | None:
    """Kendall tau-b between two score vectors, ties taken from exact score equality.

    Returns None when either vector is fully tied, where tau-b is undefined.
    """
    x = a.as_array() if isinstance(a, ScoreVector) else np.asarray(a, float)
    y = b.as_array() if isinstance(b, ScoreVector) else np.asarray(b, float)
    if len(x) != len(y):
        raise InvalidParameterError("score vectors must have equal lengths")
    if len(x) < 2:
        raise InvalidParameterError("tau-b needs at least two nodes")
    if np.all(x == x[0]) or np.all(y == y[0]):
        return None
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", RuntimeWarning)
        tau = stats.kendalltau(x, y, variant="b").statistic
    if not np.isfinite(tau):
        return None
    return float(np.clip(tau, -1.0, 1.0))


def _positions(ranking: RankList) -> npt.NDArray[np.int64]:
    positions = np.empty(len(ranking), dtype=np.int64)
    positions[np.asarray(ranking.order, dtype=np.int64)] = np.arange(len(ranking))
    return positions


def rbo(
    a: RankList,
    b: RankList,
    p: float = DEFAULT_RBO_PERSISTENCE,
    extrapolated: bool = True,
) -> float:
    """Rank-Biased Overlap of two complete rankings of the same nodes.

    The agreement at depth d is |top-d(a) & top-d(b)| / d. The extrapolated form adds
    ``p^N`` times the agreement at the full depth N, so identical lists score exactly 1;
    the truncated form stops the weighted sum at depth N.
    """
    if not 0.0 < p < 1.0:
        raise InvalidParameterError(f"RBO persistence must lie in (0, 1), got {p}")
    n = len(a)
    if len(b) != n:
        raise InvalidParameterError("rankings cover different node sets")
    if n == 0:
        return 1.0
    if a.order == b.order:
        return 1.0 if extrapolated else float(1.0 - p**n)

    # A node enters the common prefix at the deeper of its two positions.
    entry_depth = np.maximum(_positions(a), _positions(b))
    overlap = np.cumsum(np.bincount(entry_depth, minlength=n))
    depths = np.arange(1, n + 1, dtype=np.float64)
    agreement = overlap / depths
    weights = p ** (depths - 1.0)
    value = (1.0 - p) * float(np.sum(weights * agreement))
    if extrapolated:
        value += p**n * float(agreement[-1])
    return float(np.clip(value, 0.0, 1.0))


def compare_measures(
    classical: dict[MeasureId, ScoreVector],
    community: dict[MeasureId, ScoreVector],
    statistic: StatisticKind,
    rbo_p: float = DEFAULT_RBO_PERSISTENCE,
    rbo_extrapolated: bool = True,
    tie_epsilon: float = 0.0,
    tie_policy: TiePolicy = TiePolicy.ID_ORDER,
    seed: np.random.SeedSequence | None = None,
) -> ComparisonMatrix:
    """Fill the classical x community-aware grid with tau-b or RBO values."""
    rows = [m for m in CLASSICAL_MEASURES if m in classical]
    columns = [m for m in COMMUNITY_MEASURES if m in community]
    parameters: dict[str, float | str | bool | None] = {}

    if statistic == "tau_b":
        values = [[kendall_tau_b(classical[r], community[c]) for c in columns] for r in rows]
    else:
        streams = iter(
            np.random.default_rng(s)
            for s in (seed or np.random.SeedSequence(0)).spawn(len(rows) + len(columns))
        )
        ranks = {
            m: to_rank_list(vectors[m], tie_epsilon, tie_policy, next(streams))
            for vectors, ids in ((classical, rows), (community, columns))
            for m in ids
        }
        values = [
            [rbo(ranks[r], ranks[c], rbo_p, rbo_extrapolated) for c in columns] for r in rows
        ]
        parameters = {
            "p": rbo_p,
            "extrapolated": rbo_extrapolated,
            "tie_policy": tie_policy.value,
            "tie_epsilon": tie_epsilon,
        }

    undefined = sum(v is None for row in values for v in row)
    if undefined:
        logger.info("%d undefined %s cells (fully tied vectors)", undefined, statistic)
    return ComparisonMatrix(
        statistic=statistic,
        rows=rows,
        columns=columns,
        values=values,
        parameters=parameters,
    )
