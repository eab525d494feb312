"""Centrality score vectors, rankings and comparison matrices."""

import math
from enum import Enum
import sys
from typing import Literal

if sys.version_info >= (3, 11):
    from typing import Self
else:
    from typing_extensions import Self

import numpy as np
from pydantic import BaseModel, Field, field_validator, model_validator

from commcent.models.graph import FloatArray


class MeasureId(str, Enum):
    """Identity of a centrality measure."""

    DEGREE = "degree"
    BETWEENNESS = "betweenness"
    CLOSENESS = "closeness"
    KATZ = "katz"
    PAGERANK = "pagerank"
    BRIDGING = "bridging"
    COMMUNITY_HUB_BRIDGE = "community_hub_bridge"
    PARTICIPATION_COEFFICIENT = "participation_coefficient"
    COMMUNITY_BASED_MEDIATOR = "community_based_mediator"
    NEIGHBORING_COMMUNITIES = "neighboring_communities"

    @property
    def symbol(self) -> str:
        return _SYMBOLS[self]

    @property
    def is_classical(self) -> bool:
        return self in CLASSICAL_MEASURES


_SYMBOLS = {
    MeasureId.DEGREE: "α_d",
    MeasureId.BETWEENNESS: "α_b",
    MeasureId.CLOSENESS: "α_c",
    MeasureId.KATZ: "α_k",
    MeasureId.PAGERANK: "α_p",
    MeasureId.BRIDGING: "β_BC",
    MeasureId.COMMUNITY_HUB_BRIDGE: "β_CHB",
    MeasureId.PARTICIPATION_COEFFICIENT: "β_PC",
    MeasureId.COMMUNITY_BASED_MEDIATOR: "β_CBM",
    MeasureId.NEIGHBORING_COMMUNITIES: "β_NNC",
}

# Heatmap axis order: rows are classical, columns community-aware.
CLASSICAL_MEASURES: tuple[MeasureId, ...] = (
    MeasureId.DEGREE,
    MeasureId.BETWEENNESS,
    MeasureId.CLOSENESS,
    MeasureId.KATZ,
    MeasureId.PAGERANK,
)
COMMUNITY_MEASURES: tuple[MeasureId, ...] = (
    MeasureId.BRIDGING,
    MeasureId.COMMUNITY_HUB_BRIDGE,
    MeasureId.PARTICIPATION_COEFFICIENT,
    MeasureId.COMMUNITY_BASED_MEDIATOR,
    MeasureId.NEIGHBORING_COMMUNITIES,
)

ParameterValue = float | int | str | bool | None


class CentralityParams(BaseModel):
    """Parameters of the iterative classical measures."""

    katz_attenuation: float | None = Field(
        None,
        ge=0.0,
        lt=1.0,
        description="Katz attenuation s; None selects katz_fraction / lambda_max",
    )
    katz_fraction: float = Field(
        0.9, gt=0.0, lt=1.0, description="Fraction of 1/lambda_max used when s is not given"
    )
    pagerank_damping: float = Field(0.85, ge=0.0, le=1.0, description="PageRank damping d")
    tolerance: float = Field(1e-10, gt=0.0, description="Convergence tolerance")
    max_iterations: int = Field(10_000, ge=1, description="Iteration cap")
    spectral_tolerance: float = Field(
        1e-8, gt=0.0, description="Power-iteration tolerance for lambda_max"
    )

    model_config = {"frozen": True}


class ScoreVector(BaseModel):
    """One centrality measure evaluated on every node."""

    measure: MeasureId = Field(..., description="Measure that produced the values")
    values: list[float] = Field(..., description="Score of node i at position i")
    parameters: dict[str, ParameterValue] = Field(
        default_factory=dict, description="Parameters used, e.g. attenuation or partition hash"
    )

    model_config = {"frozen": True}

    @field_validator("values")
    @classmethod
    def _finite(cls, values: list[float]) -> list[float]:
        for i, value in enumerate(values):
            if not math.isfinite(value):
                raise ValueError(f"score of node {i} is not finite: {value}")
        return values

    @model_validator(mode="after")
    def _classical_non_negative(self) -> Self:
        if self.measure.is_classical and any(v < 0.0 for v in self.values):
            raise ValueError(f"{self.measure.value} scores must be non-negative")
        return self

    @classmethod
    def from_array(
        cls,
        measure: MeasureId,
        values: FloatArray,
        parameters: dict[str, ParameterValue] | None = None,
    ) -> "ScoreVector":
        return cls(
            measure=measure,
            values=[float(v) for v in np.asarray(values, dtype=np.float64)],
            parameters=parameters or {},
        )

    def as_array(self) -> FloatArray:
        return np.asarray(self.values, dtype=np.float64)

    def __len__(self) -> int:
        return len(self.values)


class RankList(BaseModel):
    """Nodes ordered by descending score, with explicit tie groups."""

    measure: MeasureId | None = Field(None, description="Source measure")
    order: list[int] = Field(..., description="Node ids, best first")
    group_sizes: list[int] = Field(..., description="Lengths of consecutive tie groups")

    model_config = {"frozen": True}

    @model_validator(mode="after")
    def _groups_cover(self) -> Self:
        if sum(self.group_sizes) != len(self.order) or any(s <= 0 for s in self.group_sizes):
            raise ValueError("tie groups must be non-empty and cover every position")
        if sorted(self.order) != list(range(len(self.order))):
            raise ValueError("order must be a permutation of the node ids")
        return self

    def tie_groups(self) -> list[list[int]]:
        groups: list[list[int]] = []
        start = 0
        for size in self.group_sizes:
            groups.append(self.order[start : start + size])
            start += size
        return groups

    def __len__(self) -> int:
        return len(self.order)


StatisticKind = Literal["tau_b", "rbo"]


class ComparisonMatrix(BaseModel):
    """Grid of one statistic over classical (rows) x community-aware (columns) measures.

    ``None`` marks an undefined cell, e.g. tau-b against a fully tied vector.
    """

    statistic: StatisticKind = Field(..., description="tau_b or rbo")
    rows: list[MeasureId] = Field(default_factory=lambda: list(CLASSICAL_MEASURES))
    columns: list[MeasureId] = Field(default_factory=lambda: list(COMMUNITY_MEASURES))
    values: list[list[float | None]] = Field(..., description="values[row][column]")
    parameters: dict[str, ParameterValue] = Field(default_factory=dict)

    model_config = {"frozen": True}

    @model_validator(mode="after")
    def _shape_and_range(self) -> Self:
        if len(self.values) != len(self.rows) or any(
            len(row) != len(self.columns) for row in self.values
        ):
            raise ValueError(
                f"expected a {len(self.rows)}x{len(self.columns)} grid of values"
            )
        low = -1.0 if self.statistic == "tau_b" else 0.0
        for row in self.values:
            for value in row:
                if value is not None and not (low - 1e-12 <= value <= 1.0 + 1e-12):
                    raise ValueError(f"{self.statistic} value {value} outside [{low}, 1]")
        return self

    def value(self, row: MeasureId, column: MeasureId) -> float | None:
        return self.values[self.rows.index(row)][self.columns.index(column)]

    def column_values(self, column: MeasureId) -> list[float | None]:
        j = self.columns.index(column)
        return [row[j] for row in self.values]
