"""Report models for single networks and network suites."""

from typing import Literal

from pydantic import BaseModel, Field

from commcent.models.graph import ComponentReport, IngestionReport
from commcent.models.scores import ComparisonMatrix, MeasureId, ParameterValue, ScoreVector

SCHEMA_VERSION = "1.0"

Band = Literal["low", "medium", "high"]


class TopoStats(BaseModel):
    """Community-agnostic topological profile of a connected graph."""

    n: int = Field(..., description="Number of nodes N")
    m: int = Field(..., description="Number of edges E")
    avg_degree: float = Field(..., description="Average degree <k> = 2m/n")
    avg_shortest_path: float = Field(..., description="Average shortest path <d>")
    density: float = Field(..., description="Density 2m/(n(n-1))")
    transitivity: float = Field(..., description="Global clustering coefficient")
    assortativity: float | None = Field(
        ..., description="Degree correlation; None when the degree variance is zero"
    )
    diameter: int = Field(..., description="Diameter D (largest observed eccentricity)")
    paths_sampled: int | None = Field(
        None, description="BFS sources sampled for <d> and D; None when exact"
    )

    @property
    def approximate(self) -> bool:
        return self.paths_sampled is not None


class CommunityStats(BaseModel):
    """Partition-dependent statistics."""

    detector: str = Field(..., description="infomap, label-prop or external")
    communities: int = Field(..., description="Number of communities")
    min_size: int = Field(..., description="Smallest community size")
    median_size: float = Field(..., description="Median community size")
    max_size: int = Field(..., description="Largest community size")
    modularity: float = Field(..., description="Newman-Girvan modularity Q")
    mixing_parameter: float = Field(..., description="Fraction of inter-community edges")
    codelength: float = Field(..., description="Two-level map equation codelength in bits")
    partition_fingerprint: str = Field(..., description="Hash of the canonical assignment")


class Provenance(BaseModel):
    """Where a report came from."""

    tool_version: str = Field(..., description="Version of commcent")
    config_hash: str = Field(..., description="SHA-256 of the canonical run configuration")
    seed: int = Field(..., description="Root seed")
    detector: str = Field(..., description="Detector used")
    trials: int | None = Field(None, description="Detector trials, when applicable")
    partition_fingerprint: str = Field(..., description="Hash of the canonical assignment")


class MeasureInfo(BaseModel):
    """Score vector metadata carried in JSON reports (values go to CSV)."""

    measure: MeasureId
    symbol: str
    parameters: dict[str, ParameterValue] = Field(default_factory=dict)


class NetworkReport(BaseModel):
    """Everything computed for one network."""

    schema_version: str = Field(SCHEMA_VERSION, description="Report schema version")
    network: str = Field(..., description="Network name")
    ingestion: IngestionReport
    component: ComponentReport
    topology: TopoStats
    community: CommunityStats
    measures: list[MeasureInfo]
    tau_b: ComparisonMatrix
    rbo: ComparisonMatrix
    provenance: Provenance
    scores: list[ScoreVector] = Field(default_factory=list, exclude=True)
    node_labels: list[str] = Field(default_factory=list, exclude=True)

    def score(self, measure: MeasureId) -> ScoreVector:
        for vector in self.scores:
            if vector.measure == measure:
                return vector
        raise KeyError(measure)


class MeasureSummary(BaseModel):
    """Across-network statistics of one community-aware measure."""

    measure: MeasureId
    symbol: str
    tau_b_min: float | None = None
    tau_b_mean: float | None = None
    tau_b_max: float | None = None
    tau_b_mean_abs: float | None = None
    rbo_min: float | None = None
    rbo_mean: float | None = None
    rbo_max: float | None = None
    low_band_networks: int = Field(
        0, description="Networks where mean |tau_b| against the classical measures is low"
    )
    group: Literal["consistent-low", "varying", "undefined"] = Field(
        "undefined", description="Two-group classification derived from the data"
    )


class NetworkFailure(BaseModel):
    """A network that could not be analysed."""

    network: str
    error: str
    exit_code: int


class NetworkOutcome(BaseModel):
    """Per-network mean |tau_b| by community-aware measure, as used by the summary."""

    network: str
    mean_abs_tau_b: dict[MeasureId, float | None]


class SuiteSummary(BaseModel):
    """Combined summary of a suite run."""

    schema_version: str = Field(SCHEMA_VERSION)
    networks: list[str] = Field(..., description="Networks analysed successfully")
    failures: list[NetworkFailure] = Field(default_factory=list)
    measures: list[MeasureSummary]
    per_network: list[NetworkOutcome] = Field(default_factory=list)
