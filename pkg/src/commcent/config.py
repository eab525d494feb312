"""Run configuration and suite manifests."""

import hashlib
import json
import os
from pathlib import Path
from typing import Literal

import numpy as np
from pydantic import BaseModel, Field

from commcent.analysis.community_aware import CbmWeighting
from commcent.analysis.graph_io import data_lines, split_fields, utf8_lines
from commcent.analysis.ranking import TiePolicy
from commcent.errors import ManifestError
from commcent.models.scores import CentralityParams

OUTPUT_DIR_ENV = "COMMCENT_OUTPUT_DIR"
DEFAULT_OUTPUT_DIR = Path("commcent-output")

Detector = Literal["infomap", "label-prop", "external"]


def default_output_dir() -> Path:
    return Path(os.environ.get(OUTPUT_DIR_ENV, DEFAULT_OUTPUT_DIR))


class NetworkSpec(BaseModel):
    """One network to analyse."""

    name: str = Field(..., min_length=1, description="Network name, used as directory name")
    edges: Path = Field(..., description="Edge list path")
    partition: Path | None = Field(None, description="Optional external partition path")

    model_config = {"frozen": True}


class RunConfig(BaseModel):
    """Everything that determines the output of a run."""

    detector: Detector = Field("infomap", description="Community detector")
    seed: int = Field(0, ge=0, description="Root seed for every random stage")
    trials: int = Field(10, ge=1, description="Map equation optimization trials")
    katz_attenuation: float | None = Field(
        None, ge=0.0, lt=1.0, description="Katz s; None uses katz_fraction / lambda_max"
    )
    katz_fraction: float = Field(0.9, gt=0.0, lt=1.0)
    pagerank_damping: float = Field(0.85, ge=0.0, le=1.0)
    rbo_p: float = Field(0.9, gt=0.0, lt=1.0, description="RBO persistence")
    rbo_extrapolated: bool = Field(True, description="Extrapolated (True) or truncated RBO")
    tie_policy: TiePolicy = Field(TiePolicy.ID_ORDER)
    tie_epsilon: float = Field(0.0, ge=0.0, description="Relative gap fused into a tie")
    cbm_weighting: CbmWeighting = Field(CbmWeighting.LINK_FRACTION)
    cbm_log_base: float = Field(2.0, gt=1.0)
    tolerance: float = Field(1e-10, gt=0.0)
    max_iterations: int = Field(10_000, ge=1)
    sample_paths: int | None = Field(None, ge=1, description="BFS sources sampled for <d>")
    workers: int = Field(1, ge=1, description="Parallel workers")
    output_dir: Path = Field(default_factory=default_output_dir)
    emit_csv: bool = True
    emit_json: bool = True
    emit_svg: bool = True
    emit_markdown: bool = True

    model_config = {"frozen": True}

    def centrality_params(self) -> CentralityParams:
        return CentralityParams(
            katz_attenuation=self.katz_attenuation,
            katz_fraction=self.katz_fraction,
            pagerank_damping=self.pagerank_damping,
            tolerance=self.tolerance,
            max_iterations=self.max_iterations,
        )

    def config_hash(self) -> str:
        """SHA-256 of the result-determining fields (output location and workers excluded)."""
        payload = self.model_dump(mode="json", exclude={"output_dir", "workers"})
        canonical = json.dumps(payload, sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(canonical.encode("utf-8")).hexdigest()

    def seed_streams(self) -> dict[str, np.random.SeedSequence]:
        """Independent seed sequences per random stage, all derived from ``seed``."""
        detection, sampling, ties = np.random.SeedSequence(self.seed).spawn(3)
        return {"detection": detection, "sampling": sampling, "ties": ties}

    def detection_seed(self) -> int:
        return int(self.seed_streams()["detection"].generate_state(1)[0])


def validate_network(spec: NetworkSpec, config: RunConfig) -> None:
    """Check that the paths a network needs exist."""
    if not spec.edges.is_file():
        raise ManifestError(f"{spec.name}: edge list {spec.edges} does not exist")
    if spec.partition is not None and not spec.partition.is_file():
        raise ManifestError(f"{spec.name}: partition file {spec.partition} does not exist")
    if config.detector == "external" and spec.partition is None:
        raise ManifestError(f"{spec.name}: the external detector needs a partition file")


def _manifest_encoding_error(message: str, line_number: int) -> ManifestError:
    return ManifestError(f"manifest line {line_number}: {message}")


def load_manifest(path: Path) -> list[NetworkSpec]:
    """Read ``name edges_path [partition_path]`` lines; paths are relative to the manifest.

    Raises:
        ManifestError: If the file cannot be read, a line is malformed, a name repeats
            or no network is listed
    """
    try:
        with open(path, "rb") as f:
            lines = list(utf8_lines(f, _manifest_encoding_error))
    except OSError as exc:
        raise ManifestError(f"cannot read manifest {path}: {exc.strerror}") from exc

    base = path.parent
    networks: list[NetworkSpec] = []
    names: set[str] = set()
    for line_number, line in data_lines(lines):
        fields = split_fields(line, None)
        if len(fields) not in (2, 3):
            raise ManifestError(
                f"{path}:{line_number}: expected 'name edges_path [partition_path]'"
            )
        name = fields[0]
        if name in names:
            raise ManifestError(f"{path}:{line_number}: network {name!r} listed twice")
        names.add(name)
        networks.append(
            NetworkSpec(
                name=name,
                edges=base / fields[1],
                partition=base / fields[2] if len(fields) == 3 else None,
            )
        )
    if not networks:
        raise ManifestError(f"manifest {path} lists no networks")
    return networks
