"""End-to-end analysis of single networks and network suites."""

import logging
import shutil
import statistics
from collections.abc import Sequence
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from commcent import __version__
from commcent.analysis.classical import classical_centralities
from commcent.analysis.community import mixing_parameter, modularity, read_partition
from commcent.analysis.community_aware import CommunityCentralityInputs, community_centralities
from commcent.analysis.graph_io import largest_connected_component, read_edge_list
from commcent.analysis.label_propagation import detect_communities_label_propagation
from commcent.analysis.map_equation import detect_communities_infomap, map_equation
from commcent.analysis.ranking import compare_measures
from commcent.analysis.topology import topo_stats
from commcent.config import NetworkSpec, RunConfig, validate_network
from commcent.errors import CommcentError, ManifestError, PartitionError
from commcent.models.graph import ComponentReport, Graph, IngestionReport
from commcent.models.partition import Partition
from commcent.models.report import (
    CommunityStats,
    MeasureInfo,
    MeasureSummary,
    NetworkFailure,
    NetworkOutcome,
    NetworkReport,
    Provenance,
    SuiteSummary,
    TopoStats,
)
from commcent.models.scores import COMMUNITY_MEASURES, MeasureId, ScoreVector
from commcent.reporters.csv_reporter import CSVReporter
from commcent.reporters.heatmap_reporter import HeatmapReporter, band_of
from commcent.reporters.json_reporter import JSONReporter
from commcent.reporters.markdown_reporter import MarkdownReporter

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class LoadedNetwork:
    """A network reduced to its largest connected component."""

    graph: Graph
    ingestion: IngestionReport
    component: ComponentReport


@dataclass(frozen=True)
class NetworkProfile:
    loaded: LoadedNetwork
    topology: TopoStats
    partition: Partition
    community: CommunityStats


@dataclass(frozen=True)
class NetworkAnalysis:
    """A finished analysis plus the objects its artifacts are written from."""

    report: NetworkReport
    graph: Graph
    partition: Partition


class NetworkAnalyzer:
    """Run the full comparison pipeline for one network."""

    def __init__(self, config: RunConfig) -> None:
        self.config = config
        self.streams = config.seed_streams()

    def load(self, spec: NetworkSpec) -> LoadedNetwork:
        """Ingest the edge list and keep its largest connected component."""
        graph, ingestion = read_edge_list(spec.edges)
        component, _, component_report = largest_connected_component(graph)
        return LoadedNetwork(component, ingestion, component_report)

    def detect(self, graph: Graph, spec: NetworkSpec) -> tuple[Partition, str]:
        """Partition ``graph`` with an external file or the configured detector.

        Returns:
            Tuple of (partition, detector name)
        """
        if spec.partition is not None:
            partition = read_partition(spec.partition, graph, allow_extra=True)
            return partition, "external"
        if self.config.detector == "external":
            raise PartitionError(f"{spec.name}: the external detector needs a partition file")
        if self.config.detector == "label-prop":
            seed = self.config.detection_seed()
            return detect_communities_label_propagation(graph, seed), "label-prop"
        partition = detect_communities_infomap(
            graph,
            seed=self.config.detection_seed(),
            trials=self.config.trials,
            workers=self.config.workers,
        )
        return partition, "infomap"

    def community_stats(self, graph: Graph, partition: Partition, detector: str) -> CommunityStats:
        sizes = partition.sizes
        return CommunityStats(
            detector=detector,
            communities=partition.k,
            min_size=int(sizes.min()),
            median_size=float(np.median(sizes)),
            max_size=int(sizes.max()),
            modularity=modularity(graph, partition),
            mixing_parameter=mixing_parameter(graph, partition),
            codelength=map_equation(graph, partition),
            partition_fingerprint=partition.fingerprint(),
        )

    def centralities(
        self, graph: Graph, partition: Partition
    ) -> tuple[dict[MeasureId, ScoreVector], dict[MeasureId, ScoreVector]]:
        """Classical and community-aware score vectors, in matrix row and column order."""
        config = self.config
        classical = classical_centralities(graph, config.centrality_params(), config.workers)
        inputs = CommunityCentralityInputs.build(
            graph, partition, classical[MeasureId.BETWEENNESS]
        )
        aware = community_centralities(inputs, config.cbm_weighting, config.cbm_log_base)
        return classical, aware

    def profile(self, spec: NetworkSpec) -> NetworkProfile:
        """Ingestion, topology and community structure of one network."""
        loaded = self.load(spec)
        graph = loaded.graph
        topology = topo_stats(
            graph,
            sample_paths=self.config.sample_paths,
            rng=np.random.default_rng(self.streams["sampling"]),
        )
        partition, detector = self.detect(graph, spec)
        community = self.community_stats(graph, partition, detector)
        logger.info(
            "%s: %d communities, Q=%.3f, mu=%.3f",
            spec.name,
            community.communities,
            community.modularity,
            community.mixing_parameter,
        )
        return NetworkProfile(loaded, topology, partition, community)

    def run(self, spec: NetworkSpec) -> NetworkAnalysis:
        config = self.config
        profile = self.profile(spec)
        loaded, graph, partition = profile.loaded, profile.loaded.graph, profile.partition
        topology, community = profile.topology, profile.community
        detector = community.detector

        classical, aware = self.centralities(graph, partition)

        tau_b = compare_measures(classical, aware, "tau_b")
        rbo = compare_measures(
            classical,
            aware,
            "rbo",
            rbo_p=config.rbo_p,
            rbo_extrapolated=config.rbo_extrapolated,
            tie_epsilon=config.tie_epsilon,
            tie_policy=config.tie_policy,
            seed=self.streams["ties"],
        )

        scores = [*classical.values(), *aware.values()]
        report = NetworkReport(
            network=spec.name,
            ingestion=loaded.ingestion,
            component=loaded.component,
            topology=topology,
            community=community,
            measures=[
                MeasureInfo(measure=v.measure, symbol=v.measure.symbol, parameters=v.parameters)
                for v in scores
            ],
            tau_b=tau_b,
            rbo=rbo,
            provenance=Provenance(
                tool_version=__version__,
                config_hash=config.config_hash(),
                seed=config.seed,
                detector=detector,
                trials=config.trials if detector == "infomap" else None,
                partition_fingerprint=community.partition_fingerprint,
            ),
            scores=scores,
            node_labels=list(graph.labels),
        )
        return NetworkAnalysis(report, graph, partition)


def write_artifacts(analysis: NetworkAnalysis, directory: Path, config: RunConfig) -> list[Path]:
    """Write every requested artifact of ``analysis`` into ``directory``."""
    report = analysis.report
    written: list[Path] = []
    if config.emit_csv:
        csv_reporter = CSVReporter()
        written.append(csv_reporter.write_label_map(analysis.graph, directory / "label_map.csv"))
        written.append(
            csv_reporter.write_partition(
                analysis.graph, analysis.partition, directory / "partition.tsv"
            )
        )
        written.extend(csv_reporter.write_scores(report, directory / "scores"))
        written.append(csv_reporter.write_matrix(report.tau_b, directory / "tau_b.csv"))
        written.append(csv_reporter.write_matrix(report.rbo, directory / "rbo.csv"))
    if config.emit_json:
        path = directory / "report.json"
        JSONReporter().generate(report, path)
        written.append(path)
    if config.emit_markdown:
        path = directory / "report.md"
        MarkdownReporter().generate(report, path)
        written.append(path)
    if config.emit_svg:
        heatmaps = HeatmapReporter()
        for matrix in (report.tau_b, report.rbo):
            path = directory / f"{matrix.statistic}.svg"
            heatmaps.generate(matrix, path, title=f"{report.network}: {matrix.statistic}")
            written.append(path)
    return written


def run_network(config: RunConfig, spec: NetworkSpec) -> NetworkReport:
    """Analyse one network and write its artifacts to ``<output_dir>/<name>/``.

    Artifacts are staged in ``<name>.partial/`` and moved into place only when every
    file was written; a failed write removes the staging directory.
    """
    validate_network(spec, config)
    analysis = NetworkAnalyzer(config).run(spec)

    target = config.output_dir / spec.name
    staging = config.output_dir / f"{spec.name}.partial"
    if staging.exists():
        shutil.rmtree(staging)
    staging.mkdir(parents=True)
    try:
        write_artifacts(analysis, staging, config)
    except BaseException:
        shutil.rmtree(staging, ignore_errors=True)
        raise
    if target.exists():
        shutil.rmtree(target)
    staging.rename(target)
    logger.info("%s: artifacts written to %s", spec.name, target)
    return analysis.report


def _run_isolated(config: RunConfig, spec: NetworkSpec) -> NetworkReport | NetworkFailure:
    try:
        return run_network(config, spec)
    except CommcentError as exc:
        logger.error("%s failed: %s", spec.name, exc)
        return NetworkFailure(network=spec.name, error=str(exc), exit_code=exc.exit_code)


def _mean_abs(values: Sequence[float | None]) -> float | None:
    defined = [abs(v) for v in values if v is not None]
    return statistics.fmean(defined) if defined else None


def summarize(
    reports: list[NetworkReport], failures: list[NetworkFailure] | None = None
) -> SuiteSummary:
    """Aggregate tau-b and RBO per community-aware measure across networks."""
    summaries: list[MeasureSummary] = []
    outcomes = [
        NetworkOutcome(
            network=r.network,
            mean_abs_tau_b={m: _mean_abs(r.tau_b.column_values(m)) for m in COMMUNITY_MEASURES},
        )
        for r in reports
    ]
    for measure in COMMUNITY_MEASURES:
        taus = [v for r in reports for v in r.tau_b.column_values(measure) if v is not None]
        rbos = [v for r in reports for v in r.rbo.column_values(measure) if v is not None]
        per_network = [
            o.mean_abs_tau_b[measure] for o in outcomes if o.mean_abs_tau_b[measure] is not None
        ]
        low = sum(1 for v in per_network if v is not None and band_of(v) == "low")
        if not per_network:
            group = "undefined"
        elif low == len(per_network):
            group = "consistent-low"
        else:
            group = "varying"
        summaries.append(
            MeasureSummary(
                measure=measure,
                symbol=measure.symbol,
                tau_b_min=min(taus) if taus else None,
                tau_b_mean=statistics.fmean(taus) if taus else None,
                tau_b_max=max(taus) if taus else None,
                tau_b_mean_abs=_mean_abs(taus),
                rbo_min=min(rbos) if rbos else None,
                rbo_mean=statistics.fmean(rbos) if rbos else None,
                rbo_max=max(rbos) if rbos else None,
                low_band_networks=low,
                group=group,
            )
        )
    return SuiteSummary(
        networks=[r.network for r in reports],
        failures=failures or [],
        measures=summaries,
        per_network=outcomes,
    )


@dataclass(frozen=True)
class SuiteResult:
    reports: list[NetworkReport]
    failures: list[NetworkFailure]
    summary: SuiteSummary


def run_suite(config: RunConfig, networks: list[NetworkSpec]) -> SuiteResult:
    """Analyse every network, isolating failures, and write the combined summary.

    With ``workers > 1`` networks run in separate processes, each single-threaded.
    """
    if not networks:
        raise ManifestError("suite manifest lists no networks")
    config.output_dir.mkdir(parents=True, exist_ok=True)

    if config.workers > 1 and len(networks) > 1:
        inner = config.model_copy(update={"workers": 1})
        with ProcessPoolExecutor(max_workers=config.workers) as pool:
            outcomes = list(pool.map(_run_isolated, [inner] * len(networks), networks))
    else:
        outcomes = [_run_isolated(config, spec) for spec in networks]

    reports = [o for o in outcomes if isinstance(o, NetworkReport)]
    failures = [o for o in outcomes if isinstance(o, NetworkFailure)]
    summary = summarize(reports, failures)

    if config.emit_json:
        JSONReporter().generate(summary, config.output_dir / "summary.json")
    if config.emit_markdown:
        MarkdownReporter().generate_suite(summary, config.output_dir / "summary.md")
    return SuiteResult(reports, failures, summary)
