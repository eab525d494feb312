"""Markdown report generator."""

from pathlib import Path

from tabulate import tabulate  # type: ignore[import-untyped]

from commcent.models.report import CommunityStats, NetworkReport, SuiteSummary, TopoStats
from commcent.models.scores import ComparisonMatrix, ParameterValue


def _fmt(value: float | None, digits: int = 3) -> str:
    return "" if value is None else f"{value:.{digits}f}"


def _params(parameters: dict[str, ParameterValue]) -> str:
    return ", ".join(f"{key}={parameters[key]}" for key in sorted(parameters))


def topology_rows(topo: TopoStats, community: CommunityStats) -> list[list[str]]:
    """Statistic/value rows shared by the Markdown report and the ``stats`` command."""
    approx = " (sampled)" if topo.approximate else ""
    return [
        ["N", str(topo.n)],
        ["E", str(topo.m)],
        ["<k>", f"{topo.avg_degree:.3f}"],
        ["<d>", f"{topo.avg_shortest_path:.3f}{approx}"],
        ["D", f"{topo.diameter}{approx}"],
        ["density", f"{topo.density:.6f}"],
        ["transitivity", f"{topo.transitivity:.3f}"],
        ["assortativity", _fmt(topo.assortativity) or "undefined"],
        ["communities", str(community.communities)],
        ["modularity Q", f"{community.modularity:.3f}"],
        ["mixing mu", f"{community.mixing_parameter:.3f}"],
    ]


SUITE_HEADERS = [
    "Measure",
    "tau-b min",
    "tau-b mean",
    "tau-b max",
    "mean |tau-b|",
    "RBO min",
    "RBO mean",
    "RBO max",
    "Low-band networks",
    "Group",
]


class MarkdownReporter:
    """Generate Markdown reports for single networks and suites."""

    def generate(self, report: NetworkReport, output_path: Path) -> None:
        """Generate Markdown report file.

        Args:
            report: Network report to export
            output_path: Path where Markdown file should be written
        """
        sections = [
            self._generate_header(report),
            self._generate_topology(report),
            self._generate_communities(report),
            self._generate_matrix("Kendall tau-b", report.tau_b),
            self._generate_matrix("Rank-Biased Overlap", report.rbo),
            self._generate_measures(report),
        ]
        with open(output_path, "w", encoding="utf-8") as f:
            f.write("\n\n".join(sections) + "\n")

    def _generate_header(self, report: NetworkReport) -> str:
        """Title, provenance and ingestion counts."""
        provenance = report.provenance
        ingestion = report.ingestion
        component = report.component
        return f"""# Centrality comparison: {report.network}

**commcent:** {provenance.tool_version}
**Config hash:** `{provenance.config_hash[:16]}`
**Seed:** {provenance.seed}

- **Edge lines read:** {ingestion.data_lines}
- **Duplicate edges dropped:** {ingestion.duplicate_edges}
- **Self-loops dropped:** {ingestion.self_loops}
- **Components:** {component.components} \
(nodes dropped: {component.nodes_dropped}, edges dropped: {component.edges_dropped})"""

    def _generate_topology(self, report: NetworkReport) -> str:
        """Topological and community statistics table."""
        rows = topology_rows(report.topology, report.community)
        table = tabulate(rows, headers=["Statistic", "Value"], tablefmt="github")
        return f"## Topology\n\n{table}"

    def _generate_communities(self, report: NetworkReport) -> str:
        """Detector, community sizes and partition fingerprint."""
        community = report.community
        rows = [
            ["detector", community.detector],
            ["communities", community.communities],
            [
                "size min / median / max",
                f"{community.min_size} / {community.median_size:g} / {community.max_size}",
            ],
            ["codelength (bits)", f"{community.codelength:.4f}"],
            ["partition", f"`{community.partition_fingerprint}`"],
        ]
        table = tabulate(rows, headers=["Property", "Value"], tablefmt="github")
        return f"## Community Structure\n\n{table}"

    def _generate_matrix(self, title: str, matrix: ComparisonMatrix) -> str:
        """One comparison matrix as a table."""
        rows = [
            [r.symbol, *(_fmt(v) for v in values)]
            for r, values in zip(matrix.rows, matrix.values)
        ]
        table = tabulate(
            rows,
            headers=["", *(c.symbol for c in matrix.columns)],
            tablefmt="github",
            disable_numparse=True,
        )
        lines = [f"## {title}", "", table]
        if any(v is None for row in matrix.values for v in row):
            lines += ["", "Empty cells are undefined (a fully tied score vector)."]
        if matrix.parameters:
            lines += ["", f"Parameters: {_params(matrix.parameters)}"]
        return "\n".join(lines)

    def _generate_measures(self, report: NetworkReport) -> str:
        """Measure parameters table."""
        rows = [[m.symbol, m.measure.value, _params(m.parameters)] for m in report.measures]
        table = tabulate(rows, headers=["Symbol", "Measure", "Parameters"], tablefmt="github")
        return f"## Measures\n\n{table}"

    def generate_suite(self, summary: SuiteSummary, output_path: Path) -> None:
        """Generate the combined suite summary."""
        sections = [
            "# Centrality comparison suite\n\n"
            f"**Networks analysed:** {len(summary.networks)}\n"
            f"**Failures:** {len(summary.failures)}",
            self._generate_measure_summary(summary),
            self._generate_per_network(summary),
        ]
        if summary.failures:
            rows = [[f.network, f.exit_code, f.error] for f in summary.failures]
            table = tabulate(rows, headers=["Network", "Exit", "Error"], tablefmt="github")
            sections.append(f"## Failures\n\n{table}")
        with open(output_path, "w", encoding="utf-8") as f:
            f.write("\n\n".join(sections) + "\n")

    def _generate_measure_summary(self, summary: SuiteSummary) -> str:
        """Across-network statistics per community-aware measure."""
        rows = [
            [
                m.symbol,
                _fmt(m.tau_b_min),
                _fmt(m.tau_b_mean),
                _fmt(m.tau_b_max),
                _fmt(m.tau_b_mean_abs),
                _fmt(m.rbo_min),
                _fmt(m.rbo_mean),
                _fmt(m.rbo_max),
                m.low_band_networks,
                m.group,
            ]
            for m in summary.measures
        ]
        table = tabulate(
            rows,
            headers=SUITE_HEADERS,
            tablefmt="github",
            disable_numparse=True,
        )
        return f"## Community-aware measures across networks\n\n{table}"

    def _generate_per_network(self, summary: SuiteSummary) -> str:
        """Mean absolute tau-b per network and measure."""
        if not summary.per_network:
            return "## Mean |tau-b| per network\n\nNo networks analysed."
        symbols = [m.symbol for m in summary.measures]
        measures = [m.measure for m in summary.measures]
        rows = [
            [o.network, *(_fmt(o.mean_abs_tau_b.get(m)) for m in measures)]
            for o in summary.per_network
        ]
        table = tabulate(
            rows, headers=["Network", *symbols], tablefmt="github", disable_numparse=True
        )
        return f"## Mean |tau-b| per network\n\n{table}"
