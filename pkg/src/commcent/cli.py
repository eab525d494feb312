"""CLI interface for commcent."""

import csv
import logging
import sys
from collections.abc import Callable
from pathlib import Path
from typing import Any, NoReturn, TypeVar

import click
from pydantic import ValidationError
from tabulate import tabulate  # type: ignore[import-untyped]

from commcent import __version__
from commcent.analysis.community import format_partition
from commcent.analysis.community_aware import CbmWeighting
from commcent.analysis.ranking import TiePolicy
from commcent.config import OUTPUT_DIR_ENV, NetworkSpec, RunConfig, load_manifest
from commcent.errors import EXIT_USAGE, CommcentError
from commcent.models.scores import ComparisonMatrix, MeasureId
from commcent.pipeline import NetworkAnalyzer, run_network, run_suite
from commcent.reporters.markdown_reporter import topology_rows

F = TypeVar("F", bound=Callable[..., Any])

MEASURE_CHOICES = ["all", *(m.value for m in MeasureId)]


class CommcentGroup(click.Group):
    """Click group that maps failures onto the documented exit codes."""

    def main(self, *args: Any, **kwargs: Any) -> Any:
        kwargs["standalone_mode"] = False
        try:
            return super().main(*args, **kwargs)
        except click.ClickException as exc:
            exc.show()
            self._exit(EXIT_USAGE)
        except click.Abort:
            click.echo("Aborted!", err=True)
            self._exit(EXIT_USAGE)
        except CommcentError as exc:
            click.echo(f"Error: {exc}", err=True)
            self._exit(exc.exit_code)

    @staticmethod
    def _exit(code: int) -> NoReturn:
        sys.exit(code)


def _configure_logging(verbosity: int) -> None:
    level = {0: logging.WARNING, 1: logging.INFO}.get(verbosity, logging.DEBUG)
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s", force=True)


def detection_options(func: F) -> F:
    """Options shared by every command that partitions a graph."""
    decorators = [
        click.option(
            "--detector",
            type=click.Choice(["infomap", "label-prop", "external"]),
            default="infomap",
            show_default=True,
            help="Community detector (external requires --partition)",
        ),
        click.option("--seed", type=int, default=0, show_default=True, help="Root random seed"),
        click.option(
            "--trials",
            type=int,
            default=10,
            show_default=True,
            help="Map equation optimization trials",
        ),
        click.option(
            "--workers", type=int, default=1, show_default=True, help="Parallel workers"
        ),
    ]
    for decorator in reversed(decorators):
        func = decorator(func)
    return func


def measure_options(func: F) -> F:
    """Centrality and comparison parameters."""
    decorators = [
        click.option(
            "--katz-s",
            "katz_attenuation",
            type=float,
            default=None,
            help="Katz attenuation s (default 0.9 / lambda_max)",
        ),
        click.option(
            "--pagerank-d",
            "pagerank_damping",
            type=float,
            default=0.85,
            show_default=True,
            help="PageRank damping factor",
        ),
        click.option(
            "--cbm-weighting",
            type=click.Choice([w.value for w in CbmWeighting]),
            default=CbmWeighting.LINK_FRACTION.value,
            show_default=True,
            help="Community-based Mediator link distribution",
        ),
        click.option(
            "--cbm-log-base",
            type=float,
            default=2.0,
            show_default=True,
            help="Logarithm base of the Community-based Mediator entropy",
        ),
        click.option(
            "--tolerance",
            type=float,
            default=1e-10,
            show_default=True,
            help="Convergence tolerance",
        ),
        click.option(
            "--max-iterations", type=int, default=10_000, show_default=True, help="Iteration cap"
        ),
    ]
    for decorator in reversed(decorators):
        func = decorator(func)
    return func


def comparison_options(func: F) -> F:
    """Rank comparison and artifact options."""
    decorators = [
        click.option(
            "--rbo-p", type=float, default=0.9, show_default=True, help="RBO persistence p"
        ),
        click.option(
            "--rbo-truncated",
            is_flag=True,
            help="Use truncated RBO instead of the extrapolated form",
        ),
        click.option(
            "--tie-policy",
            type=click.Choice([p.value for p in TiePolicy]),
            default=TiePolicy.ID_ORDER.value,
            show_default=True,
            help="Order inside tie groups when building rankings",
        ),
        click.option(
            "--tie-epsilon",
            type=float,
            default=0.0,
            show_default=True,
            help="Relative score gap treated as a tie",
        ),
        click.option(
            "--sample-paths",
            type=int,
            default=None,
            help="Sample this many BFS sources for <d> and D (approximate)",
        ),
        click.option(
            "--out",
            "output_dir",
            type=click.Path(file_okay=False, path_type=Path),
            envvar=OUTPUT_DIR_ENV,
            default=None,
            help=f"Output directory (default ${OUTPUT_DIR_ENV} or ./commcent-output)",
        ),
        click.option("--no-svg", is_flag=True, help="Skip the SVG heatmaps"),
    ]
    for decorator in reversed(decorators):
        func = decorator(func)
    return func


def build_config(**options: Any) -> RunConfig:
    """Build a RunConfig from CLI options, reporting range violations as usage errors."""
    rbo_truncated = options.pop("rbo_truncated", False)
    no_svg = options.pop("no_svg", False)
    values = {k: v for k, v in options.items() if v is not None}
    values["rbo_extrapolated"] = not rbo_truncated
    values["emit_svg"] = not no_svg
    try:
        return RunConfig(**values)
    except ValidationError as exc:
        problems = "; ".join(
            f"{'.'.join(str(p) for p in err['loc'])}: {err['msg']}" for err in exc.errors()
        )
        raise click.UsageError(problems) from exc


def _spec(edges: Path, partition: Path | None, name: str | None = None) -> NetworkSpec:
    return NetworkSpec(name=name or edges.stem, edges=edges, partition=partition)


def _matrix_table(matrix: ComparisonMatrix) -> str:
    rows = [
        [r.symbol, *("" if v is None else f"{v:.3f}" for v in values)]
        for r, values in zip(matrix.rows, matrix.values)
    ]
    return str(
        tabulate(
            rows,
            headers=["", *(c.symbol for c in matrix.columns)],
            tablefmt="github",
            disable_numparse=True,
        )
    )


@click.group(cls=CommcentGroup)
@click.version_option(version=__version__, prog_name="commcent")
@click.option("-v", "--verbose", count=True, help="More logging (-v INFO, -vv DEBUG)")
def cli(verbose: int) -> None:
    """Compare classical and community-aware centrality measures."""
    _configure_logging(verbose)


edges_argument = click.argument(
    "edges", type=click.Path(exists=True, dir_okay=False, path_type=Path)
)
partition_option = click.option(
    "--partition",
    type=click.Path(exists=True, dir_okay=False, path_type=Path),
    default=None,
    help="Partition file (node_label community_id); skips detection",
)


@cli.command()
@edges_argument
@partition_option
@detection_options
@click.option(
    "--sample-paths",
    type=int,
    default=None,
    help="Sample this many BFS sources for <d> and D (approximate)",
)
def stats(edges: Path, partition: Path | None, **options: Any) -> None:
    """Print the topological and community profile of a network."""
    config = build_config(**options)
    profile = NetworkAnalyzer(config).profile(_spec(edges, partition))
    component = profile.loaded.component
    click.echo(
        f"Largest component: {component.nodes_kept} nodes "
        f"({component.nodes_dropped} dropped from {component.components} components)"
    )
    rows = topology_rows(profile.topology, profile.community)
    click.echo(tabulate(rows, headers=["Statistic", "Value"], tablefmt="github"))


@cli.command()
@edges_argument
@detection_options
@click.option(
    "--out",
    type=click.Path(dir_okay=False, path_type=Path),
    default=None,
    help="Partition file to write (default: standard output)",
)
def detect(edges: Path, out: Path | None, **options: Any) -> None:
    """Detect communities in the largest connected component."""
    if options["detector"] == "external":
        raise click.UsageError("detect needs the infomap or label-prop detector")
    config = build_config(**options)
    analyzer = NetworkAnalyzer(config)
    graph = analyzer.load(_spec(edges, None)).graph
    partition, detector = analyzer.detect(graph, _spec(edges, None))
    text = format_partition(graph, partition)
    if out is None:
        click.echo(text, nl=False)
        return
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(text, encoding="utf-8")
    click.echo(f"{detector}: {partition.k} communities over {partition.n} nodes -> {out}")


@cli.command()
@edges_argument
@partition_option
@click.option(
    "--measure",
    type=click.Choice(MEASURE_CHOICES),
    default="all",
    show_default=True,
    help="Measure to output",
)
@detection_options
@measure_options
@click.option(
    "--out",
    type=click.Path(dir_okay=False, path_type=Path),
    default=None,
    help="CSV file to write (default: standard output)",
)
def centrality(
    edges: Path, partition: Path | None, measure: str, out: Path | None, **options: Any
) -> None:
    """Compute centrality scores as CSV (node_label plus one column per measure)."""
    config = build_config(**options)
    analyzer = NetworkAnalyzer(config)
    spec = _spec(edges, partition)
    graph = analyzer.load(spec).graph
    communities, _ = analyzer.detect(graph, spec)
    classical, aware = analyzer.centralities(graph, communities)
    vectors = {**classical, **aware}
    selected = list(vectors) if measure == "all" else [MeasureId(measure)]

    handle = open(out, "w", encoding="utf-8", newline="") if out else sys.stdout
    try:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(["node_label", *(m.value for m in selected)])
        for node, label in enumerate(graph.labels):
            writer.writerow([label, *(repr(vectors[m].values[node]) for m in selected)])
    finally:
        if out:
            handle.close()


@cli.command()
@edges_argument
@partition_option
@click.option("--name", default=None, help="Network name (default: edge file stem)")
@detection_options
@measure_options
@comparison_options
def compare(edges: Path, partition: Path | None, name: str | None, **options: Any) -> None:
    """Run the full comparison for one network and write its artifacts."""
    config = build_config(**options)
    spec = _spec(edges, partition, name)
    click.echo(f"Analysing {spec.name} ({edges})")
    report = run_network(config, spec)

    click.echo(
        f"{report.topology.n} nodes, {report.topology.m} edges, "
        f"{report.community.communities} communities"
    )
    click.echo("\nKendall tau-b")
    click.echo(_matrix_table(report.tau_b))
    click.echo("\nRank-Biased Overlap")
    click.echo(_matrix_table(report.rbo))
    click.echo("\n✅ Comparison complete!")
    click.echo(f"  - Artifacts: {config.output_dir / spec.name}")


@cli.command()
@click.argument("manifest", type=click.Path(exists=True, dir_okay=False, path_type=Path))
@detection_options
@measure_options
@comparison_options
def suite(manifest: Path, **options: Any) -> None:
    """Analyse every network listed in MANIFEST and write a combined summary."""
    config = build_config(**options)
    networks = load_manifest(manifest)
    click.echo(f"Running {len(networks)} networks from {manifest}")
    result = run_suite(config, networks)

    rows = [
        [m.symbol, "" if m.tau_b_mean_abs is None else f"{m.tau_b_mean_abs:.3f}", m.group]
        for m in result.summary.measures
    ]
    click.echo(tabulate(rows, headers=["Measure", "mean |tau-b|", "Group"], tablefmt="github"))
    click.echo(f"\nSummary: {config.output_dir / 'summary.json'}")
    if result.failures:
        for failure in result.failures:
            click.echo(f"Error: {failure.network}: {failure.error}", err=True)
        sys.exit(max(f.exit_code for f in result.failures))
    click.echo("\n✅ Suite complete!")


if __name__ == "__main__":
    cli()
