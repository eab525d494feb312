"""Integration tests for end-to-end workflows."""

import csv
import json
import os
from pathlib import Path

import pytest
from click.testing import CliRunner

from commcent.cli import cli
from commcent.config import load_manifest
from commcent.models.scores import COMMUNITY_MEASURES
from tests.conftest import FIXTURES, two_cliques


def _write_edges(path: Path, edges) -> None:
    path.write_text("".join(f"n{u} n{v}\n" for u, v in edges), encoding="utf-8")


def test_end_to_end_compare(tmp_path):
    """Test detection, scoring, comparison and every artifact on planted cliques."""
    edges = tmp_path / "cliques.edges"
    # An isolated pair outside the largest component is dropped.
    _write_edges(edges, [*two_cliques(8).edges.tolist(), (100, 101)])

    runner = CliRunner()
    result = runner.invoke(cli, ["compare", str(edges), "--seed", "7", "--out", str(tmp_path)])

    assert result.exit_code == 0, result.output
    directory = tmp_path / "cliques"
    report = json.loads((directory / "report.json").read_text(encoding="utf-8"))

    assert report["component"]["components"] == 2
    assert report["component"]["nodes_dropped"] == 2
    assert report["topology"]["n"] == 16
    assert report["community"]["communities"] == 2
    assert report["provenance"]["detector"] == "infomap"
    assert report["provenance"]["trials"] == 10
    assert len(report["tau_b"]["values"]) == 5
    assert all(len(row) == 5 for row in report["rbo"]["values"])

    with open(directory / "label_map.csv", encoding="utf-8", newline="") as f:
        rows = list(csv.reader(f))
    assert rows[0] == ["node_id", "label"]
    assert len(rows) == 17

    scores = sorted(p.name for p in (directory / "scores").iterdir())
    assert len(scores) == 10

    svg = (directory / "tau_b.svg").read_text(encoding="utf-8")
    assert "cell-0-0-" in svg
    assert "cell-4-4-" in svg


def test_end_to_end_compare_is_reproducible(tmp_path):
    edges = tmp_path / "cliques.edges"
    _write_edges(edges, two_cliques(6).edges.tolist())
    runner = CliRunner()

    outputs = []
    for run in ("first", "second"):
        out = tmp_path / run
        result = runner.invoke(
            cli, ["compare", str(edges), "--seed", "11", "--workers", "2", "--out", str(out)]
        )
        assert result.exit_code == 0, result.output
        outputs.append(
            {
                name: (out / "cliques" / name).read_bytes()
                for name in ("report.json", "tau_b.csv", "rbo.csv", "tau_b.svg", "rbo.svg")
            }
        )

    assert outputs[0] == outputs[1]


def test_end_to_end_suite(tmp_path):
    runner = CliRunner()
    result = runner.invoke(
        cli, ["suite", str(FIXTURES / "manifest.txt"), "--no-svg", "--out", str(tmp_path)]
    )

    assert result.exit_code == 0, result.output
    summary = json.loads((tmp_path / "summary.json").read_text(encoding="utf-8"))
    assert [m["measure"] for m in summary["measures"]] == [m.value for m in COMMUNITY_MEASURES]
    assert summary["failures"] == []
    for name in ("barbell", "star"):
        assert (tmp_path / name / "report.md").exists()
    assert "# Centrality comparison suite" in (tmp_path / "summary.md").read_text(
        encoding="utf-8"
    )


# Published largest-component profiles:
# N, E, <k>, <d>, density, transitivity, assortativity, Q, mu
PUBLISHED_PROFILES = {
    "rt-twitter-copen": (761, 1029, 2.70, 5.35, 0.003, 0.060, -0.099, 0.695, 0.287),
    "socfb-Caltech36": (762, 16651, 43.70, 2.23, 0.057, 0.291, -0.066, 0.389, 0.410),
    "petster-friendships-hamster": (1788, 12476, 13.49, 3.45, 0.007, 0.090, -0.088, 0.391, 0.298),
    "ego-facebook": (4039, 88234, 43.69, 3.69, 0.010, 0.519, 0.063, 0.814, 0.077),
    "fb-pages-politician": (5908, 41729, 14.12, 4.66, 0.002, 0.301, 0.018, 0.836, 0.111),
    "socfb-Princeton12": (6575, 293307, 89.21, 2.67, 0.013, 0.163, 0.090, 0.417, 0.365),
    "arenas-pgp": (10680, 24316, 4.55, 7.48, 0.0004, 0.378, 0.238, 0.813, 0.172),
    "deezer_europe": (28281, 92752, 6.55, 6.44, 0.002, 0.095, 0.104, 0.565, 0.429),
}

WEAKLY_CORRELATED = ("bridging", "community_hub_bridge", "participation_coefficient")
STRONGLY_CORRELATED = ("community_based_mediator", "neighboring_communities")


def _check_profile(report: dict, published: tuple) -> None:
    n, m, avg_degree, avg_path, density, transitivity, assortativity, q, mu = published
    topology = report["topology"]
    assert (topology["n"], topology["m"]) == (n, m)
    assert topology["paths_sampled"] is None
    assert topology["avg_degree"] == pytest.approx(avg_degree, abs=0.01)
    assert topology["avg_shortest_path"] == pytest.approx(avg_path, abs=0.05)
    assert topology["density"] == pytest.approx(density, abs=0.01)
    assert topology["transitivity"] == pytest.approx(transitivity, abs=0.005)
    assert topology["assortativity"] == pytest.approx(assortativity, abs=0.005)
    # Detection is stochastic; only the order of magnitude of Q and mu is fixed.
    assert report["community"]["modularity"] == pytest.approx(q, abs=0.05)
    assert report["community"]["mixing_parameter"] == pytest.approx(mu, abs=0.05)


def _group_mean(outcome: dict, measures: tuple[str, ...]) -> float | None:
    values = [outcome["mean_abs_tau_b"][m] for m in measures]
    if any(v is None for v in values):
        return None
    return sum(values) / len(values)


@pytest.mark.skipif(
    "COMMCENT_DATA_DIR" not in os.environ,
    reason="set COMMCENT_DATA_DIR to a directory holding manifest.txt and the edge lists",
)
def test_dataset_suite(tmp_path):
    """Test the suite over the downloaded social networks listed in docs/datasets.md."""
    manifest = Path(os.environ["COMMCENT_DATA_DIR"]) / "manifest.txt"
    networks = load_manifest(manifest)

    runner = CliRunner()
    result = runner.invoke(cli, ["suite", str(manifest), "--workers", "4", "--out", str(tmp_path)])

    assert result.exit_code == 0, result.output
    summary = json.loads((tmp_path / "summary.json").read_text(encoding="utf-8"))
    assert len(summary["networks"]) == len(networks)
    for spec in networks:
        report = json.loads((tmp_path / spec.name / "report.json").read_text(encoding="utf-8"))
        for row in report["tau_b"]["values"]:
            assert all(-1.0 <= v <= 1.0 for v in row if v is not None)
        for row in report["rbo"]["values"]:
            assert all(0.0 <= v <= 1.0 for v in row if v is not None)
        if spec.name in PUBLISHED_PROFILES:
            _check_profile(report, PUBLISHED_PROFILES[spec.name])

    outcomes = [o for o in summary["per_network"] if o["network"] in PUBLISHED_PROFILES]
    if len(outcomes) == len(PUBLISHED_PROFILES):
        separated = 0
        for outcome in outcomes:
            weak = _group_mean(outcome, WEAKLY_CORRELATED)
            strong = _group_mean(outcome, STRONGLY_CORRELATED)
            if weak is not None and strong is not None and weak < strong:
                separated += 1
        assert separated >= 6, summary["per_network"]
