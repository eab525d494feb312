"""CSV exports: score vectors, comparison matrices and the label map."""

import csv
from pathlib import Path

from commcent.analysis.community import save_partition
from commcent.models.graph import Graph
from commcent.models.partition import Partition
from commcent.models.report import NetworkReport
from commcent.models.scores import ComparisonMatrix


def _cell(value: float | None) -> str:
    return "" if value is None else repr(value)


class CSVReporter:
    """Write the tabular artifacts of a network run."""

    def write_label_map(self, graph: Graph, output_path: Path) -> Path:
        """Dense node id to original label."""
        with open(output_path, "w", encoding="utf-8", newline="") as f:
            writer = csv.writer(f, lineterminator="\n")
            writer.writerow(["node_id", "label"])
            writer.writerows(enumerate(graph.labels))
        return output_path

    def write_partition(self, graph: Graph, partition: Partition, output_path: Path) -> Path:
        save_partition(output_path, graph, partition)
        return output_path

    def write_scores(self, report: NetworkReport, directory: Path) -> list[Path]:
        """One ``<measure>.csv`` per score vector, rows ``node_id,label,score``."""
        directory.mkdir(parents=True, exist_ok=True)
        written = []
        for vector in report.scores:
            path = directory / f"{vector.measure.value}.csv"
            with open(path, "w", encoding="utf-8", newline="") as f:
                writer = csv.writer(f, lineterminator="\n")
                writer.writerow(["node_id", "label", "score"])
                for node, (label, score) in enumerate(zip(report.node_labels, vector.values)):
                    writer.writerow([node, label, repr(score)])
            written.append(path)
        return written

    def write_matrix(self, matrix: ComparisonMatrix, output_path: Path) -> Path:
        """Classical measures as rows, community-aware measures as columns.

        Undefined cells are left empty.
        """
        with open(output_path, "w", encoding="utf-8", newline="") as f:
            writer = csv.writer(f, lineterminator="\n")
            writer.writerow(["measure", *(c.value for c in matrix.columns)])
            for row, values in zip(matrix.rows, matrix.values):
                writer.writerow([row.value, *(_cell(v) for v in values)])
        return output_path
