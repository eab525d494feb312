"""JSON report generator."""

import json
from pathlib import Path

from pydantic import BaseModel


class JSONReporter:
    """Generate JSON reports from network and suite models."""

    def render(self, report: BaseModel) -> str:
        # Sorted keys and no timestamps keep reruns byte-identical.
        data = report.model_dump(mode="json")
        return json.dumps(data, indent=2, sort_keys=True, ensure_ascii=False) + "\n"

    def generate(self, report: BaseModel, output_path: Path) -> None:
        """Generate JSON report file.

        Args:
            report: NetworkReport or SuiteSummary to export
            output_path: Path where JSON file should be written
        """
        with open(output_path, "w", encoding="utf-8") as f:
            f.write(self.render(report))
