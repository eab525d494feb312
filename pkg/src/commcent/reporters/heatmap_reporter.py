"""SVG heatmaps of comparison matrices."""

from pathlib import Path

import matplotlib
from matplotlib.cm import ScalarMappable
from matplotlib.colors import BoundaryNorm, ListedColormap
from matplotlib.figure import Figure
from matplotlib.patches import Rectangle

from commcent.models.report import Band
from commcent.models.scores import ComparisonMatrix, StatisticKind

LOW_UPPER = 0.3
MEDIUM_UPPER = 0.6

BAND_COLORS: dict[Band, str] = {"low": "#ef8a62", "medium": "#f7f7f7", "high": "#67a9cf"}
BANDS = ListedColormap([BAND_COLORS["low"], BAND_COLORS["medium"], BAND_COLORS["high"]])

# Lower bound of the low band; tau-b can go negative, RBO cannot.
_FLOOR: dict[StatisticKind, float] = {"tau_b": -1.0, "rbo": 0.0}


def band_of(value: float) -> Band:
    """Agreement band: [-1, 0.3) low, [0.3, 0.6) medium, [0.6, 1] high."""
    if value < LOW_UPPER:
        return "low"
    if value < MEDIUM_UPPER:
        return "medium"
    return "high"


def band_norm(statistic: StatisticKind) -> BoundaryNorm:
    """Three-bin norm over the band thresholds of ``statistic``."""
    return BoundaryNorm([_FLOOR[statistic], LOW_UPPER, MEDIUM_UPPER, 1.0], BANDS.N, clip=True)


class HeatmapReporter:
    """Render a 5x5 comparison matrix as a self-contained, reproducible SVG.

    Cells are filled with the colour of their agreement band and carry the id
    ``cell-<row>-<column>-<band>``; undefined cells are hatched white rectangles with
    band ``undefined``.
    """

    def figure(self, matrix: ComparisonMatrix, title: str | None = None) -> Figure:
        n_rows, n_cols = len(matrix.rows), len(matrix.columns)
        fig = Figure(figsize=(1.2 * n_cols + 2.0, 1.0 * n_rows + 1.5), layout="constrained")
        ax = fig.add_subplot()
        for r, row in enumerate(matrix.values):
            for c, value in enumerate(row):
                # Row 0 drawn on top.
                y = n_rows - 1 - r
                if value is None:
                    cell = Rectangle(
                        (c, y), 1, 1, facecolor="white", edgecolor="grey", hatch="//"
                    )
                    cell.set_gid(f"cell-{r}-{c}-undefined")
                    ax.add_patch(cell)
                    continue
                band = band_of(value)
                cell = Rectangle((c, y), 1, 1, facecolor=BAND_COLORS[band], edgecolor="white")
                cell.set_gid(f"cell-{r}-{c}-{band}")
                ax.add_patch(cell)
                ax.text(c + 0.5, y + 0.5, f"{value:.2f}", ha="center", va="center", fontsize=9)

        ax.set_xlim(0, n_cols)
        ax.set_ylim(0, n_rows)
        ax.set_xticks([c + 0.5 for c in range(n_cols)])
        ax.set_xticklabels([m.symbol for m in matrix.columns])
        ax.set_yticks([n_rows - 1 - r + 0.5 for r in range(n_rows)])
        ax.set_yticklabels([m.symbol for m in matrix.rows])
        ax.tick_params(length=0)
        ax.set_aspect("equal")
        norm = band_norm(matrix.statistic)
        colorbar = fig.colorbar(
            ScalarMappable(norm=norm, cmap=BANDS), ax=ax, shrink=0.8, ticks=norm.boundaries
        )
        colorbar.ax.set_ylabel("low / medium / high")
        ax.set_title(title or matrix.statistic)
        return fig

    def generate(
        self, matrix: ComparisonMatrix, output_path: Path, title: str | None = None
    ) -> None:
        """Write the heatmap of ``matrix`` to ``output_path``."""
        fig = self.figure(matrix, title)
        with matplotlib.rc_context({"svg.hashsalt": "commcent", "svg.fonttype": "none"}):
            fig.savefig(output_path, format="svg", metadata={"Date": None})
