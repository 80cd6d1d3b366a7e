"""Figure specifications and the CSV-to-chart renderer.

Every chart plots log10 columns directly on a linear axis (the data files
already carry logarithms — nothing is recomputed here).  Empty cells mark
unavailable values and are skipped point-wise.  When a figure sweeps a
second variable (the density for the size sweeps, the part size for the
density sweeps), each group value gets its own line style and the legend
entry carries the group suffix.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)

_LINESTYLES = ("-", "--", ":", "-.")


class PlotError(ValueError):
    """Bad or unusable input data; nothing was written."""


@dataclass(frozen=True)
class Series:
    column: str
    label: str


@dataclass(frozen=True)
class FigureSpec:
    figure_id: str
    csv_path: str
    out_path: str
    x_column: str
    x_label: str
    y_label: str
    series: tuple[Series, ...]
    group_column: str | None = None


def fig1_spec(csv_path, out_path) -> FigureSpec:
    return FigureSpec(
        figure_id="fig1",
        csv_path=str(csv_path),
        out_path=str(out_path),
        x_column="delta_nominal",
        x_label="edge density",
        y_label="log10 hom(K_{3,3}, G)",
        series=(
            Series("exact_log10", "exact"),
            Series("comb_lb_log10", "combinatorial LB"),
            Series("basic_lb_log10", "entropy LB"),
            Series("refined_lb_log10", "refined entropy LB"),
            Series("sidorenko_lb_log10", "Sidorenko LB"),
        ),
    )


def fig2_spec(csv_path, out_path) -> FigureSpec:
    return FigureSpec(
        figure_id="fig2",
        csv_path=str(csv_path),
        out_path=str(out_path),
        x_column="delta_nominal",
        x_label="edge density",
        y_label="log10 lower bounds on hom(K_{10,10}, G)",
        series=(
            Series("comb_lb_log10", "combinatorial LB"),
            Series("basic_lb_log10", "entropy LB"),
            Series("refined_lb_log10", "refined entropy LB"),
            Series("sidorenko_lb_log10", "Sidorenko LB"),
        ),
        group_column="n",
    )


def fig3_spec(csv_path, out_path) -> FigureSpec:
    return FigureSpec(
        figure_id="fig3",
        csv_path=str(csv_path),
        out_path=str(out_path),
        x_column="n",
        x_label="target vertices",
        y_label="mean log10 count",
        series=(
            Series("mean_exact_log10", "exact (mean)"),
            Series("mean_general_lb_log10", "general LB (mean)"),
            Series("mean_ub_log10", "upper bound (mean)"),
        ),
        group_column="delta",
    )


def fig4_spec(csv_path, out_path) -> FigureSpec:
    return FigureSpec(
        figure_id="fig4",
        csv_path=str(csv_path),
        out_path=str(out_path),
        x_column="n",
        x_label="source vertices",
        y_label="mean log10 count",
        series=(
            Series("mean_general_lb_log10", "general LB (mean)"),
            Series("mean_ub_log10", "upper bound (mean)"),
        ),
        group_column="delta",
    )


FIGURE_BUILDERS = {
    "fig1": fig1_spec,
    "fig2": fig2_spec,
    "fig3": fig3_spec,
    "fig4": fig4_spec,
}


def build_spec(figure_id: str, csv_path, out_path) -> FigureSpec:
    try:
        builder = FIGURE_BUILDERS[figure_id]
    except KeyError:
        raise PlotError(f"unknown figure id {figure_id!r}") from None
    return builder(csv_path, out_path)


def _read_rows(spec: FigureSpec) -> list[dict]:
    with open(spec.csv_path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        fields = reader.fieldnames
        rows = list(reader)
    if not fields or not rows:
        raise PlotError(f"empty CSV: {spec.csv_path}")
    needed = [spec.x_column, *(s.column for s in spec.series)]
    if spec.group_column:
        needed.append(spec.group_column)
    for col in needed:
        if col not in fields:
            raise PlotError(f"column {col!r} missing from {spec.csv_path}")
    return rows


def _sorted_groups(rows: list[dict], column: str) -> list[str]:
    values = []
    for r in rows:
        if r[column] not in values:
            values.append(r[column])
    try:
        return sorted(values, key=float)
    except ValueError:
        return sorted(values)


def render(spec: FigureSpec):
    """Render one chart; returns the matplotlib Figure after saving it.

    Raises PlotError (and writes nothing) when the CSV is empty or lacks a
    referenced column.
    """
    rows = _read_rows(spec)
    groups = _sorted_groups(rows, spec.group_column) if spec.group_column else [None]

    fig, ax = plt.subplots(figsize=(7, 4.5))
    for gi, gval in enumerate(groups):
        subset = rows if gval is None else [r for r in rows if r[spec.group_column] == gval]
        style = _LINESTYLES[gi % len(_LINESTYLES)]
        for s in spec.series:
            xs, ys = [], []
            for r in subset:
                if r[s.column] == "":
                    continue  # unavailable value
                xs.append(float(r[spec.x_column]))
                ys.append(float(r[s.column]))
            label = s.label if gval is None else f"{s.label} ({spec.group_column}={gval})"
            ax.plot(xs, ys, linestyle=style, marker=".", label=label)
    ax.set_xlabel(spec.x_label)
    ax.set_ylabel(spec.y_label)
    ax.grid(True, alpha=0.3)
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(spec.out_path, dpi=150)
    return fig
