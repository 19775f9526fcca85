"""Render metric reports, comparison tables and plotting scripts."""
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple

import pandas as pd

from imbalance_metrics.model.comparison import ComparisonReport
from imbalance_metrics.model.heatmap import HeatmapGrid, sensitivity_boundary
from imbalance_metrics.model.metrics import (
    COMPARED_METRICS,
    METRIC_RANGES,
    MetricId,
    MetricReport,
)
from imbalance_metrics.report.formatters import (
    fmt_machine,
    fmt_metric,
    fmt_pair,
    round_machine,
)
from imbalance_metrics.report.templates import template

# Compared metrics first, then the building blocks
REPORT_METRICS: List[MetricId] = COMPARED_METRICS + [
    MetricId.REC,
    MetricId.PRC,
    MetricId.SEL,
]

NamedReport = Tuple[str, MetricReport]
NamedComparison = Tuple[str, str, ComparisonReport]


def _widths(rows: Sequence[Sequence[str]]) -> List[int]:
    return [max(len(row[i]) for row in rows) for i in range(len(rows[0]))]


def render_metric_report(report: MetricReport, precision: int = 2) -> str:
    rows = [["Metric", "Value"]] + [
        [metric.label, fmt_metric(report[metric], precision)] for metric in REPORT_METRICS
    ]
    return template("metric_report.txt").render(
        matrix=report.matrix,
        ir=report.ir,
        rows=rows,
        widths=_widths(rows),
    )


def metric_report_to_dict(report: MetricReport, significant_digits: int = 15) -> Dict[str, Any]:
    return {
        "matrix": report.matrix.as_dict(),
        "p": report.matrix.p(),
        "n": report.matrix.n(),
        "ir": round_machine(report.ir, significant_digits),
        "values": {
            metric.value: round_machine(report[metric], significant_digits)
            for metric in REPORT_METRICS
        },
    }


def metric_report_to_frame(report: MetricReport) -> pd.DataFrame:
    return pd.DataFrame(
        {
            "metric": [metric.value for metric in REPORT_METRICS],
            "value": [report[metric] for metric in REPORT_METRICS],
        }
    )


def render_metric_report_csv(report: MetricReport, significant_digits: int = 15) -> str:
    return metric_report_to_frame(report).to_csv(
        index=False, float_format=f"%.{significant_digits}g", lineterminator="\n"
    )


def _verdict(comparison: ComparisonReport) -> str:
    majority = comparison.majority_class
    suffix = f" (majority class: {majority})" if majority else " (balanced classes)"
    return comparison.verdict() + suffix


def render_comparison_table(
    methods: Sequence[NamedReport],
    pairs: Sequence[NamedComparison],
    precision: int = 2,
    title: Optional[str] = None,
    metrics: Sequence[MetricId] = COMPARED_METRICS,
) -> str:
    """Render per-method metric rows followed by the delta rows of the given pairs.

    Delta rows hold the [0, 1]-normalized differences, so MCC and Kappa differences are halved.
    """
    if len(methods) == 0:
        raise ValueError("A comparison table needs at least one method")

    header = ["Meth.", "TP", "TN"] + [metric.label for metric in metrics]
    method_rows = [
        [name, str(report.matrix.tp), str(report.matrix.tn)]
        + [fmt_metric(report[metric], precision) for metric in metrics]
        for name, report in methods
    ]
    delta_rows = [
        [fmt_pair(left, right), "", ""]
        + [fmt_metric(comparison.normalized_deltas[metric], precision) for metric in metrics]
        for left, right, comparison in pairs
    ]
    widths = _widths([header] + method_rows + delta_rows)
    first = methods[0][1]
    return template("comparison_table.txt").render(
        title=title,
        p=first.matrix.p(),
        n=first.matrix.n(),
        ir=first.ir,
        header=header,
        rule="-" * (sum(widths) + 2 * (len(widths) - 1)),
        widths=widths,
        method_rows=method_rows,
        delta_rows=delta_rows,
        verdicts=[
            (fmt_pair(left, right), _verdict(comparison)) for left, right, comparison in pairs
        ],
    )


def comparison_table_to_frame(
    methods: Sequence[NamedReport],
    pairs: Sequence[NamedComparison],
    metrics: Sequence[MetricId] = COMPARED_METRICS,
) -> pd.DataFrame:
    """Long table with one `method` row per classifier and one `delta` row per pair."""
    records = []
    for name, report in methods:
        record = {"row": name, "kind": "method", "tp": report.matrix.tp, "tn": report.matrix.tn}
        record.update({metric.value: report[metric] for metric in metrics})
        record["change_profile"] = ""
        records.append(record)
    for left, right, comparison in pairs:
        record = {"row": fmt_pair(left, right), "kind": "delta", "tp": None, "tn": None}
        record.update({metric.value: comparison.normalized_deltas[metric] for metric in metrics})
        record["change_profile"] = comparison.change_profile.value
        records.append(record)

    frame = pd.DataFrame.from_records(records)
    frame["tp"] = frame["tp"].astype("Int64")
    frame["tn"] = frame["tn"].astype("Int64")
    return frame


def render_comparison_csv(
    methods: Sequence[NamedReport],
    pairs: Sequence[NamedComparison],
    significant_digits: int = 15,
    metrics: Sequence[MetricId] = COMPARED_METRICS,
) -> str:
    return comparison_table_to_frame(methods, pairs, metrics).to_csv(
        index=False, float_format=f"%.{significant_digits}g", lineterminator="\n"
    )


def comparison_table_to_dict(
    methods: Sequence[NamedReport],
    pairs: Sequence[NamedComparison],
    significant_digits: int = 15,
) -> Dict[str, Any]:
    def rounded(values: Dict[MetricId, float]) -> Dict[str, float]:
        return {
            metric.value: round_machine(value, significant_digits)
            for metric, value in values.items()
        }

    return {
        "methods": [
            {"name": name, **metric_report_to_dict(report, significant_digits)}
            for name, report in methods
        ],
        "comparisons": [
            {
                "left": left,
                "right": right,
                "change_profile": comparison.change_profile.value,
                "majority_class": comparison.majority_class,
                "deltas": rounded(comparison.deltas),
                "normalized_deltas": rounded(comparison.normalized_deltas),
            }
            for left, right, comparison in pairs
        ],
    }


def render_plot_script(
    grid: HeatmapGrid,
    data_file: Path,
    terminal: str = "pngcairo",
    contour_levels: int = 10,
    image_file: Optional[Path] = None,
) -> str:
    """A gnuplot script drawing `data_file` (written by `grid_to_table`) as a heat map.

    HMNC maps also get the equal-sensitivity boundary drawn over the map.
    """
    data_file = Path(data_file)
    if image_file is None:
        image_file = data_file.with_suffix(".png")

    boundary = None
    if grid.metric == MetricId.HMNC:
        boundary = sensitivity_boundary(grid.p, grid.n).points

    z_min, z_max = METRIC_RANGES[grid.metric]
    return template("heatmap.gp").render(
        label=grid.metric.label,
        p=grid.p,
        n=grid.n,
        ir=grid.ir,
        terminal=terminal,
        data_file=data_file.name,
        image_file=Path(image_file).name,
        script_file=data_file.with_suffix(".gp").name,
        tp_steps=len(grid.tp_axis),
        tn_steps=len(grid.tn_axis),
        contour_levels=contour_levels,
        z_min=fmt_machine(z_min, 3),
        z_max=fmt_machine(z_max, 3),
        boundary=boundary,
    )
