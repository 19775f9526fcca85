"""Regenerate the reference comparison tables and the heat map data behind the figures."""
from dataclasses import dataclass, field
from functools import partial
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple, Union

import yaml
from dacite import Config as DaciteConfig
from dacite import DaciteError, from_dict

from imbalance_metrics.compare_reports import ComparisonTable, compare
from imbalance_metrics.config import Settings
from imbalance_metrics.model.confusion import from_totals
from imbalance_metrics.model.errors import InputError
from imbalance_metrics.model.heatmap import generate_grid, grid_to_table
from imbalance_metrics.model.metrics import MetricId
from imbalance_metrics.report.render import render_plot_script
from imbalance_metrics.report.templates import template
from imbalance_metrics.utils.logger import logger
from imbalance_metrics.utils.paths import get_reference_tables
from imbalance_metrics.utils.progress_bar import progress, stage_bar

FIXTURE_VERSION = 1
TARGETS = ("tables", "figures", "all")
_EXTENSIONS = {"text": "txt", "csv": "csv", "json": "json"}


@dataclass(frozen=True)
class ReferenceMethod:
    name: str
    tp: int
    tn: int
    values: Dict[MetricId, float]


@dataclass(frozen=True)
class ReferenceDelta:
    left: str
    right: str
    values: Dict[MetricId, float]


@dataclass(frozen=True)
class ReferenceTable:
    ir: str
    p: int
    n: int
    methods: List[ReferenceMethod]
    deltas: List[ReferenceDelta]


@dataclass(frozen=True)
class Erratum:
    ir: str
    left: str
    right: str
    metric: MetricId
    printed: float
    exact: float

    def describe(self) -> str:
        return (
            f"IR={self.ir} |{self.left}-{self.right}| {self.metric.value}: "
            f"printed {self.printed:g}, exact {self.exact:g}"
        )


@dataclass(frozen=True)
class ReferenceTables:
    tolerance: float
    metrics: List[MetricId]
    tables: List[ReferenceTable]
    errata: List[Erratum]

    def is_erratum(self, ir: str, left: str, right: str, metric: MetricId) -> bool:
        return any(
            (e.ir, e.left, e.right, e.metric) == (ir, left, right, metric)
            for e in self.errata
        )


@dataclass
class ReproSummary:
    """Outcome of a reproduction run.

    Attributes:
        tables: table files written.
        figures: grid files written (plotting scripts excluded).
        checked_cells: printed cells compared with their recomputed value.
        mismatches: descriptions of cells outside the tolerance.
        errata: descriptions of known misprints, excluded from the check.
    """

    tables: List[Path] = field(default_factory=list)
    figures: List[Path] = field(default_factory=list)
    checked_cells: int = 0
    mismatches: List[str] = field(default_factory=list)
    errata: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return len(self.mismatches) == 0

    @property
    def status(self) -> str:
        return "PASS" if self.passed else "FAIL"

    def render(self, root: Optional[Path] = None) -> str:
        def relative(path: Path) -> str:
            return path.relative_to(root).as_posix() if root is not None else path.as_posix()

        return template("summary.txt").render(
            status=self.status,
            tables=[relative(path) for path in self.tables],
            checked_cells=self.checked_cells,
            mismatches=self.mismatches,
            errata=self.errata,
            figures=[relative(path) for path in self.figures],
        )


def _metric_values(metrics: List[MetricId], values: List[Any]) -> Dict[MetricId, float]:
    if len(values) != len(metrics):
        raise InputError(f"Expected {len(metrics)} values, got {len(values)}: {values}")
    return {metric: float(value) for metric, value in zip(metrics, values)}


def load_reference_tables(fixture: Optional[Union[Path, str]] = None) -> ReferenceTables:
    """Load the reference tables fixture (the packaged one by default).

    Value rows are listed in the order of the fixture's `metrics` and become
    `Dict[MetricId, float]` mappings.

    Raises:
        InputError: on an unsupported version, a missing field or a row of the wrong length.
    """
    fixture = Path(fixture) if fixture is not None else get_reference_tables()
    with open(fixture) as f:
        data = yaml.safe_load(f) or {}

    if data.get("version") != FIXTURE_VERSION:
        raise InputError(
            f"Unsupported reference tables version {data.get('version')!r}, expected {FIXTURE_VERSION}"
        )

    try:
        metrics = [MetricId.parse(name) for name in data["metrics"]]
        payload = {
            "tolerance": data["tolerance"],
            "metrics": metrics,
            "tables": [{**table, "p": data["p"]} for table in data["tables"]],
            "errata": data.get("errata") or [],
        }
        return from_dict(
            data_class=ReferenceTables,
            data=payload,
            config=DaciteConfig(
                type_hooks={
                    Dict[MetricId, float]: partial(_metric_values, metrics),
                    MetricId: lambda value: value if isinstance(value, MetricId) else MetricId.parse(value),
                    float: float,
                },
                cast=[str],
            ),
        )
    except (DaciteError, KeyError, TypeError, ValueError) as e:
        raise InputError(f"Malformed reference tables {fixture}: {e}") from e


def build_table(reference: ReferenceTable, config: Optional[Settings] = None) -> ComparisonTable:
    """Recompute one reference table from its methods' (TP, TN)."""
    names = [method.name for method in reference.methods]
    matrices = [
        from_totals(method.tp, method.tn, reference.p, reference.n)
        for method in reference.methods
    ]
    pairs = [(names.index(delta.left), names.index(delta.right)) for delta in reference.deltas]
    return compare(
        matrices,
        names=names,
        pairs=pairs,
        config=config,
        title=f"IR={reference.ir}, P={reference.p}, N={reference.n}",
    )


def check_table(
    reference: ReferenceTable,
    table: ComparisonTable,
    tables: ReferenceTables,
    summary: ReproSummary,
) -> None:
    """Compare every printed cell of `reference` with the recomputed `table`."""
    for method, report in zip(reference.methods, table.reports):
        for metric, printed in method.values.items():
            summary.checked_cells += 1
            if abs(report[metric] - printed) > tables.tolerance:
                summary.mismatches.append(
                    f"IR={reference.ir} method {method.name} {metric.value}: "
                    f"printed {printed:g}, computed {report[metric]:.4f}"
                )

    for delta in reference.deltas:
        comparison = table.comparison(delta.left, delta.right)
        for metric, printed in delta.values.items():
            if tables.is_erratum(reference.ir, delta.left, delta.right, metric):
                continue
            summary.checked_cells += 1
            computed = comparison.normalized_deltas[metric]
            if abs(computed - printed) > tables.tolerance:
                summary.mismatches.append(
                    f"IR={reference.ir} |{delta.left}-{delta.right}| {metric.value}: "
                    f"printed {printed:g}, computed {computed:.4f}"
                )


def figure_name(metric: MetricId, ir: str) -> str:
    return f"{metric.value.lower()}_ir_{ir}.csv"


def _write_tables(
    tables: ReferenceTables, config: Settings, out: Path, summary: ReproSummary
) -> None:
    extension = _EXTENSIONS[config.output.format.value]

    def run(reference: ReferenceTable) -> Path:
        table = build_table(reference, config)
        check_table(reference, table, tables, summary)
        path = out / f"table_ir_{reference.ir}.{extension}"
        path.write_text(table.render(), encoding="utf-8")
        return path

    with stage_bar(len(tables.tables), "Reproduce tables", config.progress_bar) as bar:
        step = progress(run, bar, lambda reference: f"IR={reference.ir}")
        for reference in tables.tables:
            summary.tables.append(step(reference))

    summary.errata.extend(erratum.describe() for erratum in tables.errata)


def _write_figures(
    tables: ReferenceTables, config: Settings, out: Path, summary: ReproSummary
) -> None:
    figures = out / "figures"
    figures.mkdir(parents=True, exist_ok=True)
    settings = config.heatmap
    jobs: List[Tuple[ReferenceTable, MetricId]] = [
        (reference, metric) for reference in tables.tables for metric in settings.metrics
    ]

    def run(reference: ReferenceTable, metric: MetricId) -> Path:
        grid = generate_grid(
            metric,
            reference.p,
            reference.n,
            tp_steps=settings.tp_steps,
            tn_steps=settings.tn_steps,
            pool_size=config.pool_size,
        )
        path = figures / figure_name(metric, reference.ir)
        path.write_text(grid_to_table(grid, settings.significant_digits), encoding="utf-8")
        if settings.plot_script:
            path.with_suffix(".gp").write_text(
                render_plot_script(
                    grid,
                    path,
                    terminal=settings.terminal,
                    contour_levels=settings.contour_levels,
                ),
                encoding="utf-8",
            )
        return path

    with stage_bar(len(jobs), "Reproduce figures", config.progress_bar) as bar:
        step = progress(run, bar, lambda reference, metric: f"{metric.value} IR={reference.ir}")
        for reference, metric in jobs:
            summary.figures.append(step(reference, metric))


def run_repro(
    out: Union[Path, str],
    target: str = "all",
    config: Optional[Settings] = None,
    fixture: Optional[Union[Path, str]] = None,
) -> ReproSummary:
    """Reproduce the tables and/or figures into `out` and write `summary.txt`.

    Args:
        out: the output directory, created when missing.
        target: `tables`, `figures` or `all`.
        config: output format, display precision and heat map settings.
        fixture: an alternative reference tables file.

    Returns:
        The summary; `passed` is false when a printed cell is not reproduced.
    """
    if target not in TARGETS:
        raise ValueError(f"Unknown repro target {target!r}; expected one of {TARGETS}")
    config = config if config is not None else Settings()
    out = Path(out)
    out.mkdir(parents=True, exist_ok=True)

    tables = load_reference_tables(fixture)
    summary = ReproSummary()
    logger.info(f"[METRICS] Reproducing {target} into {out}")

    if target in ("tables", "all"):
        _write_tables(tables, config, out, summary)
    if target in ("figures", "all"):
        _write_figures(tables, config, out, summary)

    (out / "summary.txt").write_text(summary.render(root=out), encoding="utf-8")
    if not summary.passed:
        logger.warning(f"[METRICS] {len(summary.mismatches)} reproduced cell(s) disagree")
    return summary
