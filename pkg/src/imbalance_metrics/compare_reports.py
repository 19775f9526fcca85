import json
import warnings
from dataclasses import dataclass, field
from itertools import combinations
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

from multimethod import multimethod

from imbalance_metrics.config import Settings
from imbalance_metrics.evaluation_report import EvaluationReport
from imbalance_metrics.model.comparison import (
    ComparisonReport,
    RowRanking,
    check_same_population,
)
from imbalance_metrics.model.comparison import compare as compare_matrices
from imbalance_metrics.model.comparison import table_row_ranking
from imbalance_metrics.model.confusion import ConfusionMatrix
from imbalance_metrics.model.metrics import MetricReport, evaluate_all
from imbalance_metrics.report.render import (
    comparison_table_to_dict,
    render_comparison_csv,
    render_comparison_table,
)
from imbalance_metrics.utils.logger import logger


@multimethod
def _as_matrix(item: Any) -> ConfusionMatrix:
    raise TypeError(f"Cannot compare an object of type {type(item).__name__}")


@_as_matrix.register
def _matrix_of_matrix(item: ConfusionMatrix) -> ConfusionMatrix:
    return item


@_as_matrix.register
def _matrix_of_evaluation(item: EvaluationReport) -> ConfusionMatrix:
    return item.matrix


@_as_matrix.register
def _matrix_of_metrics(item: MetricReport) -> ConfusionMatrix:
    return item.matrix


@dataclass
class ComparisonTable:
    """Several classifiers on one test set with the pairwise differences of their metrics.

    Attributes:
        names: one name per classifier, in input order.
        reports: the metrics of each classifier.
        pairs: (left name, right name, comparison), in the requested order.
        config: the settings used to render the table.
        title: an optional heading of the text rendering.
    """

    names: List[str]
    reports: List[MetricReport]
    pairs: List[Tuple[str, str, ComparisonReport]]
    config: Settings = field(default_factory=Settings)
    title: Optional[str] = None

    @property
    def methods(self) -> List[Tuple[str, MetricReport]]:
        return list(zip(self.names, self.reports))

    def comparison(self, left: str, right: str) -> ComparisonReport:
        for pair_left, pair_right, report in self.pairs:
            if (pair_left, pair_right) == (left, right):
                return report
        raise KeyError(f"No comparison of {left!r} with {right!r} in this table")

    def rankings(self, normalized: bool = True) -> List[RowRanking]:
        """Rank the metric deltas of each pair (see `table_row_ranking`)."""
        return table_row_ranking(
            [report for _, _, report in self.pairs], normalized=normalized
        )

    def to_text(self) -> str:
        return render_comparison_table(
            self.methods,
            self.pairs,
            precision=self.config.report.precision,
            title=self.title,
        )

    def to_csv(self) -> str:
        return render_comparison_csv(
            self.methods, self.pairs, self.config.report.machine_precision
        )

    def to_dict(self) -> Dict[str, Any]:
        return comparison_table_to_dict(
            self.methods, self.pairs, self.config.report.machine_precision
        )

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def render(self, output_format: Optional[str] = None) -> str:
        output_format = output_format or self.config.output.format.value
        renderers = {"text": self.to_text, "csv": self.to_csv, "json": self.to_json}
        if output_format not in renderers:
            raise ValueError(
                f"Unknown output format {output_format!r}; expected text, csv or json"
            )
        return renderers[output_format]()

    def to_file(self, output_file: Union[str, Path]) -> Path:
        output_file = Path(output_file)
        formats = {".txt": "text", ".csv": "csv", ".json": "json"}
        if output_file.suffix not in formats:
            suffix = output_file.suffix
            output_file = output_file.with_suffix(".txt")
            warnings.warn(
                f"Extension {suffix} not supported. For now we assume .txt was intended. "
                f"To remove this warning, please use .txt, .csv or .json."
            )
        output_file.write_text(self.render(formats[output_file.suffix]), encoding="utf-8")
        return output_file


def compare(
    reports: Sequence[Union[ConfusionMatrix, EvaluationReport, MetricReport]],
    names: Optional[Sequence[str]] = None,
    pairs: Optional[Sequence[Tuple[int, int]]] = None,
    config: Optional[Settings] = None,
    title: Optional[str] = None,
) -> ComparisonTable:
    """Compare classifiers evaluated on the same test set.

    Args:
        reports: two or more classifiers, as matrices or reports.
        names: the classifier names (default "1", "2", ...).
        pairs: 0-based (left, right) index pairs to compare (default: every pair i < j).
        config: settings used to render the table.
        title: an optional heading of the text rendering.

    Returns:
        The comparison table.

    Raises:
        MismatchedPopulationError: if the classifiers do not share P and N.
    """
    if len(reports) < 2:
        raise ValueError("At least two classifiers are required for a comparison")

    matrices = [_as_matrix(report) for report in reports]
    names = list(names) if names is not None else [str(i + 1) for i in range(len(matrices))]
    if len(names) != len(matrices):
        raise ValueError(f"Got {len(names)} names for {len(matrices)} classifiers")
    if len(set(names)) != len(names):
        raise ValueError(f"Classifier names must be unique, got {names}")

    for other in matrices[1:]:
        check_same_population(matrices[0], other)

    index_pairs = list(pairs) if pairs is not None else list(combinations(range(len(matrices)), 2))
    logger.info_def_run("comparison", matrices[0].p(), matrices[0].n())

    compared = [
        (names[i], names[j], compare_matrices(matrices[i], matrices[j]))
        for i, j in index_pairs
    ]
    return ComparisonTable(
        names=names,
        reports=[evaluate_all(matrix) for matrix in matrices],
        pairs=compared,
        config=config if config is not None else Settings(),
        title=title,
    )
