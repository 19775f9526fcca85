"""Main module of imbalance-metrics.

.. include:: ../../README.md
"""
from imbalance_metrics.compare_reports import ComparisonTable, compare
from imbalance_metrics.evaluation_report import EvaluationReport, load_report_json
from imbalance_metrics.model.confusion import (
    ConfusionMatrix,
    LabeledPredictions,
    from_labels,
    from_totals,
    new_matrix,
)
from imbalance_metrics.model.heatmap import generate_grid, sensitivity_boundary
from imbalance_metrics.model.identity import identity_check
from imbalance_metrics.model.metrics import MetricId, MetricReport, evaluate_all
from imbalance_metrics.model.sensitivity import hmnc_sensitivity
from imbalance_metrics.version import __version__

__all__ = [
    "ComparisonTable",
    "ConfusionMatrix",
    "EvaluationReport",
    "LabeledPredictions",
    "MetricId",
    "MetricReport",
    "__version__",
    "compare",
    "evaluate_all",
    "from_labels",
    "from_totals",
    "generate_grid",
    "hmnc_sensitivity",
    "identity_check",
    "load_report_json",
    "new_matrix",
    "sensitivity_boundary",
]
