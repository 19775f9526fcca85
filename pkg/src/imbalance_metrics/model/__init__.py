"""The model module handles all computation: confusion matrices, metrics and their analysis."""
from imbalance_metrics.model.confusion import (
    ConfusionMatrix,
    LabeledPredictions,
    from_labels,
    from_totals,
    new_matrix,
)
from imbalance_metrics.model.metrics import MetricId, MetricReport, evaluate_all

__all__ = [
    "ConfusionMatrix",
    "LabeledPredictions",
    "MetricId",
    "MetricReport",
    "evaluate_all",
    "from_labels",
    "from_totals",
    "new_matrix",
]
