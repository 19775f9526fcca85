"""Pairwise comparison of two classifiers evaluated on the same test set."""
from dataclasses import dataclass
from enum import Enum, unique
from typing import Dict, List, NamedTuple, Optional, Sequence

from imbalance_metrics.model.confusion import ConfusionMatrix
from imbalance_metrics.model.errors import MismatchedPopulationError
from imbalance_metrics.model.metrics import (
    COMPARED_METRICS,
    MetricId,
    MetricReport,
    evaluate_all,
)


@unique
class ChangeProfile(Enum):
    """Which class's correctly classified count differs between two classifiers."""

    MAJORITY_ONLY = "MAJORITY_ONLY"
    """Only the majority class count differs."""

    MINORITY_ONLY = "MINORITY_ONLY"
    """Only the minority class count differs."""

    BOTH = "BOTH"
    """Both counts differ."""

    NEITHER = "NEITHER"
    """The classifiers have identical confusion matrices."""

    def describe(self) -> str:
        return _DESCRIPTIONS[self]


_DESCRIPTIONS = {
    ChangeProfile.MAJORITY_ONLY: "the classifiers differ on the majority class only",
    ChangeProfile.MINORITY_ONLY: "the classifiers differ on the minority class only",
    ChangeProfile.BOTH: "the classifiers differ on both classes",
    ChangeProfile.NEITHER: "the classifiers do not differ",
}


class Population(NamedTuple):
    """Class totals shared by the compared classifiers."""

    p: int
    n: int
    ir: float

    @property
    def majority_class(self) -> Optional[str]:
        """`"positive"` or `"negative"`, `None` for balanced classes."""
        if self.p > self.n:
            return "positive"
        if self.n > self.p:
            return "negative"
        return None


@dataclass(frozen=True)
class ComparisonReport:
    """Metric differences between two classifiers.

    Attributes:
        left: metrics of the first classifier.
        right: metrics of the second classifier.
        deltas: |left - right| per metric, unrounded.
        normalized_deltas: |left - right| per metric after mapping every metric onto [0, 1];
            equal to `deltas` except for MCC and KAPPA, whose differences are halved.
        change_profile: which class's correct count differs.
        shared_totals: class totals of the common test set.
    """

    left: MetricReport
    right: MetricReport
    deltas: Dict[MetricId, float]
    normalized_deltas: Dict[MetricId, float]
    change_profile: ChangeProfile
    shared_totals: Population

    @property
    def majority_class(self) -> Optional[str]:
        return self.shared_totals.majority_class

    def verdict(self) -> str:
        return f"{self.change_profile.value}: {self.change_profile.describe()}"


def check_same_population(left: ConfusionMatrix, right: ConfusionMatrix) -> None:
    if left.p() != right.p() or left.n() != right.n():
        raise MismatchedPopulationError(
            "Classifiers can only be compared on the same test set: "
            f"left has P={left.p()}, N={left.n()}, right has P={right.p()}, N={right.n()}"
        )


def change_profile(left: ConfusionMatrix, right: ConfusionMatrix) -> ChangeProfile:
    """Classify which class's correct count differs.

    With balanced classes the positive class is treated as the majority class.
    """
    check_same_population(left, right)
    tp_changed = left.tp != right.tp
    tn_changed = left.tn != right.tn
    if tp_changed and tn_changed:
        return ChangeProfile.BOTH
    if not tp_changed and not tn_changed:
        return ChangeProfile.NEITHER

    positive_is_majority = left.p() >= left.n()
    if tp_changed == positive_is_majority:
        return ChangeProfile.MAJORITY_ONLY
    return ChangeProfile.MINORITY_ONLY


def compare(left: ConfusionMatrix, right: ConfusionMatrix) -> ComparisonReport:
    """Compare two classifiers evaluated on the same test set.

    Raises:
        MismatchedPopulationError: if the matrices have different P or N.
    """
    check_same_population(left, right)
    left_report = evaluate_all(left)
    right_report = evaluate_all(right)

    deltas = {
        metric: abs(left_report.values[metric] - right_report.values[metric])
        for metric in MetricId
    }
    normalized_deltas = {
        metric: abs(left_report.normalized(metric) - right_report.normalized(metric))
        for metric in MetricId
    }

    return ComparisonReport(
        left=left_report,
        right=right_report,
        deltas=deltas,
        normalized_deltas=normalized_deltas,
        change_profile=change_profile(left, right),
        shared_totals=Population(left.p(), left.n(), left_report.ir),
    )


@dataclass(frozen=True)
class RowRanking:
    """Metrics of one comparison ordered by the size of their difference.

    Attributes:
        order: metrics by increasing delta, ties in declaration order.
        ranks: competition rank per metric (1 = smallest delta; equal deltas share a rank).
        deltas: the ranked delta per metric.
    """

    order: List[MetricId]
    ranks: Dict[MetricId, int]
    deltas: Dict[MetricId, float]

    def is_minimum(self, metric: MetricId) -> bool:
        return self.ranks[metric] == 1

    def is_maximum(self, metric: MetricId) -> bool:
        return all(self.deltas[metric] >= delta for delta in self.deltas.values())

    @property
    def smallest(self) -> MetricId:
        return self.order[0]

    @property
    def largest(self) -> MetricId:
        return max(self.order, key=lambda metric: self.deltas[metric])


_DECLARATION_ORDER = {metric: index for index, metric in enumerate(MetricId)}


def table_row_ranking(
    reports: Sequence[ComparisonReport],
    metric_set: Optional[Sequence[MetricId]] = None,
    normalized: bool = True,
) -> List[RowRanking]:
    """Rank the metric deltas of each comparison.

    Args:
        reports: the comparisons, one per table row.
        metric_set: the metrics to rank (default: the seven table metrics).
        normalized: rank the [0, 1]-normalized deltas (as the tables print them) instead of
            the raw ones.

    Returns:
        One ranking per report, in the same order.
    """
    if len(reports) == 0:
        raise ValueError("At least one comparison is required for a ranking")
    metrics = list(metric_set) if metric_set is not None else list(COMPARED_METRICS)

    rankings = []
    for report in reports:
        source = report.normalized_deltas if normalized else report.deltas
        deltas = {metric: source[metric] for metric in metrics}
        order = sorted(metrics, key=lambda m: (deltas[m], _DECLARATION_ORDER[m]))
        ranks = {
            metric: 1 + sum(1 for other in metrics if deltas[other] < deltas[metric])
            for metric in metrics
        }
        rankings.append(RowRanking(order=order, ranks=ranks, deltas=deltas))
    return rankings
