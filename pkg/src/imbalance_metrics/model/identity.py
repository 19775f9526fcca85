"""HMNC, ACC, BACC and G-mean coincide when recall equals selectivity."""
from dataclasses import dataclass
from itertools import combinations
from typing import Dict, Optional

from imbalance_metrics.model.confusion import ConfusionMatrix
from imbalance_metrics.model.metrics import METRICS, MetricId, selectivity

IDENTITY_METRICS = (MetricId.HMNC, MetricId.ACC, MetricId.BACC, MetricId.GMEAN)


@dataclass(frozen=True)
class IdentityCheck:
    """Outcome of an identity check.

    Attributes:
        holds: whether the four measures agree within the tolerance.
        values: the four measure values.
        max_difference: largest pairwise difference among the values.
        equal_rates: whether TP / P = TN / N holds exactly (TP * N = TN * P).
        common_value: TN / N when `equal_rates`, else `None`.
    """

    holds: bool
    values: Dict[MetricId, float]
    max_difference: float
    equal_rates: bool
    common_value: Optional[float]

    def __bool__(self) -> bool:
        return self.holds


def identity_check(cm: ConfusionMatrix, tol: float = 1e-12) -> IdentityCheck:
    values = {metric: METRICS[metric](cm) for metric in IDENTITY_METRICS}
    max_difference = max(abs(a - b) for a, b in combinations(values.values(), 2))
    equal_rates = cm.tp * cm.n() == cm.tn * cm.p()
    return IdentityCheck(
        holds=max_difference <= tol,
        values=values,
        max_difference=max_difference,
        equal_rates=equal_rates,
        common_value=selectivity(cm) if equal_rates else None,
    )
