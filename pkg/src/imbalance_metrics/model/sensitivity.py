"""Local sensitivity of a metric to the class-relative correct counts.

Derivatives are taken with respect to the fractions TP / P (recall) and TN / N
(selectivity) with the class totals held fixed, so a unit change means "every
example of that class moves from wrong to right".
"""
import math
from dataclasses import dataclass
from typing import Optional

from imbalance_metrics.model.confusion import ConfusionMatrix
from imbalance_metrics.model.errors import NegativeCountError, UndefinedRatioError
from imbalance_metrics.model.metrics import METRICS, MetricId


@dataclass(frozen=True)
class SensitivityField:
    """Per-fraction partial derivatives of a metric at one (TP, TN) point.

    Attributes:
        tp: correct positives at the point.
        tn: correct negatives at the point.
        d_rec: derivative with respect to TP / P.
        d_sel: derivative with respect to TN / N.
    """

    tp: float
    tn: float
    d_rec: float
    d_sel: float

    @property
    def ratio(self) -> float:
        """d_sel / d_rec; above 1 the metric reacts more to the negative class.

        Raises:
            UndefinedRatioError: where d_rec vanishes (TN = 0 for HMNC).
        """
        if self.d_rec == 0:
            raise UndefinedRatioError(
                f"The sensitivity ratio is undefined at TP={self.tp}, TN={self.tn}: "
                "the derivative with respect to TP / P is 0"
            )
        return self.d_sel / self.d_rec

    @property
    def more_sensitive_to(self) -> Optional[str]:
        """`"negative"`, `"positive"`, or `None` on the equal-sensitivity boundary."""
        if self.d_sel > self.d_rec:
            return "negative"
        if self.d_rec > self.d_sel:
            return "positive"
        return None


@dataclass(frozen=True)
class ContinuousCounts(ConfusionMatrix):
    """Confusion counts extended to real values, for derivative evaluation only."""

    tp: float
    tn: float
    fp: float
    fn: float

    def __post_init__(self) -> None:
        for name in ("tp", "tn", "fp", "fn"):
            if getattr(self, name) < 0:
                raise NegativeCountError(f"`{name}` must be >= 0, got {getattr(self, name)}")


def hmnc_sensitivity(cm: ConfusionMatrix) -> SensitivityField:
    """Analytic derivatives of HMNC = TP TN M / ((TP + TN) P N).

    d_rec = M TN^2 / ((TP + TN)^2 N) and d_sel = M TP^2 / ((TP + TN)^2 P), so the ratio
    is TP^2 N / (TN^2 P) and equals 1 on TP / TN = sqrt(P / N).

    Raises:
        UndefinedRatioError: at TP + TN = 0, where HMNC is not differentiable.
    """
    total = cm.tp + cm.tn
    if total == 0:
        raise UndefinedRatioError("HMNC is not differentiable at TP = TN = 0")
    scale = cm.m() / (total * total)
    return SensitivityField(
        tp=cm.tp,
        tn=cm.tn,
        d_rec=scale * cm.tn * cm.tn / cm.n(),
        d_sel=scale * cm.tp * cm.tp / cm.p(),
    )


def gmean_sensitivity(cm: ConfusionMatrix) -> SensitivityField:
    """Analytic derivatives of G-mean = sqrt(REC SEL); the ratio REC / SEL does not depend on IR.

    Raises:
        UndefinedRatioError: when TP = 0 or TN = 0 (infinite slope).
    """
    if cm.tp == 0 or cm.tn == 0:
        raise UndefinedRatioError("G-mean has an infinite slope where TP = 0 or TN = 0")
    rec = cm.tp / cm.p()
    sel = cm.tn / cm.n()
    return SensitivityField(
        tp=cm.tp,
        tn=cm.tn,
        d_rec=0.5 * math.sqrt(sel / rec),
        d_sel=0.5 * math.sqrt(rec / sel),
    )


def finite_difference_sensitivity(
    cm: ConfusionMatrix, metric: MetricId = MetricId.HMNC, step: float = 1e-3
) -> SensitivityField:
    """Central-difference derivatives of any metric, with the class totals held fixed.

    Args:
        cm: the point of evaluation; TP and TN must lie at least `step` inside [0, P] and [0, N].
        metric: the metric to differentiate.
        step: the perturbation, in counts. A step of one count has a relative truncation
            error of 1 / ((TP + TN)^2 - 1) for HMNC.
    """
    if step <= 0:
        raise ValueError(f"`step` must be positive, got {step}")
    p, n = cm.p(), cm.n()
    if not (step <= cm.tp <= p - step and step <= cm.tn <= n - step):
        raise ValueError(
            f"Central differences need an interior point, got TP={cm.tp} of {p}, TN={cm.tn} of {n}"
        )

    compute = METRICS[metric]

    def at(tp: float, tn: float) -> float:
        return compute(ContinuousCounts(tp=tp, tn=tn, fp=n - tn, fn=p - tp))

    d_tp = (at(cm.tp + step, cm.tn) - at(cm.tp - step, cm.tn)) / (2 * step)
    d_tn = (at(cm.tp, cm.tn + step) - at(cm.tp, cm.tn - step)) / (2 * step)
    return SensitivityField(tp=cm.tp, tn=cm.tn, d_rec=d_tp * p, d_sel=d_tn * n)


def equal_sensitivity_tp(tn: float, p: int, n: int) -> float:
    """TP on the HMNC equal-sensitivity boundary for a given TN: TN sqrt(P / N)."""
    return tn * math.sqrt(p / n)
