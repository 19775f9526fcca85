"""Single-value performance measures computed from a confusion matrix.

All measures are computed from the exact integer counts; the only floating point
operation is the final division (and square root where the measure needs one), so
every value is the correctly rounded result of the exact rational expression.
"""
import math
from dataclasses import dataclass
from enum import Enum, unique
from typing import Callable, Dict, List, Tuple

from imbalance_metrics.model.confusion import ConfusionMatrix
from imbalance_metrics.model.errors import DegenerateClassError, NegativeCountError


@unique
class MetricId(Enum):
    """Metric identifiers, in declaration order (used to break ties)."""

    REC = "REC"
    """Recall, TP / P."""

    PRC = "PRC"
    """Precision, TP / predicted positives."""

    SEL = "SEL"
    """Selectivity, TN / N."""

    ACC = "ACC"
    """Accuracy, (TP + TN) / M."""

    BACC = "BACC"
    """Balanced accuracy, mean of recall and selectivity (equal to AUC for hard outputs)."""

    F1 = "F1"
    """Harmonic mean of precision and recall."""

    GMEAN = "GMEAN"
    """Geometric mean of recall and selectivity."""

    MCC = "MCC"
    """Matthews correlation coefficient."""

    KAPPA = "KAPPA"
    """Cohen's kappa."""

    HMNC = "HMNC"
    """Harmonic mean of recall and selectivity normalized in the class labels."""

    @classmethod
    def parse(cls, name: str) -> "MetricId":
        """Parse a metric name, case-insensitive, accepting the usual aliases."""
        key = name.strip().upper().replace("-", "_")
        key = _ALIASES.get(key, key)
        try:
            return cls[key]
        except KeyError:
            valid = ", ".join(m.value.lower() for m in cls)
            raise ValueError(f"Unknown metric {name!r}; expected one of: {valid}") from None

    @property
    def label(self) -> str:
        return _LABELS.get(self, self.value)


_ALIASES = {
    "RECALL": "REC",
    "TPR": "REC",
    "SENSITIVITY": "REC",
    "PRECISION": "PRC",
    "SELECTIVITY": "SEL",
    "SPECIFICITY": "SEL",
    "TNR": "SEL",
    "ACCURACY": "ACC",
    "AUC": "BACC",
    "BALANCED_ACCURACY": "BACC",
    "F1_SCORE": "F1",
    "G_MEAN": "GMEAN",
    "GM": "GMEAN",
    "G_M": "GMEAN",
}

_LABELS = {
    MetricId.F1: "F1",
    MetricId.GMEAN: "G-m",
    MetricId.KAPPA: "Kappa",
}

# Column order of the comparison tables and of the heat map figures.
COMPARED_METRICS: List[MetricId] = [
    MetricId.HMNC,
    MetricId.ACC,
    MetricId.BACC,
    MetricId.MCC,
    MetricId.F1,
    MetricId.GMEAN,
    MetricId.KAPPA,
]

METRIC_RANGES: Dict[MetricId, Tuple[float, float]] = {
    metric: (-1.0, 1.0) if metric in (MetricId.MCC, MetricId.KAPPA) else (0.0, 1.0)
    for metric in MetricId
}


def recall(cm: ConfusionMatrix) -> float:
    return cm.tp / cm.p()


def precision(cm: ConfusionMatrix) -> float:
    """TP / predicted positives, 0 when nothing is predicted positive."""
    if cm.pred_p() == 0:
        return 0.0
    return cm.tp / cm.pred_p()


def selectivity(cm: ConfusionMatrix) -> float:
    return cm.tn / cm.n()


def accuracy(cm: ConfusionMatrix) -> float:
    return (cm.tp + cm.tn) / cm.m()


def bacc(cm: ConfusionMatrix) -> float:
    return 0.5 * (recall(cm) + selectivity(cm))


def auc(cm: ConfusionMatrix) -> float:
    """Alias of `bacc`: for a hard-output classifier the ROC area is the balanced accuracy."""
    return bacc(cm)


def f1_score(cm: ConfusionMatrix) -> float:
    """2 PRC REC / (PRC + REC), 0 when both are 0.

    Evaluated as 2TP / (2TP + FP + FN), the same quantity without the intermediate ratios.
    """
    if cm.tp == 0:
        return 0.0
    return 2 * cm.tp / (2 * cm.tp + cm.fp + cm.fn)


def g_mean(cm: ConfusionMatrix) -> float:
    return math.sqrt(cm.tp * cm.tn / (cm.p() * cm.n()))


def mcc(cm: ConfusionMatrix) -> float:
    """Matthews correlation coefficient, 0 when a predicted class is empty."""
    denominator = cm.pred_p() * cm.p() * cm.n() * cm.pred_n()
    if denominator == 0:
        return 0.0
    numerator = cm.tp * cm.tn - cm.fp * cm.fn
    # num^2 <= den holds exactly on integers, so the root never leaves [0, 1]
    return math.copysign(math.sqrt(numerator * numerator / denominator), numerator)


def kappa(cm: ConfusionMatrix) -> float:
    """Cohen's kappa, (ACC - e) / (1 - e) with e the chance agreement.

    Multiplying through by M^2 gives (M (TP + TN) - S) / (M^2 - S) with
    S = P * pred_p + N * pred_n, evaluated on integers.
    """
    m = cm.m()
    chance = cm.p() * cm.pred_p() + cm.n() * cm.pred_n()
    denominator = m * m - chance
    assert denominator > 0, "chance agreement is < 1 whenever both classes are present"
    return (m * (cm.tp + cm.tn) - chance) / denominator


def harmonic_mean(a: float, b: float) -> float:
    """HM(a, b) = 2ab / (a + b), 0 when a + b = 0."""
    if a < 0 or b < 0:
        raise ValueError(f"The harmonic mean is defined for non-negative values, got {a}, {b}")
    if a + b == 0:
        return 0.0
    return 2 * a * b / (a + b)


def hmnc(cm: ConfusionMatrix) -> float:
    """HMNC = TP TN M / ((TP + TN) P N), 0 when TP + TN = 0."""
    if cm.tp + cm.tn == 0:
        return 0.0
    return cm.tp * cm.tn * cm.m() / ((cm.tp + cm.tn) * cm.p() * cm.n())


def hmnc_harmonic_form(cm: ConfusionMatrix) -> float:
    """HMNC evaluated through its definition: the harmonic mean of the class-normalized
    recall and selectivity, divided by the harmonic mean of the class priors."""
    m = cm.m()
    prior_p = cm.p() / m
    prior_n = cm.n() / m
    return harmonic_mean(recall(cm) * prior_p, selectivity(cm) * prior_n) / harmonic_mean(
        prior_p, prior_n
    )


def imbalance_ratio(p: int, n: int) -> float:
    """IR = min(P, N) / max(P, N)."""
    if p < 0 or n < 0:
        raise NegativeCountError(f"Class totals must be >= 0, got P={p}, N={n}")
    if p == 0 or n == 0:
        raise DegenerateClassError(
            f"The imbalance ratio needs both classes, got P={p}, N={n}"
        )
    return min(p, n) / max(p, n)


def normalize(metric: MetricId, value: float) -> float:
    """Map a metric value onto [0, 1] (identity for measures already in [0, 1])."""
    low, high = METRIC_RANGES[metric]
    return (value - low) / (high - low)


METRICS: Dict[MetricId, Callable[[ConfusionMatrix], float]] = {
    MetricId.REC: recall,
    MetricId.PRC: precision,
    MetricId.SEL: selectivity,
    MetricId.ACC: accuracy,
    MetricId.BACC: bacc,
    MetricId.F1: f1_score,
    MetricId.GMEAN: g_mean,
    MetricId.MCC: mcc,
    MetricId.KAPPA: kappa,
    MetricId.HMNC: hmnc,
}


def get_metric(metric: MetricId) -> Callable[[ConfusionMatrix], float]:
    return METRICS[metric]


@dataclass(frozen=True)
class MetricReport:
    """Every metric of one confusion matrix.

    Attributes:
        matrix: the evaluated confusion matrix.
        values: one value per metric id.
        ir: imbalance ratio of the matrix classes.
    """

    matrix: ConfusionMatrix
    values: Dict[MetricId, float]
    ir: float

    def __getitem__(self, metric: MetricId) -> float:
        return self.values[metric]

    def normalized(self, metric: MetricId) -> float:
        return normalize(metric, self.values[metric])


def evaluate_all(cm: ConfusionMatrix) -> MetricReport:
    """Evaluate every metric on the confusion matrix."""
    return MetricReport(
        matrix=cm,
        values={metric: compute(cm) for metric, compute in METRICS.items()},
        ir=imbalance_ratio(cm.p(), cm.n()),
    )
