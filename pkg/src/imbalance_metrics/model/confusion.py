"""The binary confusion matrix and the ways to build one."""
import operator
from collections import Counter
from dataclasses import dataclass
from typing import Any, Dict, Hashable, Optional, Sequence, Tuple

import pandas as pd
from multimethod import multimethod

from imbalance_metrics.model.errors import (
    DegenerateClassError,
    NegativeCountError,
    UnknownLabelError,
)

DEFAULT_POSITIVE_LABEL = "1"


@dataclass(frozen=True)
class ConfusionMatrix:
    """Outcome counts of a binary classifier on a test set.

    Attributes:
        tp: positives classified as positive.
        tn: negatives classified as negative.
        fp: negatives classified as positive.
        fn: positives classified as negative.
    """

    tp: int
    tn: int
    fp: int
    fn: int

    def __post_init__(self) -> None:
        for name in ("tp", "tn", "fp", "fn"):
            value = getattr(self, name)
            if isinstance(value, bool):
                raise TypeError(f"`{name}` must be an integer count, got a boolean")
            # numpy integers are accepted and stored as plain ints
            object.__setattr__(self, name, operator.index(value))
            if getattr(self, name) < 0:
                raise NegativeCountError(f"`{name}` must be >= 0, got {value}")

        if self.p() == 0:
            raise DegenerateClassError(
                "The positive class is empty (tp + fn = 0); every metric needs P >= 1."
            )
        if self.n() == 0:
            raise DegenerateClassError(
                "The negative class is empty (tn + fp = 0); every metric needs N >= 1."
            )

    def p(self) -> int:
        """Number of actual positives."""
        return self.tp + self.fn

    def n(self) -> int:
        """Number of actual negatives."""
        return self.tn + self.fp

    def m(self) -> int:
        """Size of the test set."""
        return self.p() + self.n()

    def pred_p(self) -> int:
        """Number of examples predicted positive."""
        return self.tp + self.fp

    def pred_n(self) -> int:
        """Number of examples predicted negative."""
        return self.tn + self.fn

    def as_dict(self) -> Dict[str, int]:
        return {"tp": self.tp, "tn": self.tn, "fp": self.fp, "fn": self.fn}

    def __str__(self) -> str:
        return f"(TP={self.tp}, TN={self.tn}, FP={self.fp}, FN={self.fn})"


def new_matrix(tp: int, tn: int, fp: int, fn: int) -> ConfusionMatrix:
    """Build a confusion matrix from its four counts.

    Raises:
        NegativeCountError: if a count is negative.
        DegenerateClassError: if tp + fn = 0 or tn + fp = 0.
    """
    return ConfusionMatrix(tp=tp, tn=tn, fp=fp, fn=fn)


def from_totals(tp: int, tn: int, p: int, n: int) -> ConfusionMatrix:
    """Build the matrix implied by the correct counts and the class totals."""
    if tp > p or tn > n:
        raise NegativeCountError(
            f"Correct counts exceed the class totals: tp={tp} > P={p} or tn={tn} > N={n}"
        )
    return ConfusionMatrix(tp=tp, tn=tn, fp=n - tn, fn=p - tp)


@dataclass(frozen=True)
class LabeledPredictions:
    """Raw (actual, predicted) label pairs of a binary classifier.

    Attributes:
        pairs: the (actual, predicted) pairs, in any order.
        positive_label: the label value counted as positive.
        negative_label: the label value counted as negative. When `None`, it is the only
            other label that occurs in `pairs`.
    """

    pairs: Tuple[Tuple[Hashable, Hashable], ...]
    positive_label: Hashable = DEFAULT_POSITIVE_LABEL
    negative_label: Optional[Hashable] = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "pairs", tuple(tuple(pair) for pair in self.pairs))
        if len(self.pairs) == 0:
            raise ValueError("LabeledPredictions needs at least one (actual, predicted) pair.")

        for index, pair in enumerate(self.pairs):
            if len(pair) != 2:
                raise ValueError(
                    f"Pair {index} has {len(pair)} elements, expected (actual, predicted)."
                )

        labels = {label for pair in self.pairs for label in pair}
        others = labels - {self.positive_label}
        if self.negative_label is None:
            if len(others) > 1:
                raise UnknownLabelError(
                    f"Found {len(others)} labels besides the positive label "
                    f"{self.positive_label!r}: {sorted(map(repr, others))}. "
                    "Declare the negative label explicitly."
                )
            negative = next(iter(others)) if others else None
            object.__setattr__(self, "negative_label", negative)
        else:
            unknown = others - {self.negative_label}
            if unknown:
                raise UnknownLabelError(
                    f"Labels {sorted(map(repr, unknown))} are neither the positive label "
                    f"{self.positive_label!r} nor the negative label {self.negative_label!r}."
                )

    def __len__(self) -> int:
        return len(self.pairs)


@multimethod
def from_labels(data: Any, **kwargs: Any) -> ConfusionMatrix:
    raise NotImplementedError(f"Cannot tally a confusion matrix from {type(data)}")


@from_labels.register
def _from_labeled_predictions(data: LabeledPredictions) -> ConfusionMatrix:
    """Tally the four outcomes of the labeled predictions.

    Raises:
        DegenerateClassError: if one of the classes never occurs among the actual labels.
    """
    positive = data.positive_label
    counts = Counter(
        (actual == positive, predicted == positive) for actual, predicted in data.pairs
    )
    return ConfusionMatrix(
        tp=counts[(True, True)],
        tn=counts[(False, False)],
        fp=counts[(False, True)],
        fn=counts[(True, False)],
    )


@from_labels.register
def _from_dataframe(
    data: pd.DataFrame,
    positive_label: Hashable = DEFAULT_POSITIVE_LABEL,
    negative_label: Optional[Hashable] = None,
) -> ConfusionMatrix:
    """Tally a DataFrame with `actual` and `predicted` columns."""
    missing = {"actual", "predicted"} - set(data.columns)
    if missing:
        raise ValueError(f"DataFrame is missing the column(s): {sorted(missing)}")

    pairs: Sequence[Tuple[Hashable, Hashable]] = list(
        zip(data["actual"].tolist(), data["predicted"].tolist())
    )
    return from_labels(
        LabeledPredictions(
            pairs=tuple(pairs),
            positive_label=positive_label,
            negative_label=negative_label,
        )
    )
