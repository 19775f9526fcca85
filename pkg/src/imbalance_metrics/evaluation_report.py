import json
import warnings
from pathlib import Path
from typing import Any, Dict, Optional, Union

import pandas as pd
from dacite import Config as DaciteConfig
from dacite import DaciteError, from_dict
from typeguard import typechecked

from imbalance_metrics.config import Settings
from imbalance_metrics.model.confusion import (
    ConfusionMatrix,
    LabeledPredictions,
    from_labels,
)
from imbalance_metrics.model.errors import InputError
from imbalance_metrics.model.identity import IdentityCheck, identity_check
from imbalance_metrics.model.metrics import MetricId, MetricReport, evaluate_all
from imbalance_metrics.model.sensitivity import (
    SensitivityField,
    finite_difference_sensitivity,
    hmnc_sensitivity,
)
from imbalance_metrics.report.render import (
    metric_report_to_dict,
    render_metric_report,
    render_metric_report_csv,
)
from imbalance_metrics.utils.dataframe import tally_predictions
from imbalance_metrics.utils.logger import logger


@typechecked
class EvaluationReport:
    """Evaluate a binary classifier from its confusion matrix or its labeled predictions.

    Metrics are computed when first needed and cached.
    """

    _metric_report = None
    _text = None
    _json = None
    _csv = None
    config: Settings

    def __init__(
        self,
        matrix: Optional[ConfusionMatrix] = None,
        predictions: Optional[Union[pd.DataFrame, LabeledPredictions]] = None,
        config_file: Optional[Union[Path, str]] = None,
        lazy: bool = True,
        config: Optional[Settings] = None,
        **kwargs,
    ):
        """Generate an EvaluationReport from exactly one input.

        Config processing order (in case of duplicate entries, entries later in the order are retained):
        - `config_file` or `config`
        - custom settings **kwargs (e.g. `positive_label`)

        Args:
            matrix: the confusion matrix of the classifier
            predictions: `actual`/`predicted` labels, as a DataFrame or LabeledPredictions
            config_file: a config file (.yml), mutually exclusive with `config`
            lazy: compute when needed
            config: the settings to use
            **kwargs: other arguments, for valid arguments, check the default configuration file.
        """
        self.__validate_inputs(matrix, predictions, config_file, config)

        if config_file:
            report_config = Settings.from_file(config_file)
        elif config is not None:
            report_config = config
        else:
            report_config = Settings()

        if kwargs:
            report_config = report_config.update(kwargs)

        self.config = report_config
        self._matrix = matrix
        self._predictions = predictions

        if not lazy:
            _ = self.metric_report

    @staticmethod
    def __validate_inputs(
        matrix: Optional[ConfusionMatrix],
        predictions: Optional[Union[pd.DataFrame, LabeledPredictions]],
        config_file: Optional[Union[Path, str]],
        config: Optional[Settings],
    ) -> None:
        if (matrix is None) == (predictions is None):
            raise InputError(
                "Exactly one of `matrix` and `predictions` must be given."
            )

        if config_file is not None and config is not None:
            raise ValueError("Arguments `config_file` and `config` are mutually exclusive.")

    @classmethod
    def from_csv(cls, file_name: Union[Path, str], **kwargs: Any) -> "EvaluationReport":
        """Tally a prediction file (`actual,predicted` header) into a report."""
        config = kwargs.pop("config", None) or Settings()
        if kwargs:
            config = config.update(kwargs)
        matrix = tally_predictions(
            Path(file_name),
            positive_label=config.positive_label,
            negative_label=config.negative_label,
        )
        return cls(matrix=matrix, config=config)

    def invalidate_cache(self) -> None:
        """Drop the computed results so that they follow later config changes."""
        if self._predictions is not None:
            self._matrix = None
        self._metric_report = None
        self._text = None
        self._json = None
        self._csv = None

    @property
    def matrix(self) -> ConfusionMatrix:
        if self._matrix is None:
            if isinstance(self._predictions, pd.DataFrame):
                self._matrix = from_labels(
                    self._predictions,
                    positive_label=self.config.positive_label,
                    negative_label=self.config.negative_label,
                )
            else:
                self._matrix = from_labels(self._predictions)
        return self._matrix

    @property
    def metric_report(self) -> MetricReport:
        if self._metric_report is None:
            cm = self.matrix
            logger.info_def_run("evaluation", cm.p(), cm.n())
            if cm.pred_p() == 0 or cm.pred_n() == 0:
                warnings.warn(
                    f"The classifier predicts a single class ({cm}); precision, F1, MCC and "
                    "Kappa fall back to their zero conventions."
                )
            self._metric_report = evaluate_all(cm)
        return self._metric_report

    def get_description(self) -> MetricReport:
        """Return the metric report (including the confusion matrix and IR)."""
        return self.metric_report

    def __getitem__(self, metric: Union[MetricId, str]) -> float:
        if isinstance(metric, str):
            metric = MetricId.parse(metric)
        return self.metric_report[metric]

    def identity(self) -> IdentityCheck:
        """Check whether HMNC, ACC, BACC and G-mean coincide for this classifier."""
        return identity_check(self.matrix, tol=self.config.analysis.identity_tolerance)

    def sensitivity(self, finite_difference: bool = False) -> SensitivityField:
        """The HMNC sensitivity field at this classifier's (TP, TN)."""
        if finite_difference:
            return finite_difference_sensitivity(
                self.matrix, step=self.config.analysis.finite_difference_step
            )
        return hmnc_sensitivity(self.matrix)

    @property
    def text(self) -> str:
        if self._text is None:
            self._text = render_metric_report(
                self.metric_report, precision=self.config.report.precision
            )
        return self._text

    @property
    def json(self) -> str:
        if self._json is None:
            self._json = json.dumps(self.to_dict(), indent=2)
        return self._json

    @property
    def csv(self) -> str:
        if self._csv is None:
            self._csv = render_metric_report_csv(
                self.metric_report, self.config.report.machine_precision
            )
        return self._csv

    def to_dict(self) -> Dict[str, Any]:
        return metric_report_to_dict(
            self.metric_report, self.config.report.machine_precision
        )

    def to_text(self) -> str:
        return self.text

    def to_json(self) -> str:
        return self.json

    def to_csv(self) -> str:
        return self.csv

    def render(self, output_format: Optional[str] = None) -> str:
        """Render in `output_format` (text, csv or json), the configured format by default."""
        output_format = output_format or self.config.output.format.value
        renderers = {"text": self.to_text, "csv": self.to_csv, "json": self.to_json}
        if output_format not in renderers:
            raise ValueError(
                f"Unknown output format {output_format!r}; expected text, csv or json"
            )
        return renderers[output_format]()

    def to_file(self, output_file: Union[str, Path]) -> Path:
        """Write the report to a file.

        Args:
            output_file: The name or the path of the file to generate including the extension (.txt, .csv, .json).

        Returns:
            The path written to.
        """
        if not isinstance(output_file, Path):
            output_file = Path(str(output_file))

        if output_file.suffix == ".json":
            data = self.to_json()
        elif output_file.suffix == ".csv":
            data = self.to_csv()
        else:
            if output_file.suffix != ".txt":
                suffix = output_file.suffix
                output_file = output_file.with_suffix(".txt")
                warnings.warn(
                    f"Extension {suffix} not supported. For now we assume .txt was intended. "
                    f"To remove this warning, please use .txt, .csv or .json."
                )
            data = self.to_text()

        output_file.write_text(data, encoding="utf-8")
        return output_file

    def __repr__(self) -> str:
        """Override so that Jupyter Notebook does not print the object."""
        return ""


def load_report_json(data: Union[str, Dict[str, Any]]) -> MetricReport:
    """Rebuild a MetricReport from the json written by `EvaluationReport.to_json`.

    Raises:
        InputError: if the json does not describe a report.
    """
    if isinstance(data, str):
        data = json.loads(data)

    try:
        payload = dict(data)
        payload["values"] = {MetricId(key): value for key, value in data["values"].items()}
        return from_dict(
            data_class=MetricReport,
            data=payload,
            config=DaciteConfig(type_hooks={float: float}),
        )
    except (DaciteError, KeyError, ValueError, TypeError) as e:
        raise InputError(f"Not a metric report: {e}") from e
