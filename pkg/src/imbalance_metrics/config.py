"""Configuration for the package."""
from enum import Enum
from pathlib import Path
from typing import List, Optional, Union

import yaml
from pydantic.v1 import BaseModel, BaseSettings, Field, validator

from imbalance_metrics.model.metrics import COMPARED_METRICS, MetricId


def _merge_dictionaries(dict1: dict, dict2: dict) -> dict:
    """
    Recursive merge dictionaries.

    :param dict1: Base dictionary to merge.
    :param dict2: Dictionary to merge on top of base dictionary.
    :return: Merged dictionary
    """
    for key, val in dict1.items():
        if isinstance(val, dict):
            dict2_node = dict2.setdefault(key, {})
            _merge_dictionaries(val, dict2_node)
        else:
            if key not in dict2:
                dict2[key] = val

    return dict2


class OutputFormat(Enum):
    text = "text"
    csv = "csv"
    json = "json"


class Report(BaseModel):
    # Decimal places of displayed values (2 matches the reference tables)
    precision: int = Field(default=2, ge=0)
    # Significant digits of csv/json values
    machine_precision: int = Field(default=15, ge=12, le=17)


class Output(BaseModel):
    format: OutputFormat = OutputFormat.text


class Heatmap(BaseModel):
    tp_steps: int = Field(default=101, ge=2)
    tn_steps: int = Field(default=101, ge=2)
    # Significant digits of the grid values in the long-format table
    significant_digits: int = Field(default=6, ge=1, le=17)
    plot_script: bool = False
    metrics: List[MetricId] = list(COMPARED_METRICS)
    # Number of isolines drawn by the plotting script
    contour_levels: int = Field(default=10, ge=1)
    terminal: str = "pngcairo"

    @validator("metrics", pre=True, each_item=True)
    def _parse_metric(cls, value: Union[str, MetricId]) -> MetricId:
        if isinstance(value, MetricId):
            return value
        return MetricId.parse(value)


class Analysis(BaseModel):
    identity_tolerance: float = Field(default=1e-12, gt=0)
    # Perturbation (in counts) of the finite-difference sensitivity oracle
    finite_difference_step: float = Field(default=1e-3, gt=0)


class Settings(BaseSettings):
    # Default prefix to avoid collisions with environment variables
    class Config:
        env_prefix = "imbalance_metrics_"

    # Label value counted as positive when reading predictions
    positive_label: str = "1"
    # Label value counted as negative; inferred from the data when unset
    negative_label: Optional[str] = None

    # Number of workers (0=multiprocessing.cpu_count())
    pool_size: int = 0

    # Show the progress bar
    progress_bar: bool = True

    report: Report = Report()
    output: Output = Output()
    heatmap: Heatmap = Heatmap()
    analysis: Analysis = Analysis()

    def update(self, updates: dict) -> "Settings":
        update = _merge_dictionaries(self.dict(), updates)
        return self.parse_obj(self.copy(update=update))

    @staticmethod
    def from_file(config_file: Union[Path, str]) -> "Settings":
        """Create a Settings object from a yaml file.

        Args:
            config_file: yaml file path
        Returns:
            Settings
        """
        with open(config_file) as f:
            data = yaml.safe_load(f)

        return Settings.parse_obj(data or {})
