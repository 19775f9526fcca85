"""Metric values over the (TP, TN) lattice of a fixed test set."""
import io
import multiprocessing
import multiprocessing.pool
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

import numpy as np
import pandas as pd
from tqdm.auto import tqdm

from imbalance_metrics.model.confusion import from_totals
from imbalance_metrics.model.errors import (
    DegenerateClassError,
    InputError,
    UndefinedRatioError,
)
from imbalance_metrics.model.metrics import (
    METRICS,
    MetricId,
    imbalance_ratio,
)
from imbalance_metrics.model.sensitivity import (
    equal_sensitivity_tp,
    gmean_sensitivity,
    hmnc_sensitivity,
)

DEFAULT_STEPS = 101


@dataclass(frozen=True, eq=False)
class HeatmapGrid:
    """Values of one metric over a (TP, TN) lattice.

    Attributes:
        metric: the evaluated metric.
        p: number of actual positives.
        n: number of actual negatives.
        ir: imbalance ratio of (p, n).
        tp_axis: non-decreasing TP counts from 0 to p (abscissa).
        tn_axis: non-decreasing TN counts from 0 to n (ordinate).
        values: metric values indexed [tn_index, tp_index].
    """

    metric: MetricId
    p: int
    n: int
    ir: float
    tp_axis: np.ndarray
    tn_axis: np.ndarray
    values: np.ndarray

    def __post_init__(self) -> None:
        for name in ("tp_axis", "tn_axis", "values"):
            array = np.array(getattr(self, name), copy=True)
            array.setflags(write=False)
            object.__setattr__(self, name, array)

        expected = (len(self.tn_axis), len(self.tp_axis))
        if self.values.shape != expected:
            raise ValueError(
                f"Grid values have shape {self.values.shape}, expected {expected} (|tn_axis| x |tp_axis|)"
            )

    @property
    def shape(self) -> Tuple[int, int]:
        return self.values.shape  # type: ignore

    def cell(self, tn_index: int, tp_index: int) -> Tuple[int, int, float]:
        return (
            int(self.tp_axis[tp_index]),
            int(self.tn_axis[tn_index]),
            float(self.values[tn_index, tp_index]),
        )

    def equals(self, other: "HeatmapGrid") -> bool:
        return (
            self.metric == other.metric
            and self.p == other.p
            and self.n == other.n
            and self.ir == other.ir
            and np.array_equal(self.tp_axis, other.tp_axis)
            and np.array_equal(self.tn_axis, other.tn_axis)
            and np.array_equal(self.values, other.values)
        )


@dataclass(frozen=True)
class BoundaryCurve:
    """Points where HMNC is equally sensitive to both class fractions.

    Attributes:
        p: number of actual positives.
        n: number of actual negatives.
        points: (tp, tn) pairs on TP = TN sqrt(P / N), inside [0, p] x [0, n].
    """

    p: int
    n: int
    points: Tuple[Tuple[float, float], ...]


def lattice_axis(total: int, steps: int) -> np.ndarray:
    """`steps` evenly spaced fractions of `total`, rounded to the nearest count."""
    return np.rint(np.linspace(0, total, steps)).astype(np.int64)


def _check_grid_arguments(p: int, n: int, tp_steps: int, tn_steps: int) -> None:
    if p < 1 or n < 1:
        raise DegenerateClassError(f"A grid needs both classes, got P={p}, N={n}")
    if tp_steps < 2 or tn_steps < 2:
        raise ValueError(
            f"A grid needs at least 2 steps per axis, got tp_steps={tp_steps}, tn_steps={tn_steps}"
        )


def generate_grid(
    metric: MetricId,
    p: int,
    n: int,
    tp_steps: int = DEFAULT_STEPS,
    tn_steps: int = DEFAULT_STEPS,
    pool_size: int = 1,
    progress_bar: bool = False,
) -> HeatmapGrid:
    """Evaluate a metric on every lattice point, with FP = N - TN and FN = P - TP.

    Args:
        metric: the metric to evaluate.
        p: number of actual positives.
        n: number of actual negatives.
        tp_steps: lattice points on the TP axis, endpoints included.
        tn_steps: lattice points on the TN axis, endpoints included.
        pool_size: worker threads for the rows (0 = cpu_count, 1 = sequential).
        progress_bar: show a tqdm bar over the rows.

    Returns:
        The grid; every cell equals the scalar metric of the implied confusion matrix.
    """
    _check_grid_arguments(p, n, tp_steps, tn_steps)
    tp_axis = lattice_axis(p, tp_steps)
    tn_axis = lattice_axis(n, tn_steps)
    compute = METRICS[metric]

    def evaluate_row(args: Tuple[int, int]) -> Tuple[int, List[float]]:
        index, tn = args
        return index, [compute(from_totals(int(tp), tn, p, n)) for tp in tp_axis]

    if pool_size <= 0:
        pool_size = multiprocessing.cpu_count()

    args = [(index, int(tn)) for index, tn in enumerate(tn_axis)]
    rows: Dict[int, List[float]] = {}

    with tqdm(
        total=len(args),
        desc=f"{metric.value} grid (P={p}, N={n})",
        disable=not progress_bar,
        leave=False,
    ) as pbar:
        if pool_size == 1:
            for arg in args:
                index, row = evaluate_row(arg)
                rows[index] = row
                pbar.update()
        else:
            with multiprocessing.pool.ThreadPool(pool_size) as executor:
                for index, row in executor.imap_unordered(evaluate_row, args):
                    rows[index] = row
                    pbar.update()

    # Row-major order regardless of completion order
    values = np.array([rows[index] for index in range(len(args))], dtype=float)
    return HeatmapGrid(
        metric=metric,
        p=p,
        n=n,
        ir=imbalance_ratio(p, n),
        tp_axis=tp_axis,
        tn_axis=tn_axis,
        values=values,
    )


def sensitivity_boundary(p: int, n: int, samples: int = DEFAULT_STEPS) -> BoundaryCurve:
    """Sample the HMNC equal-sensitivity curve TP = TN sqrt(P / N).

    TN is sampled evenly from 0 to the largest value that keeps TP <= P.
    """
    if p < 1 or n < 1:
        raise DegenerateClassError(f"The boundary needs both classes, got P={p}, N={n}")
    if samples < 2:
        raise ValueError(f"At least 2 samples are required, got {samples}")

    tn_max = min(float(n), float(np.sqrt(p * n)))
    points = []
    for tn in np.linspace(0.0, tn_max, samples):
        tp = min(equal_sensitivity_tp(float(tn), p, n), float(p))
        points.append((tp, float(tn)))
    return BoundaryCurve(p=p, n=n, points=tuple(points))


def grid_sensitivity_ratio(
    metric: MetricId,
    p: int,
    n: int,
    tp_steps: int = DEFAULT_STEPS,
    tn_steps: int = DEFAULT_STEPS,
) -> np.ndarray:
    """Analytic d_sel / d_rec over the lattice, NaN where it is undefined.

    Only HMNC and GMEAN have analytic fields.
    """
    fields = {MetricId.HMNC: hmnc_sensitivity, MetricId.GMEAN: gmean_sensitivity}
    if metric not in fields:
        raise ValueError(
            f"No analytic sensitivity field for {metric.value}; use HMNC or GMEAN"
        )
    _check_grid_arguments(p, n, tp_steps, tn_steps)
    field = fields[metric]

    tp_axis = lattice_axis(p, tp_steps)
    tn_axis = lattice_axis(n, tn_steps)
    ratios = np.full((len(tn_axis), len(tp_axis)), np.nan)
    for i, tn in enumerate(tn_axis):
        for j, tp in enumerate(tp_axis):
            try:
                ratios[i, j] = field(from_totals(int(tp), int(tn), p, n)).ratio
            except UndefinedRatioError:
                continue
    return ratios


def grid_to_table(grid: HeatmapGrid, significant_digits: int = 6) -> str:
    """Serialize a grid as a long-format CSV table.

    The table starts with `#` metadata lines (metric, P, N, IR and the grid dimensions),
    then a `tp,tn,value` header and one row per cell in row-major order (TN outer, TP inner).
    17 significant digits make the round trip through `table_to_grid` exact.
    """
    tn_column, tp_column = np.meshgrid(grid.tn_axis, grid.tp_axis, indexing="ij")
    frame = pd.DataFrame(
        {
            "tp": tp_column.ravel(),
            "tn": tn_column.ravel(),
            "value": grid.values.ravel(),
        }
    )
    metadata = {
        "metric": grid.metric.value,
        "p": grid.p,
        "n": grid.n,
        "ir": repr(grid.ir),
        "tp_steps": len(grid.tp_axis),
        "tn_steps": len(grid.tn_axis),
    }
    header = "".join(f"# {key}: {value}\n" for key, value in metadata.items())
    body = frame.to_csv(index=False, float_format=f"%.{significant_digits}g")
    return header + body


def _read_metadata(text: str) -> Dict[str, str]:
    metadata = {}
    for line in text.splitlines():
        if not line.startswith("#"):
            break
        key, _, value = line[1:].partition(":")
        metadata[key.strip()] = value.strip()
    return metadata


def table_to_grid(text: str) -> HeatmapGrid:
    """Parse a table written by `grid_to_table`."""
    metadata = _read_metadata(text)
    required = ["metric", "p", "n", "ir", "tp_steps", "tn_steps"]
    missing = [key for key in required if key not in metadata]
    if missing:
        raise InputError(f"Grid table is missing the metadata line(s): {missing}")

    frame = pd.read_csv(io.StringIO(text), comment="#", float_precision="round_trip")
    if list(frame.columns) != ["tp", "tn", "value"]:
        raise InputError(
            f"Grid table header must be tp,tn,value, got {','.join(map(str, frame.columns))}"
        )

    tp_steps = int(metadata["tp_steps"])
    tn_steps = int(metadata["tn_steps"])
    if len(frame) != tp_steps * tn_steps:
        raise InputError(
            f"Grid table has {len(frame)} rows, expected {tp_steps} x {tn_steps}"
        )

    tp = frame["tp"].to_numpy(dtype=np.int64).reshape(tn_steps, tp_steps)
    tn = frame["tn"].to_numpy(dtype=np.int64).reshape(tn_steps, tp_steps)
    return HeatmapGrid(
        metric=MetricId(metadata["metric"]),
        p=int(metadata["p"]),
        n=int(metadata["n"]),
        ir=float(metadata["ir"]),
        tp_axis=tp[0, :],
        tn_axis=tn[:, 0],
        values=frame["value"].to_numpy(dtype=float).reshape(tn_steps, tp_steps),
    )


def diagonal_cells(grid: HeatmapGrid) -> List[Tuple[int, int]]:
    """(tn_index, tp_index) of the cells where TP / P = TN / N holds exactly."""
    return [
        (i, j)
        for i, tn in enumerate(grid.tn_axis)
        for j, tp in enumerate(grid.tp_axis)
        if int(tp) * grid.n == int(tn) * grid.p
    ]


def axis_index(axis: np.ndarray, count: int) -> Optional[int]:
    """Index of the first axis entry equal to `count`, `None` if absent."""
    matches = np.flatnonzero(axis == count)
    return int(matches[0]) if len(matches) else None
