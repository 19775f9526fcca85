"""Formatters are mappings from object(s) to a string."""
import math
from typing import Any, Callable, List


def list_args(func: Callable) -> Callable:
    """Extend the function to allow taking a list as the first argument, and apply the function on each of the elements.

    Args:
        func: the function to extend

    Returns:
        The extended function
    """

    def inner(arg: Any, *args: Any, **kwargs: Any) -> Any:
        if isinstance(arg, list):
            return [func(v, *args, **kwargs) for v in arg]

        return func(arg, *args, **kwargs)

    return inner


@list_args
def fmt_metric(value: float, precision: int = 2) -> str:
    """Format a metric value for display, with a fixed number of decimals.

    Args:
        value: The metric value.
        precision: The number of decimals.

    Returns:
        The rounded value; a value that rounds to zero never carries a minus sign.
    """
    if math.isnan(value):
        return "nan"
    fmtted = f"{value:.{precision}f}"
    if float(fmtted) == 0:
        fmtted = f"{0.0:.{precision}f}"
    return fmtted


@list_args
def fmt_machine(value: float, significant_digits: int = 15) -> str:
    """Format a value for csv output with the given number of significant digits."""
    return f"{value:.{significant_digits}g}"


def round_machine(value: float, significant_digits: int = 15) -> float:
    """Round a value to the given number of significant digits, for json output."""
    return float(fmt_machine(value, significant_digits))


@list_args
def fmt_ratio(value: float) -> str:
    """Format an imbalance ratio, e.g. `0.01` or `0.333333`."""
    return f"{value:.6g}"


def fmt_pair(left: str, right: str) -> str:
    """The label of a delta row, e.g. `|1-2|`."""
    return f"|{left}-{right}|"


def fmt_cells(cells: List[str], widths: List[int]) -> str:
    """Align a table row: the first cell to the left, the others to the right."""
    aligned = [
        cell.ljust(width) if index == 0 else cell.rjust(width)
        for index, (cell, width) in enumerate(zip(cells, widths))
    ]
    return "  ".join(aligned).rstrip()
