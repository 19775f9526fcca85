"""This file add the console interface to the package."""
import argparse
import logging
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple

from imbalance_metrics.compare_reports import compare
from imbalance_metrics.config import Settings
from imbalance_metrics.evaluation_report import EvaluationReport
from imbalance_metrics.model.confusion import ConfusionMatrix, new_matrix
from imbalance_metrics.model.errors import DomainError, InputError
from imbalance_metrics.model.heatmap import generate_grid, grid_to_table
from imbalance_metrics.model.metrics import MetricId
from imbalance_metrics.report.render import render_plot_script
from imbalance_metrics.repro.runner import TARGETS, run_repro
from imbalance_metrics.utils.dataframe import tally_predictions
from imbalance_metrics.utils.logger import logger
from imbalance_metrics.version import __version__

EXIT_OK = 0
EXIT_REPRO_FAILED = 1
EXIT_INPUT_ERROR = 2
EXIT_DOMAIN_ERROR = 3


def _non_negative_int(value: str) -> int:
    try:
        number = int(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {value!r}") from None
    if number < 0:
        raise argparse.ArgumentTypeError(f"expected a value >= 0, got {number}")
    return number


def _positive_int(value: str) -> int:
    number = _non_negative_int(value)
    if number == 0:
        raise argparse.ArgumentTypeError("expected a value >= 1, got 0")
    return number


def _counts(value: str) -> Tuple[int, int, int, int]:
    """Parse `TP,TN,FP,FN`."""
    parts = value.split(",")
    if len(parts) != 4:
        raise argparse.ArgumentTypeError(f"expected TP,TN,FP,FN, got {value!r}")
    tp, tn, fp, fn = (_non_negative_int(part.strip()) for part in parts)
    return tp, tn, fp, fn


def _metric(value: str) -> MetricId:
    try:
        return MetricId.parse(value)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e)) from None


def _common_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "-s",
        "--silent",
        help="Do not show progress bars",
        action="store_true",
    )
    common.add_argument(
        "-v",
        "--verbose",
        help="Log progress messages to stderr",
        action="store_true",
    )
    common.add_argument(
        "--format",
        choices=["text", "csv", "json"],
        default=None,
        help="Output format (default: text)",
    )
    common.add_argument(
        "--rounding",
        type=_non_negative_int,
        default=None,
        help="Decimal places of displayed values (default: 2)",
    )
    common.add_argument(
        "--positive-label",
        type=str,
        default=None,
        help="Label value counted as positive in prediction files (default: 1)",
    )
    common.add_argument(
        "--negative-label",
        type=str,
        default=None,
        help="Label value counted as negative (default: the other label in the file)",
    )
    common.add_argument(
        "--pool_size", type=int, default=None, help="Number of CPU cores to use"
    )
    common.add_argument(
        "--config_file",
        type=str,
        default=None,
        help="Specify a yaml config file. Have a look at the 'config_default.yaml' as a starting point.",
    )
    common.add_argument(
        "--out",
        type=str,
        default=None,
        help="Output file (output directory for `repro`). Defaults to stdout.",
    )
    return common


def parse_args(args: Optional[List[Any]] = None) -> argparse.Namespace:
    """Parse the command line arguments for the `imbalance_metrics` binary.

    Args:
      args: List of input arguments. (Default value=None).

    Returns:
      Namespace with parsed arguments.

    """
    parser = argparse.ArgumentParser(
        prog="imbalance_metrics",
        description="Evaluate and compare binary classifiers on imbalanced test sets.",
    )

    # Version
    parser.add_argument(
        "--version", action="version", version=f"%(prog)s {__version__}"
    )

    common = _common_parser()
    commands = parser.add_subparsers(dest="command", required=True)

    compute = commands.add_parser(
        "compute", parents=[common], help="Every metric of one classifier"
    )
    for name in ("tp", "tn", "fp", "fn"):
        compute.add_argument(
            f"--{name}", type=_non_negative_int, default=None, help=f"{name.upper()} count"
        )
    compute.add_argument(
        "--from-csv",
        type=str,
        default=None,
        help="Prediction file with an 'actual,predicted' header",
    )

    comparison = commands.add_parser(
        "compare", parents=[common], help="Metric differences between classifiers"
    )
    comparison.add_argument("--left", type=_counts, default=None, help="TP,TN,FP,FN")
    comparison.add_argument("--right", type=_counts, default=None, help="TP,TN,FP,FN")
    comparison.add_argument("--left-csv", type=str, default=None, help="Prediction file")
    comparison.add_argument("--right-csv", type=str, default=None, help="Prediction file")
    comparison.add_argument(
        "--matrix",
        type=_counts,
        action="append",
        default=None,
        help="TP,TN,FP,FN; repeat to compare every pair of classifiers",
    )

    heatmap = commands.add_parser(
        "heatmap", parents=[common], help="Metric values over the (TP, TN) lattice"
    )
    heatmap.add_argument("--metric", type=_metric, required=True, help="e.g. hmnc, acc, gmean")
    heatmap.add_argument("--p", type=_positive_int, required=True, help="Number of positives")
    heatmap.add_argument("--n", type=_positive_int, required=True, help="Number of negatives")
    heatmap.add_argument("--tp-steps", type=int, default=None, help="Points on the TP axis")
    heatmap.add_argument("--tn-steps", type=int, default=None, help="Points on the TN axis")
    heatmap.add_argument(
        "--significant-digits",
        type=_positive_int,
        default=None,
        help="Significant digits of the values (default 6, which rounds the grid; 17 reads back exactly)",
    )
    heatmap.add_argument(
        "--plot-script",
        action="store_true",
        help="Also write a gnuplot script next to the grid file",
    )

    repro = commands.add_parser(
        "repro", parents=[common], help="Reproduce the reference tables and heat maps"
    )
    repro.add_argument(
        "target", nargs="?", choices=TARGETS, default="all", help="What to reproduce"
    )
    repro.add_argument(
        "--plot-script",
        action="store_true",
        help="Also write a gnuplot script next to each grid file",
    )

    parsed = parser.parse_args(args)
    _validate_inputs(parser, parsed)
    return parsed


def _validate_inputs(parser: argparse.ArgumentParser, args: argparse.Namespace) -> None:
    """Exactly one input mode per invocation."""
    if args.command == "compute":
        counts = [args.tp, args.tn, args.fp, args.fn]
        if args.from_csv is not None and any(c is not None for c in counts):
            parser.error("compute: use either --tp/--tn/--fp/--fn or --from-csv, not both")
        if args.from_csv is None and any(c is None for c in counts):
            parser.error("compute: --tp, --tn, --fp and --fn are all required without --from-csv")

    elif args.command == "compare":
        if args.matrix is not None:
            if any(x is not None for x in (args.left, args.right, args.left_csv, args.right_csv)):
                parser.error("compare: use either --matrix or --left/--right, not both")
            if len(args.matrix) < 2:
                parser.error("compare: --matrix must be given at least twice")
        else:
            for side in ("left", "right"):
                given = [getattr(args, side), getattr(args, f"{side}_csv")]
                if sum(x is not None for x in given) != 1:
                    parser.error(f"compare: give exactly one of --{side} and --{side}-csv")


def get_config(args: argparse.Namespace) -> Settings:
    """The settings of a run: the config file (or defaults) overridden by the given flags."""
    config = Settings.from_file(args.config_file) if args.config_file else Settings()

    updates: Dict[str, Any] = {}
    if args.format is not None:
        updates["output"] = {"format": args.format}
    if args.rounding is not None:
        updates["report"] = {"precision": args.rounding}
    if args.positive_label is not None:
        updates["positive_label"] = args.positive_label
    if args.negative_label is not None:
        updates["negative_label"] = args.negative_label
    if args.pool_size is not None:
        updates["pool_size"] = args.pool_size
    if args.silent:
        updates["progress_bar"] = False

    heatmap: Dict[str, Any] = {}
    for name in ("tp_steps", "tn_steps", "significant_digits"):
        if getattr(args, name, None) is not None:
            heatmap[name] = getattr(args, name)
    if getattr(args, "plot_script", False):
        heatmap["plot_script"] = True
    if heatmap:
        updates["heatmap"] = heatmap

    return config.update(updates) if updates else config


def _emit(text: str, out: Optional[str]) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8")


def _read_matrix(file_name: str, config: Settings) -> ConfusionMatrix:
    return tally_predictions(
        Path(file_name),
        positive_label=config.positive_label,
        negative_label=config.negative_label,
    )


def run_compute(args: argparse.Namespace, config: Settings) -> int:
    if args.from_csv is not None:
        matrix = _read_matrix(args.from_csv, config)
    else:
        matrix = new_matrix(args.tp, args.tn, args.fp, args.fn)

    report = EvaluationReport(matrix=matrix, config=config)
    _emit(report.render(), args.out)
    return EXIT_OK


def run_compare(args: argparse.Namespace, config: Settings) -> int:
    if args.matrix is not None:
        table = compare([new_matrix(*counts) for counts in args.matrix], config=config)
    else:
        left = (
            new_matrix(*args.left)
            if args.left is not None
            else _read_matrix(args.left_csv, config)
        )
        right = (
            new_matrix(*args.right)
            if args.right is not None
            else _read_matrix(args.right_csv, config)
        )
        table = compare([left, right], names=["left", "right"], config=config)

    _emit(table.render(), args.out)
    return EXIT_OK


def run_heatmap(args: argparse.Namespace, config: Settings) -> int:
    settings = config.heatmap
    logger.info_def_run(f"heatmap ({args.metric.value})", args.p, args.n)
    grid = generate_grid(
        args.metric,
        args.p,
        args.n,
        tp_steps=settings.tp_steps,
        tn_steps=settings.tn_steps,
        pool_size=config.pool_size,
        progress_bar=config.progress_bar,
    )

    out = Path(args.out) if args.out else Path(f"{args.metric.value.lower()}_p{args.p}_n{args.n}.csv")
    out.write_text(grid_to_table(grid, settings.significant_digits), encoding="utf-8")
    written = [out]
    if settings.plot_script:
        script = out.with_suffix(".gp")
        script.write_text(
            render_plot_script(
                grid, out, terminal=settings.terminal, contour_levels=settings.contour_levels
            ),
            encoding="utf-8",
        )
        written.append(script)

    sys.stdout.write("".join(f"{path}\n" for path in written))
    return EXIT_OK


def run_repro_command(args: argparse.Namespace, config: Settings) -> int:
    out = Path(args.out) if args.out else Path("repro")
    summary = run_repro(out, target=args.target, config=config)
    sys.stdout.write(summary.render(root=out))
    return EXIT_OK if summary.passed else EXIT_REPRO_FAILED


COMMANDS = {
    "compute": run_compute,
    "compare": run_compare,
    "heatmap": run_heatmap,
    "repro": run_repro_command,
}


def main(args: Optional[List[Any]] = None) -> int:
    """Run the `imbalance_metrics` package.

    Args:
      args: Arguments for the programme (Default value=None).

    Returns:
      The exit code: 0 on success, 2 for unreadable or invalid input, 3 for a domain error
      (empty class, mismatched test sets), 1 when a reproduction does not match.
    """

    # Parse the arguments
    parsed_args = parse_args(args)

    handler = None
    if parsed_args.verbose:
        handler = logging.StreamHandler(sys.stderr)
        logger.addHandler(handler)

    try:
        config = get_config(parsed_args)
        return COMMANDS[parsed_args.command](parsed_args, config)
    except DomainError as e:
        sys.stderr.write(f"error: {e}\n")
        return EXIT_DOMAIN_ERROR
    except (InputError, ValueError, OSError) as e:
        sys.stderr.write(f"error: {e}\n")
        return EXIT_INPUT_ERROR
    finally:
        if handler is not None:
            logger.removeHandler(handler)
