"""Utils for reading prediction files with pandas."""
import re
from pathlib import Path
from typing import Optional

import pandas as pd

from imbalance_metrics.model.confusion import (
    DEFAULT_POSITIVE_LABEL,
    ConfusionMatrix,
    from_labels,
)
from imbalance_metrics.model.errors import PredictionFileError

PREDICTION_COLUMNS = ["actual", "predicted"]


def is_supported_compression(file_extension: str) -> bool:
    """Determine if the given file extension indicates a compression format that pandas can handle automatically.

    Args:
        file_extension (str): the file extension to test

    Returns:
        bool: True if pandas decompresses files with this extension on the fly
    """
    return file_extension.lower() in [".bz2", ".gz", ".xz", ".zip"]


def uncompressed_extension(file_name: Path) -> str:
    """Returns the uncompressed extension of the given file name, e.g. `.csv` for `preds.csv.gz`."""
    extension = file_name.suffix.lower()
    if is_supported_compression(extension):
        return Path(file_name.stem.lower()).suffix
    return extension


def _parser_line(error: Exception) -> Optional[int]:
    match = re.search(r"line (\d+)", str(error))
    return int(match.group(1)) if match else None


def read_predictions(file_name: Path) -> pd.DataFrame:
    """Read an `actual,predicted` prediction file.

    Labels are kept as text tokens. Tab-separated files are read when the extension is `.tsv`.
    The returned frame has a `line` column with the 1-based line number of each pair.

    Raises:
        FileNotFoundError: if the file does not exist.
        PredictionFileError: on an empty file, a wrong header, a malformed row or an empty label.
    """
    file_name = Path(file_name)
    if not file_name.is_file():
        raise FileNotFoundError(f"Prediction file not found: {file_name}")

    sep = "\t" if uncompressed_extension(file_name) == ".tsv" else ","
    # Line 1 fixes the column count; a longer row is a parser error
    try:
        df = pd.read_csv(
            str(file_name),
            sep=sep,
            header=None,
            dtype=str,
            keep_default_na=False,
            skip_blank_lines=False,
            skipinitialspace=True,
        )
    except pd.errors.EmptyDataError:
        raise PredictionFileError(f"{file_name} is empty") from None
    except pd.errors.ParserError as e:
        raise PredictionFileError(
            f"{file_name} is not a two-column file", line=_parser_line(e)
        ) from None

    columns = [str(column).strip() for column in df.iloc[0].fillna("")]
    if columns != PREDICTION_COLUMNS:
        raise PredictionFileError(
            f"{file_name} must start with the header 'actual,predicted', got {','.join(columns)!r}",
            line=1,
        )
    df = df.iloc[1:].copy()
    df.columns = PREDICTION_COLUMNS
    df = df.fillna("")
    for column in PREDICTION_COLUMNS:
        df[column] = df[column].str.strip()

    df["line"] = df.index + 1
    blank = (df["actual"] == "") & (df["predicted"] == "")
    df = df[~blank]

    partial = df[(df["actual"] == "") | (df["predicted"] == "")]
    if len(partial) > 0:
        raise PredictionFileError(
            f"{file_name} has a row with an empty label", line=int(partial["line"].iloc[0])
        )
    if len(df) == 0:
        raise PredictionFileError(f"{file_name} has a header but no predictions")

    return df.reset_index(drop=True)


def tally_predictions(
    file_name: Path,
    positive_label: str = DEFAULT_POSITIVE_LABEL,
    negative_label: Optional[str] = None,
) -> ConfusionMatrix:
    """Read a prediction file and tally its confusion matrix.

    Raises:
        PredictionFileError: for the conditions of `read_predictions`, and for a label that is
            neither the positive nor the declared negative label (with its line number).
        UnknownLabelError: when more than two labels occur and no negative label is declared.
        DegenerateClassError: when one class never occurs among the actual labels.
    """
    df = read_predictions(file_name)

    if negative_label is not None:
        known = {positive_label, negative_label}
        unknown = df[~df["actual"].isin(known) | ~df["predicted"].isin(known)]
        if len(unknown) > 0:
            row = unknown.iloc[0]
            raise PredictionFileError(
                f"label {row['actual']!r}/{row['predicted']!r} is neither "
                f"{positive_label!r} nor {negative_label!r}",
                line=int(row["line"]),
            )

    return from_labels(
        df[PREDICTION_COLUMNS],
        positive_label=positive_label,
        negative_label=negative_label,
    )
