"""
CSV ingestion for paired samples.
Dialect: comma separated, header row, '.' decimal point, unquoted numeric cells.
"""
import logging
import math
from pathlib import Path
from typing import List, Sequence, Union

import numpy as np
import pandas as pd

from app.core.exceptions import (
    DataFileNotFound,
    EmptySelection,
    OverlappingSelectors,
    ParseError,
    UnknownColumn,
)
from app.model.sample import PairedSample

logger = logging.getLogger(__name__)

ColumnSelector = Union[str, Sequence[str]]


def parse_selector(selector: ColumnSelector) -> List[str]:
    """Accept 'a,b' or ['a', 'b']; blanks are dropped."""
    if isinstance(selector, str):
        items = selector.split(",")
    else:
        items = list(selector)
    return [c.strip() for c in items if c and c.strip()]


def _parse_cell(raw: str, row: int, col: str) -> float:
    try:
        value = float(raw)
    except (TypeError, ValueError):
        raise ParseError(row, col, raw)
    if not math.isfinite(value):
        raise ParseError(row, col, raw)
    return value


def _parse_block(frame: pd.DataFrame, columns: List[str]) -> np.ndarray:
    out = np.empty((len(frame), len(columns)), dtype=float)
    for j, col in enumerate(columns):
        for i, raw in enumerate(frame[col].tolist()):
            # data rows are reported 1-based, header excluded
            out[i, j] = _parse_cell(raw, i + 1, col)
    return out


def load_paired_csv(path: Union[str, Path], x_cols: ColumnSelector, y_cols: ColumnSelector) -> PairedSample:
    """Load the selected X and Y columns of a CSV file into a PairedSample (file row order)."""
    x_names = parse_selector(x_cols)
    y_names = parse_selector(y_cols)
    if not x_names:
        raise EmptySelection("X")
    if not y_names:
        raise EmptySelection("Y")
    overlap = set(x_names) & set(y_names)
    if overlap:
        raise OverlappingSelectors(overlap)

    path = Path(path)
    if not path.is_file():
        raise DataFileNotFound(str(path))

    frame = pd.read_csv(path, sep=",", dtype=str, keep_default_na=False, skipinitialspace=True)
    for col in x_names + y_names:
        if col not in frame.columns:
            raise UnknownColumn(col)

    x = _parse_block(frame, x_names)
    y = _parse_block(frame, y_names)
    logger.info("Loaded %s rows from %s (d1=%s, d2=%s)", len(frame), path, len(x_names), len(y_names))
    return PairedSample(x, y, x_names=tuple(x_names), y_names=tuple(y_names))


def write_paired_csv(sample: PairedSample, path: Union[str, Path]) -> None:
    """Write a PairedSample with 17 significant digits so reloading is bit-exact."""
    frame = pd.DataFrame(
        np.hstack([sample.x_rows, sample.y_rows]),
        columns=list(sample.x_names) + list(sample.y_names),
    )
    frame.to_csv(path, index=False, float_format="%.17g")
