"""
Coordinate ("matrix market"-style) triplet reader for single-cell style data.

Layout: a header line (e.g. '%%MatrixMarket matrix coordinate real general'),
optional '%' comment lines, a size line 'n_rows n_cols nnz', then one
'row col value' triplet per line with 1-based indices.
"""
import logging
from pathlib import Path
from typing import Union

import numpy as np
import pandas as pd

from app.core.exceptions import DataError, DataFileNotFound, DuplicateEntry, IndexOutOfBounds, RowCountMismatch
from app.model.sample import SparseColumnMatrix, SparsePairedView

logger = logging.getLogger(__name__)


def read_triplet_matrix(path: Union[str, Path], transpose: bool = False) -> SparseColumnMatrix:
    path = Path(path)
    if not path.is_file():
        raise DataFileNotFound(str(path))

    table = pd.read_csv(path, sep=r"\s+", comment="%", header=None, names=["row", "col", "value"], dtype=float)
    if table.empty:
        raise DataError(code="PARSE_ERROR", message=f"{path}: missing size line.")
    size = table.iloc[0]
    if size.isna().any():
        raise DataError(code="PARSE_ERROR", message=f"{path}: size line must be 'n_rows n_cols nnz'.")
    n_rows, n_cols = int(size["row"]), int(size["col"])
    entries = table.iloc[1:]
    if entries.isna().any().any():
        raise DataError(code="PARSE_ERROR", message=f"{path}: every triplet needs row, col and value.")

    rows = entries["row"].to_numpy(dtype=np.int64)
    cols = entries["col"].to_numpy(dtype=np.int64)
    values = entries["value"].to_numpy(dtype=float)
    if not np.isfinite(values).all():
        raise DataError(code="PARSE_ERROR", message=f"{path}: non-finite value in triplets.")

    bad = (rows < 1) | (rows > n_rows) | (cols < 1) | (cols > n_cols)
    if bad.any():
        k = int(np.argmax(bad))
        raise IndexOutOfBounds(
            f"{path}: triplet ({rows[k]}, {cols[k]}) outside a {n_rows}x{n_cols} matrix."
        )

    keys = (rows - 1) * n_cols + (cols - 1)
    uniq, counts = np.unique(keys, return_counts=True)
    if (counts > 1).any():
        dup = int(uniq[np.argmax(counts > 1)])
        raise DuplicateEntry(dup // n_cols + 1, dup % n_cols + 1)

    keep = values != 0
    if transpose:
        matrix = SparseColumnMatrix.from_triplets(n_cols, n_rows, cols[keep] - 1, rows[keep] - 1, values[keep])
    else:
        matrix = SparseColumnMatrix.from_triplets(n_rows, n_cols, rows[keep] - 1, cols[keep] - 1, values[keep])
    density = matrix.nnz / max(1, n_rows * n_cols)
    logger.info("Read %sx%s sparse matrix from %s (%.2f%% nonzero)", matrix.n_rows, matrix.n_cols, path, 100 * density)
    return matrix


def load_sparse_market(
    path_x: Union[str, Path],
    path_y: Union[str, Path],
    transpose: bool = False,
) -> SparsePairedView:
    """Load two triplet files into a sparse-backed paired view; rows are observations."""
    x = read_triplet_matrix(path_x, transpose=transpose)
    y = read_triplet_matrix(path_y, transpose=transpose)
    if x.n_rows != y.n_rows:
        raise RowCountMismatch(x.n_rows, y.n_rows)
    return SparsePairedView(x, y)
