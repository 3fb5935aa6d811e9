"""
Paired-sample entities: dense PairedSample, sparse column storage and the
sparse-backed view that shares the row interface.
"""
import json
from dataclasses import dataclass, field
from typing import Iterator, List, Sequence, Tuple

import numpy as np
import scipy.sparse as sp_sparse

from app.core.exceptions import DataError, RowCountMismatch, SampleTooSmall

MIN_ROWS = 4


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=float, copy=True)
    if a.ndim == 1:
        a = a.reshape(-1, 1)
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class PairedSample:
    """n rows of (x in R^d1, y in R^d2). Immutable after construction."""
    x_rows: np.ndarray
    y_rows: np.ndarray
    x_names: Tuple[str, ...] = ()
    y_names: Tuple[str, ...] = ()

    def __post_init__(self):
        x = _frozen(self.x_rows)
        y = _frozen(self.y_rows)
        if x.shape[0] != y.shape[0]:
            raise RowCountMismatch(x.shape[0], y.shape[0])
        if x.shape[0] < MIN_ROWS:
            raise SampleTooSmall(x.shape[0], MIN_ROWS)
        if not (np.isfinite(x).all() and np.isfinite(y).all()):
            raise DataError(code="NON_FINITE_DATA", message="Sample contains NaN or Inf entries.")
        object.__setattr__(self, "x_rows", x)
        object.__setattr__(self, "y_rows", y)
        if not self.x_names:
            object.__setattr__(self, "x_names", tuple(f"x{j + 1}" for j in range(x.shape[1])))
        if not self.y_names:
            object.__setattr__(self, "y_names", tuple(f"y{j + 1}" for j in range(y.shape[1])))

    @property
    def n(self) -> int:
        return self.x_rows.shape[0]

    @property
    def d1(self) -> int:
        return self.x_rows.shape[1]

    @property
    def d2(self) -> int:
        return self.y_rows.shape[1]

    def take_x(self, indices: Sequence[int]) -> np.ndarray:
        return self.x_rows[np.asarray(indices, dtype=int)]

    def take_y(self, indices: Sequence[int]) -> np.ndarray:
        return self.y_rows[np.asarray(indices, dtype=int)]

    def row(self, i: int) -> Tuple[np.ndarray, np.ndarray]:
        return self.x_rows[i], self.y_rows[i]

    def iter_rows(self) -> Iterator[Tuple[np.ndarray, np.ndarray]]:
        for i in range(self.n):
            yield self.row(i)

    def to_dense(self) -> "PairedSample":
        return self


class SparseColumnMatrix:
    """Column-compressed matrix; absent entries are zero, stored values nonzero."""

    def __init__(self, matrix: sp_sparse.spmatrix):
        csc = sp_sparse.csc_matrix(matrix, dtype=float)
        csc.eliminate_zeros()
        csc.sort_indices()
        self._csc = csc
        self._csr = csc.tocsr()

    @classmethod
    def from_triplets(cls, n_rows: int, n_cols: int, rows, cols, values) -> "SparseColumnMatrix":
        coo = sp_sparse.coo_matrix((values, (rows, cols)), shape=(n_rows, n_cols))
        return cls(coo)

    @property
    def n_rows(self) -> int:
        return self._csc.shape[0]

    @property
    def n_cols(self) -> int:
        return self._csc.shape[1]

    @property
    def nnz(self) -> int:
        return self._csc.nnz

    def column(self, j: int) -> List[Tuple[int, float]]:
        start, stop = self._csc.indptr[j], self._csc.indptr[j + 1]
        return list(zip(self._csc.indices[start:stop].tolist(), self._csc.data[start:stop].tolist()))

    def take_rows(self, indices: Sequence[int]) -> np.ndarray:
        return self._csr[np.asarray(indices, dtype=int)].toarray()

    def to_dense(self) -> np.ndarray:
        return self._csc.toarray()


@dataclass(frozen=True)
class SparsePairedView:
    """PairedSample interface backed by two sparse matrices with equal row counts."""
    x_matrix: SparseColumnMatrix
    y_matrix: SparseColumnMatrix

    def __post_init__(self):
        if self.x_matrix.n_rows != self.y_matrix.n_rows:
            raise RowCountMismatch(self.x_matrix.n_rows, self.y_matrix.n_rows)

    @property
    def n(self) -> int:
        return self.x_matrix.n_rows

    @property
    def d1(self) -> int:
        return self.x_matrix.n_cols

    @property
    def d2(self) -> int:
        return self.y_matrix.n_cols

    def take_x(self, indices: Sequence[int]) -> np.ndarray:
        return self.x_matrix.take_rows(indices)

    def take_y(self, indices: Sequence[int]) -> np.ndarray:
        return self.y_matrix.take_rows(indices)

    def row(self, i: int) -> Tuple[np.ndarray, np.ndarray]:
        return self.take_x([i])[0], self.take_y([i])[0]

    def iter_rows(self) -> Iterator[Tuple[np.ndarray, np.ndarray]]:
        for i in range(self.n):
            yield self.row(i)

    def to_dense(self) -> PairedSample:
        return PairedSample(self.x_matrix.to_dense(), self.y_matrix.to_dense())


@dataclass(frozen=True)
class StandardizationStats:
    x_mean: np.ndarray
    x_std: np.ndarray
    y_mean: np.ndarray
    y_std: np.ndarray
    x_constant: np.ndarray = field(default=None)
    y_constant: np.ndarray = field(default=None)

    def __post_init__(self):
        if self.x_constant is None:
            object.__setattr__(self, "x_constant", np.asarray(self.x_std) == 0)
        if self.y_constant is None:
            object.__setattr__(self, "y_constant", np.asarray(self.y_std) == 0)

    @property
    def constant_columns(self) -> int:
        return int(np.sum(self.x_constant) + np.sum(self.y_constant))

    def to_dict(self) -> dict:
        return {
            "x_mean": [float(v) for v in self.x_mean],
            "x_std": [float(v) for v in self.x_std],
            "y_mean": [float(v) for v in self.y_mean],
            "y_std": [float(v) for v in self.y_std],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_json(cls, raw: str) -> "StandardizationStats":
        data = json.loads(raw)
        return cls(
            x_mean=np.asarray(data["x_mean"], dtype=float),
            x_std=np.asarray(data["x_std"], dtype=float),
            y_mean=np.asarray(data["y_mean"], dtype=float),
            y_std=np.asarray(data["y_std"], dtype=float),
        )
