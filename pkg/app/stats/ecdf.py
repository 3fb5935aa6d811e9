"""
Empirical distribution function with the weak-inequality convention F(t) = #{v <= t} / m.
"""
from typing import Union

import numpy as np

from app.core.exceptions import EmptyInput


class Ecdf:
    def __init__(self, values):
        values = np.asarray(values, dtype=float).ravel()
        if values.size == 0:
            raise EmptyInput("ECDF sample")
        self._sorted = np.sort(values)
        self._sorted.setflags(write=False)

    @property
    def m(self) -> int:
        return self._sorted.shape[0]

    @property
    def sorted_values(self) -> np.ndarray:
        return self._sorted

    def counts(self, t) -> np.ndarray:
        """#{values <= t} for each t."""
        return np.searchsorted(self._sorted, np.asarray(t, dtype=float), side="right")

    def __call__(self, t) -> Union[float, np.ndarray]:
        out = self.counts(t) / self.m
        if np.ndim(out) == 0:
            return float(out)
        return out


def ecdf(values) -> Ecdf:
    return Ecdf(values)
