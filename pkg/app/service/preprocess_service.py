"""
Column standardization.
"""
import logging
from typing import Tuple

import numpy as np

from app.core.exceptions import SampleTooSmall
from app.model.sample import PairedSample, StandardizationStats

logger = logging.getLogger(__name__)


def standardize_columns(matrix: np.ndarray) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Center and scale each column to sample mean 0 / sample std 1; constant columns pass through."""
    matrix = np.asarray(matrix, dtype=float)
    if matrix.ndim == 1:
        matrix = matrix.reshape(-1, 1)
    if matrix.shape[0] < 2:
        raise SampleTooSmall(matrix.shape[0], 2)
    mean = matrix.mean(axis=0)
    std = matrix.std(axis=0, ddof=1)
    constant = std == 0
    out = matrix.copy()
    live = ~constant
    out[:, live] = (matrix[:, live] - mean[live]) / std[live]
    return out, mean, std


def standardize(sample: PairedSample) -> Tuple[PairedSample, StandardizationStats]:
    x, x_mean, x_std = standardize_columns(sample.x_rows)
    y, y_mean, y_std = standardize_columns(sample.y_rows)
    stats = StandardizationStats(x_mean=x_mean, x_std=x_std, y_mean=y_mean, y_std=y_std)
    if stats.constant_columns:
        logger.warning("%s constant column(s) left unscaled", stats.constant_columns)
    return PairedSample(x, y, x_names=sample.x_names, y_names=sample.y_names), stats
