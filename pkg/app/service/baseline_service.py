"""
Distance correlation baseline and permutation calibration.
"""
import logging
from typing import Callable, Tuple

import numpy as np
from scipy.spatial.distance import pdist, squareform

from app.core.config import settings
from app.core.exceptions import InvalidConfig, LengthMismatch, SampleTooSmall
from app.model.evaluation import ScoredEvaluation
from app.schema.report import DcorResult
from app.utils.seeds import derive

logger = logging.getLogger(__name__)

Statistic = Callable[[np.ndarray, np.ndarray], float]


def _rows(a) -> np.ndarray:
    a = np.asarray(a, dtype=float)
    return a.reshape(-1, 1) if a.ndim == 1 else a


def double_centered(rows: np.ndarray) -> np.ndarray:
    """Euclidean distance matrix with row, column and grand means removed."""
    d = squareform(pdist(rows, metric="euclidean"))
    return d - d.mean(axis=0)[None, :] - d.mean(axis=1)[:, None] + d.mean()


def _dcor_from(a: np.ndarray, b: np.ndarray, dcov_xx: float, dcov_yy: float) -> Tuple[float, float]:
    dcov_sq = max(float(np.mean(a * b)), 0.0)
    denom = np.sqrt(dcov_xx) * np.sqrt(dcov_yy)
    if denom <= 0:
        return dcov_sq, 0.0
    return dcov_sq, float(np.sqrt(dcov_sq) / np.sqrt(denom))


def _check_pair(x, y) -> Tuple[np.ndarray, np.ndarray]:
    x, y = _rows(x), _rows(y)
    if x.shape[0] != y.shape[0]:
        raise LengthMismatch(x.shape[0], y.shape[0])
    if x.shape[0] < 2:
        raise SampleTooSmall(x.shape[0], 2)
    return x, y


def distance_correlation(x_rows, y_rows) -> DcorResult:
    """V-statistic distance correlation; 0 when either self-covariance vanishes."""
    x, y = _check_pair(x_rows, y_rows)
    a, b = double_centered(x), double_centered(y)
    dcov_xx = max(float(np.mean(a * a)), 0.0)
    dcov_yy = max(float(np.mean(b * b)), 0.0)
    dcov_sq, dcor = _dcor_from(a, b, dcov_xx, dcov_yy)
    return DcorResult(dcov_sq=dcov_sq, dcor=dcor)


def dcor_statistic(x_rows, y_rows) -> float:
    return distance_correlation(x_rows, y_rows).dcor


def _permutation(seed: int, b: int, n: int) -> np.ndarray:
    return np.random.default_rng(derive(seed, b)).permutation(n)


def permutation_pvalue(stat: Statistic, x_rows, y_rows, B: int, seed: int) -> float:
    """(1 + #{b : stat(x, y[pi_b]) >= stat(x, y)}) / (B + 1)."""
    if B < 1:
        raise InvalidConfig(f"B must be >= 1, got {B}")
    x, y = _rows(x_rows), _rows(y_rows)
    if x.shape[0] != y.shape[0]:
        raise LengthMismatch(x.shape[0], y.shape[0])
    observed = stat(x, y)
    exceed = 0
    for b in range(B):
        if stat(x, y[_permutation(seed, b, y.shape[0])]) >= observed:
            exceed += 1
    return (1 + exceed) / (B + 1)


def dcor_test(x_rows, y_rows, B: int = None, seed: int = None) -> DcorResult:
    """Distance correlation with a permutation p-value; distance matrices built once."""
    B = settings.DCOR_PERMUTATIONS if B is None else B
    seed = settings.DEFAULT_SEED if seed is None else seed
    if B < 1:
        raise InvalidConfig(f"B must be >= 1, got {B}")
    x, y = _check_pair(x_rows, y_rows)
    a = double_centered(x)
    b = double_centered(y)
    dcov_xx = max(float(np.mean(a * a)), 0.0)
    dcov_yy = max(float(np.mean(b * b)), 0.0)
    dcov_sq, observed = _dcor_from(a, b, dcov_xx, dcov_yy)

    exceed = 0
    n = x.shape[0]
    for k in range(B):
        perm = _permutation(seed, k, n)
        _, stat_k = _dcor_from(a, b[np.ix_(perm, perm)], dcov_xx, dcov_yy)
        if stat_k >= observed:
            exceed += 1
    return DcorResult(dcov_sq=dcov_sq, dcor=observed, p_value=(1 + exceed) / (B + 1))


def score_permutation_pvalue(
    evaluation: ScoredEvaluation,
    statistic: Callable[[ScoredEvaluation], float],
    B: int,
    seed: int,
) -> float:
    """Calibrate a score statistic (t or KL) by randomly relabeling the pooled 2*n2 scores.

    Large values indicate dependence, so the p-value counts relabelings at or above the observed value.
    """
    if B < 1:
        raise InvalidConfig(f"B must be >= 1, got {B}")
    n2 = evaluation.n2
    pooled = np.concatenate([evaluation.s_joint, evaluation.s_prod])
    observed = statistic(evaluation)
    exceed = 0
    for b in range(B):
        perm = _permutation(seed, b, 2 * n2)
        shuffled = pooled[perm]
        if statistic(ScoredEvaluation(shuffled[:n2], shuffled[n2:])) >= observed:
            exceed += 1
    return (1 + exceed) / (B + 1)
