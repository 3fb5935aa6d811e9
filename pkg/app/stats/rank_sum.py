"""
Rank-sum statistic R with randomized tie-breaking.

R = n2^-2 * sum_{i,j} [ 1{a_i < b_j} + 1{zeta_i < eta_j} 1{a_i = b_j} ]

with a = joint scores, b = permuted scores and one seeded uniform per element.
The fast path maps (score, uniform) pairs to exact integer keys so that the
count is a single sorted search, O(n2 log n2), and agrees with the double loop
bit for bit.
"""
from typing import Tuple

import numpy as np

from app.core.exceptions import DegeneratePairing, LengthMismatch
from app.model.evaluation import ScoredEvaluation


def tie_uniforms(n2: int, tie_seed: int) -> Tuple[np.ndarray, np.ndarray]:
    rng = np.random.default_rng(tie_seed)
    zeta = rng.random(n2)
    eta = rng.random(n2)
    return zeta, eta


def _check(evaluation: ScoredEvaluation) -> int:
    n2 = evaluation.n2
    if n2 < 3:
        raise DegeneratePairing(n2)
    return n2


def rank_sum_count(a: np.ndarray, b: np.ndarray, zeta: np.ndarray, eta: np.ndarray) -> int:
    """Number of (i, j) with (b_j, eta_j) lexicographically above (a_i, zeta_i)."""
    if a.shape[0] != b.shape[0]:
        raise LengthMismatch(a.shape[0], b.shape[0])
    n = a.shape[0]
    _, value_rank = np.unique(np.concatenate([a, b]), return_inverse=True)
    uniq_u, uniform_rank = np.unique(np.concatenate([zeta, eta]), return_inverse=True)
    width = np.int64(uniq_u.shape[0])
    keys = value_rank.astype(np.int64).ravel() * width + uniform_rank.astype(np.int64).ravel()
    key_a, key_b = keys[:n], np.sort(keys[n:])
    above = n - np.searchsorted(key_b, key_a, side="right")
    return int(above.sum())


def rank_sum_R(evaluation: ScoredEvaluation, tie_seed: int) -> float:
    n2 = _check(evaluation)
    zeta, eta = tie_uniforms(n2, tie_seed)
    count = rank_sum_count(evaluation.s_joint, evaluation.s_prod, zeta, eta)
    return count / (n2 * n2)


def rank_sum_R_naive(evaluation: ScoredEvaluation, tie_seed: int) -> float:
    """O(n2^2) double loop; the reference for rank_sum_R."""
    n2 = _check(evaluation)
    zeta, eta = tie_uniforms(n2, tie_seed)
    a = evaluation.s_joint[:, None]
    b = evaluation.s_prod[None, :]
    less = a < b
    tie_break = (a == b) & (zeta[:, None] < eta[None, :])
    count = int(less.sum()) + int(tie_break.sum())
    return count / (n2 * n2)


def tie_count(evaluation: ScoredEvaluation) -> int:
    """Number of cross pairs (i, j) with equal scores."""
    b = np.sort(evaluation.s_prod)
    a = evaluation.s_joint
    return int((np.searchsorted(b, a, side="right") - np.searchsorted(b, a, side="left")).sum())


def mann_whitney_fraction(a, b) -> float:
    """P{A < B} + 1/2 P{A = B} over all cross pairs (exact expectation of the tie-break)."""
    a = np.asarray(a, dtype=float).ravel()
    b = np.sort(np.asarray(b, dtype=float).ravel())
    right = np.searchsorted(b, a, side="right")
    left = np.searchsorted(b, a, side="left")
    greater = (b.shape[0] - right).sum()
    ties = (right - left).sum()
    return float((greater + 0.5 * ties) / (a.shape[0] * b.shape[0]))
