"""
Sparse basis-expansion estimate of theta by the penalized quadratic program

    minimize  b' G b - 2 c' b + lambda * ||b||_1,
    G = n^-1 sum over the 2n stacked expanded rows of xi xi',
    c = n^-1 sum over the n joint expanded rows of xi,

solved by cyclic coordinate descent with soft-thresholding.
"""
import logging
from typing import Any, Dict, List, Tuple

import numpy as np

from app.classifier.base import ScoreModel, register
from app.classifier.basis import BasisConfig, basis_expand_rows
from app.classifier.logistic import soft_threshold
from app.core.config import settings
from app.core.exceptions import LengthMismatch

logger = logging.getLogger(__name__)


@register
class QuadScoreModel(ScoreModel):
    kind = "quadratic"

    def __init__(self, beta: np.ndarray, n_features: int, basis: BasisConfig, **kwargs):
        super().__init__(n_features=n_features, **kwargs)
        self.beta = np.asarray(beta, dtype=float)
        self.basis = basis

    @property
    def support_size(self) -> int:
        return int(np.count_nonzero(self.beta))

    def raw_scores(self, features: np.ndarray) -> np.ndarray:
        return basis_expand_rows(features, self.basis) @ self.beta

    def parameters(self) -> Dict[str, Any]:
        return {"beta": self.beta}

    @classmethod
    def from_parameters(cls, n_features, params, hyperparameters):
        basis = BasisConfig(s1=int(hyperparameters["s1"]), k_n=int(hyperparameters["k_n"]))
        return cls(params["beta"], n_features, basis, hyperparameters=hyperparameters)


def quadratic_objective(gram: np.ndarray, linear: np.ndarray, beta: np.ndarray, lam: float) -> float:
    return float(beta @ gram @ beta - 2.0 * linear @ beta + lam * np.sum(np.abs(beta)))


def solve_penalized_quadratic(
    gram: np.ndarray,
    linear: np.ndarray,
    lam: float,
    tol: float = None,
    max_sweeps: int = None,
) -> Tuple[np.ndarray, bool, List[float]]:
    """Cyclic coordinate descent; converged when the largest coordinate move < tol."""
    tol = settings.QUAD_TOL if tol is None else tol
    max_sweeps = settings.QUAD_MAX_SWEEPS if max_sweeps is None else max_sweeps
    m = linear.shape[0]
    beta = np.zeros(m)
    g_beta = np.zeros(m)  # gram @ beta
    diag = np.diag(gram).copy()
    history = [quadratic_objective(gram, linear, beta, lam)]
    converged = False

    for _ in range(max_sweeps):
        max_move = 0.0
        for k in range(m):
            if diag[k] <= 0:
                continue
            partial = linear[k] - (g_beta[k] - diag[k] * beta[k])
            new = float(soft_threshold(np.array(partial), lam / 2.0)) / diag[k]
            delta = new - beta[k]
            if delta != 0.0:
                g_beta += gram[:, k] * delta
                beta[k] = new
                max_move = max(max_move, abs(delta))
        history.append(float(beta @ g_beta - 2.0 * linear @ beta + lam * np.sum(np.abs(beta))))
        if max_move < tol:
            converged = True
            break

    return beta, converged, history


def penalized_quadratic_from_design(
    xi_joint: np.ndarray,
    xi_prod: np.ndarray,
    lam: float,
    n_norm: int = None,
) -> Tuple[np.ndarray, bool, List[float]]:
    n_norm = xi_joint.shape[0] if n_norm is None else n_norm
    stacked = np.vstack([xi_joint, xi_prod])
    gram = stacked.T @ stacked / n_norm
    linear = xi_joint.sum(axis=0) / n_norm
    return solve_penalized_quadratic(gram, linear, lam)


def default_lambda(m: int, n: int) -> float:
    return float(np.sqrt(np.log(max(m, 2)) / n))


def fit_penalized_quadratic(
    sample_joint: np.ndarray,
    sample_prod: np.ndarray,
    cfg: BasisConfig = None,
    lam: float = None,
) -> QuadScoreModel:
    """lam defaults to sqrt(log(m) / n)."""
    cfg = cfg or BasisConfig(s1=settings.BASIS_S1, k_n=settings.BASIS_K)
    sample_joint = np.atleast_2d(np.asarray(sample_joint, dtype=float))
    sample_prod = np.atleast_2d(np.asarray(sample_prod, dtype=float))
    if sample_joint.shape[0] != sample_prod.shape[0]:
        raise LengthMismatch(sample_joint.shape[0], sample_prod.shape[0])
    n, d = sample_joint.shape

    xi_joint = basis_expand_rows(sample_joint, cfg)
    xi_prod = basis_expand_rows(sample_prod, cfg)
    m = xi_joint.shape[1]
    if lam is None:
        lam = default_lambda(m, n)

    beta, converged, history = penalized_quadratic_from_design(xi_joint, xi_prod, lam)
    if not converged:
        logger.warning("Coordinate descent did not converge in %s sweeps; returning best iterate", len(history) - 1)

    model = QuadScoreModel(
        beta,
        d,
        cfg,
        hyperparameters={"lambda": lam, **cfg.to_dict()},
        diagnostics={
            "converged": converged,
            "sweeps": len(history) - 1,
            "objective": history[-1],
            "support_size": int(np.count_nonzero(beta)),
            "basis_dimension": m,
        },
    )
    model.objective_path = history
    return model
