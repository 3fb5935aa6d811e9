"""
L1-penalized logistic regression by proximal gradient with backtracking.

objective(w) = mean_i [log(1 + exp(u_i)) - k_i u_i] + lambda * ||w[:-1]||_1,
u = [Z, 1] w, intercept last and unpenalized.
"""
import logging
from typing import Any, Dict

import numpy as np
from scipy.special import expit

from app.classifier.base import ScoreModel, check_labels, register
from app.core.config import settings
from app.core.exceptions import NonFiniteLoss

logger = logging.getLogger(__name__)


def soft_threshold(x: np.ndarray, t: float) -> np.ndarray:
    return np.sign(x) * np.maximum(np.abs(x) - t, 0.0)


@register
class LinearScoreModel(ScoreModel):
    kind = "logistic"

    def __init__(self, weights: np.ndarray, **kwargs):
        weights = np.asarray(weights, dtype=float)
        super().__init__(n_features=weights.shape[0] - 1, **kwargs)
        self.weights = weights

    def raw_scores(self, features: np.ndarray) -> np.ndarray:
        return expit(features @ self.weights[:-1] + self.weights[-1])

    @property
    def zero_weights(self) -> int:
        return int(np.sum(self.weights[:-1] == 0))

    def parameters(self) -> Dict[str, Any]:
        return {"weights": self.weights}

    @classmethod
    def from_parameters(cls, n_features, params, hyperparameters):
        return cls(params["weights"], hyperparameters=hyperparameters)


def _smooth_loss(design: np.ndarray, labels: np.ndarray, w: np.ndarray) -> float:
    u = design @ w
    return float(np.mean(np.logaddexp(0.0, u) - labels * u))


def _gradient(design: np.ndarray, labels: np.ndarray, w: np.ndarray) -> np.ndarray:
    return design.T @ (expit(design @ w) - labels) / design.shape[0]


def _prox(w: np.ndarray, t: float) -> np.ndarray:
    out = soft_threshold(w, t)
    out[-1] = w[-1]
    return out


def fit_logistic_l1(
    features: np.ndarray,
    labels: np.ndarray,
    lam: float = None,
    max_iter: int = None,
    tol: float = None,
    seed: int = 0,
) -> LinearScoreModel:
    """Approximate minimizer of mean logistic loss + lam * ||w||_1 (intercept unpenalized).

    The solver is deterministic; seed is recorded for the report only.
    """
    lam = settings.LOGISTIC_LAMBDA if lam is None else lam
    max_iter = settings.LOGISTIC_MAX_ITER if max_iter is None else max_iter
    tol = settings.LOGISTIC_TOL if tol is None else tol
    features = np.asarray(features, dtype=float)
    labels = np.asarray(labels, dtype=float)
    check_labels(labels)

    design = np.hstack([features, np.ones((features.shape[0], 1))])
    w = np.zeros(design.shape[1])

    def objective(v: np.ndarray) -> float:
        return _smooth_loss(design, labels, v) + lam * float(np.sum(np.abs(v[:-1])))

    history = [objective(w)]
    step = 1.0
    converged = False
    for it in range(1, max_iter + 1):
        f = _smooth_loss(design, labels, w)
        g = _gradient(design, labels, w)
        for _ in range(80):
            candidate = _prox(w - step * g, step * lam)
            diff = candidate - w
            f_new = _smooth_loss(design, labels, candidate)
            if not np.isfinite(f_new):
                raise NonFiniteLoss(it)
            if f_new <= f + g @ diff + (diff @ diff) / (2.0 * step) + 1e-15:
                break
            step *= 0.5
        else:
            candidate = w
        w = candidate
        history.append(objective(w))
        if history[-2] - history[-1] < tol:
            converged = True
            break
        step *= 1.25

    if not converged:
        logger.warning("L1-logistic stopped at max_iter=%s without reaching tol=%s", max_iter, tol)

    model = LinearScoreModel(
        w,
        hyperparameters={"lambda": lam, "max_iter": max_iter, "tol": tol, "seed": seed},
        diagnostics={
            "iterations": len(history) - 1,
            "objective": history[-1],
            "converged": converged,
            "zero_weights": int(np.sum(w[:-1] == 0)),
        },
    )
    model.objective_path = history
    return model
