"""
Generative models M1-M6. Only the first coordinates of X and Y are related:

    Y_1 = a * f(X_1) + eps,  eps ~ N(0, 1)

with f per model; the remaining coordinates are noise. X and the Y noise
block share the configured covariance (identity or AR(1)) and tails
(gaussian or multivariate t with 2 degrees of freedom).
"""
from dataclasses import asdict, dataclass
from typing import Callable, Dict

import numpy as np

from app.core.exceptions import InvalidConfig, InvalidModel
from app.model.sample import PairedSample

STUDENT_T_DF = 2.0


def _m4(x: np.ndarray, rng: np.random.Generator) -> np.ndarray:
    centers = np.where(x < 0, 1.0, -1.0)
    return centers + rng.standard_normal(x.shape[0])


_RECIPES: Dict[str, Callable[[np.ndarray, np.random.Generator], np.ndarray]] = {
    "M1": lambda x, rng: x,
    "M2": lambda x, rng: np.sin(x),
    "M3": lambda x, rng: np.exp(x),
    "M4": _m4,
    "M5": lambda x, rng: np.log(4.0 * x ** 2),
    "M6": lambda x, rng: 5.0 * np.sqrt(np.abs(x)),
}

MODEL_IDS = tuple(_RECIPES)


@dataclass(frozen=True)
class SimModel:
    model_id: str = "M1"
    a: float = 0.0
    d1: int = 10
    d2: int = 10
    covariance: str = "identity"  # identity | ar1
    rho: float = 0.5
    tails: str = "gaussian"  # gaussian | student_t

    def __post_init__(self):
        if self.model_id not in _RECIPES:
            raise InvalidModel(f"Unknown simulation model {self.model_id!r}; choose from {list(MODEL_IDS)}")
        if self.d1 < 1 or self.d2 < 1:
            raise InvalidConfig(f"d1 and d2 must be >= 1, got {self.d1}, {self.d2}")
        if self.a < 0:
            raise InvalidConfig(f"signal a must be >= 0, got {self.a}")
        if self.covariance not in ("identity", "ar1"):
            raise InvalidConfig(f"Unknown covariance kind {self.covariance!r}")
        if self.tails not in ("gaussian", "student_t"):
            raise InvalidConfig(f"Unknown tail kind {self.tails!r}")
        if self.covariance == "ar1" and not -1.0 < self.rho < 1.0:
            raise InvalidConfig(f"ar1 rho must lie in (-1, 1), got {self.rho}")

    def to_dict(self) -> dict:
        return asdict(self)


def ar1_cholesky(d: int, rho: float) -> np.ndarray:
    idx = np.arange(d)
    return np.linalg.cholesky(rho ** np.abs(idx[:, None] - idx[None, :]))


def _correlated(z: np.ndarray, model: SimModel) -> np.ndarray:
    if model.covariance == "ar1" and z.shape[1] > 1:
        return z @ ar1_cholesky(z.shape[1], model.rho).T
    return z


def _t_scale(n: int, rng: np.random.Generator) -> np.ndarray:
    """Row divisors sqrt(chi2(df) / df) of the gaussian scale mixture."""
    return np.sqrt(rng.chisquare(STUDENT_T_DF, size=n) / STUDENT_T_DF)[:, None]


def generate(model: SimModel, n: int, seed: int) -> PairedSample:
    rng = np.random.default_rng(seed)
    x = _correlated(rng.standard_normal((n, model.d1)), model)
    noise = _correlated(rng.standard_normal((n, model.d2)), model)
    eps = noise[:, 0].copy()
    if model.tails == "student_t":
        x = x / _t_scale(n, rng)
        noise = noise / _t_scale(n, rng)

    y = noise
    y[:, 0] = model.a * _RECIPES[model.model_id](x[:, 0], rng) + eps
    return PairedSample(x, y)
