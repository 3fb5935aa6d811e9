"""
One-hidden-layer ReLU network with a sigmoid output, trained by minibatch
stochastic gradients on binary cross-entropy + l1_penalty * ||W1||_1.
Dropout acts on the hidden activations during training only.
"""
import logging
from typing import Any, Dict, Optional, Tuple

import numpy as np
from scipy.special import expit

from app.classifier.base import ScoreModel, check_labels, register
from app.core.config import settings
from app.core.exceptions import DivergenceDetected, InvalidConfig

logger = logging.getLogger(__name__)

PARAM_ORDER = ("W1", "b1", "w2", "b2")

Params = Dict[str, np.ndarray]


@register
class MlpScoreModel(ScoreModel):
    kind = "mlp"

    def __init__(self, params: Params, **kwargs):
        super().__init__(n_features=params["W1"].shape[1], **kwargs)
        self.params = {k: np.array(v, dtype=float) for k, v in params.items()}

    @property
    def hidden(self) -> int:
        return self.params["W1"].shape[0]

    def raw_scores(self, features: np.ndarray) -> np.ndarray:
        _, _, u = forward(self.params, features)
        return expit(u)

    def parameters(self) -> Dict[str, Any]:
        return dict(self.params)

    @classmethod
    def from_parameters(cls, n_features, params, hyperparameters):
        w1 = np.asarray(params["W1"], dtype=float)
        hidden = w1.size // n_features
        restored = {
            "W1": w1.reshape(hidden, n_features),
            "b1": np.asarray(params["b1"], dtype=float).reshape(hidden),
            "w2": np.asarray(params["w2"], dtype=float).reshape(hidden),
            "b2": np.asarray(params["b2"], dtype=float).reshape(1),
        }
        return cls(restored, hyperparameters=hyperparameters)


def init_params(n_features: int, hidden: int, rng: np.random.Generator) -> Params:
    return {
        "W1": rng.normal(0.0, np.sqrt(2.0 / n_features), size=(hidden, n_features)),
        "b1": np.zeros(hidden),
        "w2": rng.normal(0.0, np.sqrt(1.0 / hidden), size=hidden),
        "b2": np.zeros(1),
    }


def forward(params: Params, z: np.ndarray, mask: Optional[np.ndarray] = None) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    pre = z @ params["W1"].T + params["b1"]
    hidden = np.maximum(pre, 0.0)
    if mask is not None:
        hidden = hidden * mask
    u = hidden @ params["w2"] + params["b2"][0]
    return pre, hidden, u


def loss_and_grad(
    params: Params,
    z: np.ndarray,
    labels: np.ndarray,
    l1_penalty: float,
    mask: Optional[np.ndarray] = None,
) -> Tuple[float, Params]:
    pre, hidden, u = forward(params, z, mask)
    n = z.shape[0]
    loss = float(np.mean(np.logaddexp(0.0, u) - labels * u)) + l1_penalty * float(np.sum(np.abs(params["W1"])))

    du = (expit(u) - labels) / n
    d_hidden = np.outer(du, params["w2"])
    if mask is not None:
        d_hidden = d_hidden * mask
    d_pre = d_hidden * (pre > 0)
    grads = {
        "W1": d_pre.T @ z + l1_penalty * np.sign(params["W1"]),
        "b1": d_pre.sum(axis=0),
        "w2": hidden.T @ du,
        "b2": np.array([du.sum()]),
    }
    return loss, grads


def flatten(params: Params) -> np.ndarray:
    return np.concatenate([np.ravel(params[k]) for k in PARAM_ORDER])


def unflatten(vector: np.ndarray, n_features: int, hidden: int) -> Params:
    sizes = [hidden * n_features, hidden, hidden, 1]
    parts = np.split(np.asarray(vector, dtype=float), np.cumsum(sizes)[:-1])
    return {
        "W1": parts[0].reshape(hidden, n_features),
        "b1": parts[1],
        "w2": parts[2],
        "b2": parts[3],
    }


class _Adam:
    def __init__(self, params: Params, step: float, beta1: float = 0.9, beta2: float = 0.999, eps: float = 1e-8):
        self.step, self.beta1, self.beta2, self.eps = step, beta1, beta2, eps
        self.m = {k: np.zeros_like(v) for k, v in params.items()}
        self.v = {k: np.zeros_like(v) for k, v in params.items()}
        self.t = 0

    def update(self, params: Params, grads: Params) -> None:
        self.t += 1
        c1 = 1.0 - self.beta1 ** self.t
        c2 = 1.0 - self.beta2 ** self.t
        for k in PARAM_ORDER:
            self.m[k] = self.beta1 * self.m[k] + (1.0 - self.beta1) * grads[k]
            self.v[k] = self.beta2 * self.v[k] + (1.0 - self.beta2) * grads[k] ** 2
            params[k] -= self.step * (self.m[k] / c1) / (np.sqrt(self.v[k] / c2) + self.eps)


class _Sgd:
    def __init__(self, params: Params, step: float):
        self.step = step

    def update(self, params: Params, grads: Params) -> None:
        for k in PARAM_ORDER:
            params[k] -= self.step * grads[k]


_OPTIMIZERS = {"adam": _Adam, "sgd": _Sgd}


def fit_mlp(
    features: np.ndarray,
    labels: np.ndarray,
    hidden: Optional[int] = None,
    l1_penalty: Optional[float] = None,
    dropout_rate: Optional[float] = None,
    epochs: Optional[int] = None,
    batch: Optional[int] = None,
    step: Optional[float] = None,
    seed: int = 0,
    optimizer: Optional[str] = None,
) -> MlpScoreModel:
    features = np.asarray(features, dtype=float)
    labels = np.asarray(labels, dtype=float)
    check_labels(labels)
    n, d = features.shape

    hidden = max(1, min(settings.MLP_HIDDEN_FACTOR * d, settings.MLP_HIDDEN_CAP)) if hidden is None else hidden
    l1_penalty = settings.MLP_L1_PENALTY if l1_penalty is None else l1_penalty
    dropout_rate = settings.MLP_DROPOUT if dropout_rate is None else dropout_rate
    epochs = settings.MLP_EPOCHS if epochs is None else epochs
    batch = settings.MLP_BATCH_SIZE if batch is None else batch
    step = settings.MLP_STEP_SIZE if step is None else step
    optimizer = settings.MLP_OPTIMIZER if optimizer is None else optimizer
    if hidden < 1:
        raise InvalidConfig(f"hidden must be >= 1, got {hidden}")
    if not 0.0 <= dropout_rate < 1.0:
        raise InvalidConfig(f"dropout_rate must be in [0, 1), got {dropout_rate}")
    if optimizer not in _OPTIMIZERS:
        raise InvalidConfig(f"Unknown optimizer {optimizer!r}", hint=f"Choose one of {sorted(_OPTIMIZERS)}.")

    rng = np.random.default_rng(seed)
    params = init_params(d, hidden, rng)
    opt = _OPTIMIZERS[optimizer](params, step)
    keep = 1.0 - dropout_rate

    for epoch in range(1, epochs + 1):
        order = rng.permutation(n)
        for start in range(0, n, batch):
            idx = order[start:start + batch]
            mask = None
            if dropout_rate > 0:
                mask = (rng.random((idx.shape[0], hidden)) < keep) / keep
            loss, grads = loss_and_grad(params, features[idx], labels[idx], l1_penalty, mask)
            if not np.isfinite(loss):
                raise DivergenceDetected(epoch)
            opt.update(params, grads)
        if not all(np.isfinite(v).all() for v in params.values()):
            raise DivergenceDetected(epoch)

    full_loss, _ = loss_and_grad(params, features, labels, l1_penalty)
    _, _, u = forward(params, features)
    accuracy = float(np.mean((u > 0) == (labels == 1)))
    logger.debug("MLP fit: epochs=%s loss=%.5f train_acc=%.3f", epochs, full_loss, accuracy)

    return MlpScoreModel(
        params,
        hyperparameters={
            "hidden": hidden,
            "l1_penalty": l1_penalty,
            "dropout_rate": dropout_rate,
            "epochs": epochs,
            "batch": batch,
            "step": step,
            "optimizer": optimizer,
            "seed": seed,
        },
        diagnostics={"train_loss": full_loss, "train_accuracy": accuracy},
    )
