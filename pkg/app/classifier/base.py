"""
Score model interface: a fitted estimate of theta(x, y) = P(joint | x, y).
"""
import json
from abc import ABC, abstractmethod
from typing import Any, Dict, Type

import numpy as np

from app.core.config import settings
from app.core.exceptions import DimensionMismatch, InvalidModel, SingleClassInput


def clamp_scores(values: np.ndarray, eps: float = None) -> np.ndarray:
    eps = settings.SCORE_EPS if eps is None else eps
    return np.clip(values, eps, 1.0 - eps)


def check_labels(labels: np.ndarray) -> None:
    labels = np.asarray(labels)
    if not ((labels == 1).any() and (labels == 0).any()):
        raise SingleClassInput()


class ScoreModel(ABC):
    """Fitted classifier; score() is a deterministic map into [eps, 1 - eps]."""
    kind: str = "abstract"

    def __init__(self, n_features: int, hyperparameters: Dict[str, Any] = None, diagnostics: Dict[str, Any] = None):
        self.n_features = n_features
        self.hyperparameters = dict(hyperparameters or {})
        self.diagnostics = dict(diagnostics or {})

    @abstractmethod
    def raw_scores(self, features: np.ndarray) -> np.ndarray:
        """Unclamped class-probability estimates for each row."""

    @abstractmethod
    def parameters(self) -> Dict[str, Any]:
        """Flat parameter arrays for serialization."""

    @classmethod
    @abstractmethod
    def from_parameters(cls, n_features: int, params: Dict[str, Any], hyperparameters: Dict[str, Any]) -> "ScoreModel":
        ...

    def score_matrix(self, features: np.ndarray) -> np.ndarray:
        features = np.atleast_2d(np.asarray(features, dtype=float))
        if features.shape[1] != self.n_features:
            raise DimensionMismatch(self.n_features, features.shape[1])
        return clamp_scores(self.raw_scores(features))

    def score(self, x: np.ndarray, y: np.ndarray) -> float:
        z = np.concatenate([np.ravel(x), np.ravel(y)])
        return float(self.score_matrix(z[None, :])[0])

    def metadata(self) -> Dict[str, Any]:
        return {
            "kind": self.kind,
            "n_features": self.n_features,
            "hyperparameters": self.hyperparameters,
            "diagnostics": self.diagnostics,
            "score_eps": settings.SCORE_EPS,
        }

    def to_dict(self) -> Dict[str, Any]:
        params = {k: np.asarray(v, dtype=float).ravel().tolist() for k, v in self.parameters().items()}
        return {
            "kind": self.kind,
            "n_features": self.n_features,
            "hyperparameters": self.hyperparameters,
            "parameters": params,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


_REGISTRY: Dict[str, Type[ScoreModel]] = {}


def register(model_cls: Type[ScoreModel]) -> Type[ScoreModel]:
    _REGISTRY[model_cls.kind] = model_cls
    return model_cls


def load_model(raw: str) -> ScoreModel:
    data = json.loads(raw)
    kind = data.get("kind")
    if kind not in _REGISTRY:
        raise InvalidModel(f"Unknown model kind: {kind!r}")
    params = {k: np.asarray(v, dtype=float) for k, v in data["parameters"].items()}
    return _REGISTRY[kind].from_parameters(int(data["n_features"]), params, data.get("hyperparameters", {}))


def predict_scores(model: ScoreModel, rows: np.ndarray) -> np.ndarray:
    """Elementwise score of each evaluation row, order preserved."""
    return model.score_matrix(rows)
