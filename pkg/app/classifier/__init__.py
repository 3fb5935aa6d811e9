"""
Score models: estimates of the class probability theta(x, y).
"""
from app.classifier.base import ScoreModel, clamp_scores, load_model, predict_scores
from app.classifier.basis import BasisConfig, basis_expand, basis_expand_rows
from app.classifier.logistic import LinearScoreModel, fit_logistic_l1
from app.classifier.mlp import MlpScoreModel, fit_mlp
from app.classifier.quadratic import QuadScoreModel, fit_penalized_quadratic, solve_penalized_quadratic

__all__ = [
    "ScoreModel",
    "clamp_scores",
    "load_model",
    "predict_scores",
    "BasisConfig",
    "basis_expand",
    "basis_expand_rows",
    "LinearScoreModel",
    "fit_logistic_l1",
    "MlpScoreModel",
    "fit_mlp",
    "QuadScoreModel",
    "fit_penalized_quadratic",
    "solve_penalized_quadratic",
]
