"""
Fit the configured classifier on a training table.
"""
import logging
from typing import TYPE_CHECKING

from app.classifier.base import ScoreModel
from app.classifier.basis import BasisConfig
from app.classifier.logistic import fit_logistic_l1
from app.classifier.mlp import fit_mlp
from app.classifier.quadratic import fit_penalized_quadratic
from app.core.exceptions import InvalidConfig
from app.schema.classifier import ClassifierConfig

if TYPE_CHECKING:
    from app.service.split_service import TrainingSets

logger = logging.getLogger(__name__)


def fit_classifier(train: "TrainingSets", config: ClassifierConfig, seed: int) -> ScoreModel:
    """config must already be resolved for the feature dimension."""
    if config.kind == "mlp":
        return fit_mlp(
            train.features,
            train.labels,
            hidden=config.hidden,
            l1_penalty=config.l1_penalty,
            dropout_rate=config.dropout_rate,
            epochs=config.epochs,
            batch=config.batch,
            step=config.step,
            seed=seed,
            optimizer=config.optimizer,
        )
    if config.kind == "logistic":
        return fit_logistic_l1(
            train.features,
            train.labels,
            lam=config.lam,
            max_iter=config.max_iter,
            tol=config.tol,
            seed=seed,
        )
    if config.kind == "quadratic":
        basis = BasisConfig(s1=config.s1, k_n=config.k_n)
        return fit_penalized_quadratic(train.train_joint, train.train_prod, basis, config.lam)
    raise InvalidConfig(f"Unknown classifier kind {config.kind!r}")


def not_converged(model: ScoreModel) -> bool:
    return model.diagnostics.get("converged") is False
