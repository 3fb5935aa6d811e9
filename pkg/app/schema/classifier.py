"""
Classifier configuration schema.
"""
from typing import Literal, Optional

from pydantic import BaseModel, Field

from app.classifier.basis import BasisConfig
from app.classifier.quadratic import default_lambda
from app.core.config import settings

ClassifierKind = Literal["mlp", "logistic", "quadratic"]


class ClassifierConfig(BaseModel):
    """Hyperparameters for one classifier kind. Unset fields take the settings defaults."""
    kind: ClassifierKind = settings.DEFAULT_CLASSIFIER

    # mlp
    hidden: Optional[int] = Field(None, ge=1)
    l1_penalty: Optional[float] = Field(None, ge=0)
    dropout_rate: Optional[float] = Field(None, ge=0, lt=1)
    epochs: Optional[int] = Field(None, ge=0)
    batch: Optional[int] = Field(None, ge=1)
    step: Optional[float] = Field(None, gt=0)
    optimizer: Optional[Literal["adam", "sgd"]] = None

    # logistic / quadratic
    lam: Optional[float] = Field(None, ge=0, description="L1 weight; quadratic default is sqrt(log m / n1)")
    max_iter: Optional[int] = Field(None, ge=1)
    tol: Optional[float] = Field(None, gt=0)

    # quadratic
    s1: Optional[int] = Field(None, ge=1)
    k_n: Optional[int] = Field(None, ge=1)

    class Config:
        extra = "forbid"

    def resolved(self, d1: int, d2: int, n1: int = None) -> "ClassifierConfig":
        """Copy with every default of this kind materialized.

        The quadratic lambda default depends on the training size, so it is only
        filled in when n1 is given.
        """
        if self.kind == "mlp":
            values = {
                "hidden": self.hidden if self.hidden is not None else settings.default_hidden(d1, d2),
                "l1_penalty": _pick(self.l1_penalty, settings.MLP_L1_PENALTY),
                "dropout_rate": _pick(self.dropout_rate, settings.MLP_DROPOUT),
                "epochs": _pick(self.epochs, settings.MLP_EPOCHS),
                "batch": _pick(self.batch, settings.MLP_BATCH_SIZE),
                "step": _pick(self.step, settings.MLP_STEP_SIZE),
                "optimizer": _pick(self.optimizer, settings.MLP_OPTIMIZER),
            }
        elif self.kind == "logistic":
            values = {
                "lam": _pick(self.lam, settings.LOGISTIC_LAMBDA),
                "max_iter": _pick(self.max_iter, settings.LOGISTIC_MAX_ITER),
                "tol": _pick(self.tol, settings.LOGISTIC_TOL),
            }
        else:
            values = {
                "s1": _pick(self.s1, settings.BASIS_S1),
                "k_n": _pick(self.k_n, settings.BASIS_K),
                "lam": self.lam,
            }
            if values["lam"] is None and n1:
                m = BasisConfig(s1=values["s1"], k_n=values["k_n"]).dimension(d1 + d2)
                values["lam"] = default_lambda(m, n1)
        return self.model_copy(update=values)

    def summary(self) -> dict:
        return self.model_dump(exclude_none=True)


def _pick(value, default):
    return default if value is None else value
