"""
Alternative two-sample statistics on the evaluation scores. Both are
descriptive; calibrate with app.service.baseline_service.permutation_pvalue.
"""
import numpy as np
from scipy.special import logit

from app.core.exceptions import EmptyInput
from app.model.evaluation import ScoredEvaluation


def t_statistic(evaluation: ScoredEvaluation) -> float:
    """Mean of s_joint - s_prod."""
    if evaluation.n2 == 0:
        raise EmptyInput("score vectors")
    return float(np.mean(evaluation.s_joint - evaluation.s_prod))


def kl_statistic(evaluation: ScoredEvaluation) -> float:
    """Mean log likelihood-ratio difference, logit(s_joint) - logit(s_prod)."""
    if evaluation.n2 == 0:
        raise EmptyInput("score vectors")
    return float(np.mean(logit(evaluation.s_joint) - logit(evaluation.s_prod)))
