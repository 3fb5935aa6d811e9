"""
Plug-in variance of sqrt(n2) * R under independence, and the projection of R.

sigma_hat^2 = 1/6 - (2/n2) sum_i h(i) h'(i) - (2/n2) sum_i h(next(i)) h'(i)

h(i)  = 1/2 - F2(s_joint[i]),  h'(i) = 1/2 - F2(s_prod[i]),
F2 the ECDF of s_prod (used for both vectors), next the cyclic successor.
"""
import math
from typing import NamedTuple

import numpy as np

from app.core.config import settings
from app.core.exceptions import DegeneratePairing
from app.model.evaluation import ScoredEvaluation
from app.stats.ecdf import Ecdf

VARIANCE_UPPER_BOUND = 7.0 / 6.0


class VarianceHat(NamedTuple):
    sigma_hat_sq: float
    floored: bool
    raw: float


def _combine(same_terms, next_terms, n2: int) -> float:
    # exactly rounded sums: any summation order gives the same value
    return 1.0 / 6.0 - (2.0 / n2) * math.fsum(same_terms) - (2.0 / n2) * math.fsum(next_terms)


def _floor(raw: float, floor: float) -> VarianceHat:
    if raw < floor:
        return VarianceHat(floor, True, raw)
    return VarianceHat(raw, False, raw)


def variance_hat_raw(evaluation: ScoredEvaluation) -> float:
    n2 = evaluation.n2
    if n2 < 3:
        raise DegeneratePairing(n2)
    f2 = Ecdf(evaluation.s_prod)
    h = 0.5 - f2.counts(evaluation.s_joint) / n2
    h_prod = 0.5 - f2.counts(evaluation.s_prod) / n2
    return _combine((h * h_prod).tolist(), (h[evaluation.next_index()] * h_prod).tolist(), n2)


def variance_hat(evaluation: ScoredEvaluation, floor: float = None) -> VarianceHat:
    floor = settings.VARIANCE_FLOOR if floor is None else floor
    return _floor(variance_hat_raw(evaluation), floor)


def variance_hat_naive(evaluation: ScoredEvaluation, floor: float = None) -> VarianceHat:
    """Direct loop evaluation of the formula; the reference for variance_hat."""
    floor = settings.VARIANCE_FLOOR if floor is None else floor
    n2 = evaluation.n2
    if n2 < 3:
        raise DegeneratePairing(n2)
    s_joint = evaluation.s_joint.tolist()
    s_prod = evaluation.s_prod.tolist()

    def f2(t: float) -> float:
        return sum(1 for v in s_prod if v <= t) / n2

    h = [0.5 - f2(t) for t in s_joint]
    h_prod = [0.5 - f2(t) for t in s_prod]
    same = [h[i] * h_prod[i] for i in range(n2)]
    nxt = [h[(i + 1) % n2] * h_prod[i] for i in range(n2)]
    return _floor(_combine(same, nxt, n2), floor)


def projection_gap(evaluation: ScoredEvaluation, r_value: float, reference: Ecdf) -> float:
    """|(R - 1/2) - R_tilde| with R_tilde = mean G(s_prod) - mean G(s_joint).

    G is the ECDF of a large independent draw of the score distribution
    (joint and product score laws coincide under independence).
    """
    r_tilde = float(np.mean(reference(evaluation.s_prod)) - np.mean(reference(evaluation.s_joint)))
    return abs((r_value - 0.5) - r_tilde)
