"""
Statistic kernels for the classification-based test.
"""
from app.stats.alternatives import kl_statistic, t_statistic
from app.stats.ecdf import Ecdf, ecdf
from app.stats.rank_sum import mann_whitney_fraction, rank_sum_R, rank_sum_R_naive, tie_count
from app.stats.variance import VarianceHat, projection_gap, variance_hat, variance_hat_naive

__all__ = [
    "Ecdf",
    "ecdf",
    "rank_sum_R",
    "rank_sum_R_naive",
    "tie_count",
    "mann_whitney_fraction",
    "VarianceHat",
    "variance_hat",
    "variance_hat_naive",
    "projection_gap",
    "t_statistic",
    "kl_statistic",
]
