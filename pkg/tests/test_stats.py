import math

import numpy as np
import pytest

from app.core.exceptions import DegeneratePairing, EmptyInput, LengthMismatch
from app.model.evaluation import ScoredEvaluation
from app.stats.alternatives import kl_statistic, t_statistic
from app.stats.ecdf import ecdf
from app.service.test_service import standardized_statistic
from app.simlab.oracles import rank_sum_oracle, variance_oracle
from app.stats.rank_sum import mann_whitney_fraction, rank_sum_count, rank_sum_R, rank_sum_R_naive, tie_count, tie_uniforms
from app.stats.variance import VARIANCE_UPPER_BOUND, projection_gap, variance_hat, variance_hat_naive, variance_hat_raw
from app.utils.seeds import derive


def test_rank_sum_small_example():
    evaluation = ScoredEvaluation([0.1, 0.5, 0.9], [0.3, 0.7, 0.8])
    assert rank_sum_R(evaluation, 0) == 5 / 9
    assert rank_sum_R_naive(evaluation, 0) == 5 / 9


def test_rank_sum_all_joint_below():
    assert rank_sum_R(ScoredEvaluation([0.1, 0.2, 0.3], [0.4, 0.5, 0.6]), 9) == 1.0
    assert rank_sum_R(ScoredEvaluation([0.4, 0.5, 0.6], [0.1, 0.2, 0.3]), 9) == 0.0


def test_rank_sum_all_ties_average_half():
    evaluation = ScoredEvaluation(np.full(10, 0.5), np.full(10, 0.5))
    values = [rank_sum_R(evaluation, derive(1, "tie", k)) for k in range(1000)]
    assert abs(np.mean(values) - 0.5) < 0.02
    assert tie_count(evaluation) == 100


def test_rank_sum_fast_matches_naive_with_ties():
    for k in range(200):
        rng = np.random.default_rng(k)
        n2 = int(rng.integers(3, 201))
        a = np.round(rng.random(n2), 1)
        b = np.round(rng.random(n2), 1)
        evaluation = ScoredEvaluation(a, b)
        assert rank_sum_R(evaluation, k) == rank_sum_R_naive(evaluation, k)


def test_rank_sum_rejects_bad_input():
    with pytest.raises(LengthMismatch):
        ScoredEvaluation([0.1, 0.2], [0.3])
    with pytest.raises(DegeneratePairing):
        rank_sum_R(ScoredEvaluation([], []), 0)
    with pytest.raises(DegeneratePairing):
        rank_sum_R(ScoredEvaluation([0.1, 0.2], [0.3, 0.4]), 0)


def test_mann_whitney_counts_ties_half():
    assert mann_whitney_fraction([1.0], [1.0]) == 0.5
    assert mann_whitney_fraction([0.0, 2.0], [1.0]) == 0.5


def test_ecdf_definition():
    f = ecdf([1.0, 2.0, 3.0])
    assert f(1.0) == pytest.approx(1 / 3)
    assert f(2.5) == pytest.approx(2 / 3)
    assert f(3.0) == 1.0
    assert f(0.99) == 0.0
    np.testing.assert_allclose(f([0.0, 3.5]), [0.0, 1.0])


def test_ecdf_ties_use_weak_inequality():
    assert ecdf([1.0, 1.0, 2.0])(1.0) == pytest.approx(2 / 3)


def test_ecdf_empty():
    with pytest.raises(EmptyInput):
        ecdf([])


def test_variance_hand_example():
    evaluation = ScoredEvaluation([0.2, 0.6, 0.9], [0.1, 0.5, 0.8])
    fast, naive = variance_hat(evaluation), variance_hat_naive(evaluation)
    assert abs(fast.raw - naive.raw) <= 1e-15
    assert fast.raw == pytest.approx(-1.0 / 54.0, abs=1e-15)
    assert fast.floored and fast.sigma_hat_sq == 1e-4


def test_variance_fast_matches_naive():
    for k in range(100):
        rng = np.random.default_rng(derive(7, k))
        n2 = int(rng.integers(3, 80))
        evaluation = ScoredEvaluation(np.round(rng.random(n2), 2), rng.random(n2))
        assert abs(variance_hat(evaluation).raw - variance_hat_naive(evaluation).raw) <= 1e-15


def test_variance_upper_bound():
    for k in range(2000):
        rng = np.random.default_rng(derive(8, k))
        n2 = int(rng.integers(3, 30))
        evaluation = ScoredEvaluation(rng.random(n2), rng.random(n2))
        assert variance_hat_raw(evaluation) <= VARIANCE_UPPER_BOUND


def test_variance_needs_three():
    with pytest.raises(DegeneratePairing):
        variance_hat(ScoredEvaluation([0.1, 0.2], [0.3, 0.4]))


def test_variance_independent_scores_near_one_sixth():
    rng = np.random.default_rng(4)
    evaluation = ScoredEvaluation(rng.random(5000), rng.random(5000))
    # cross terms vanish for independent scores
    assert variance_hat(evaluation).sigma_hat_sq == pytest.approx(1 / 6, abs=0.02)


def test_t_statistic():
    assert t_statistic(ScoredEvaluation([0.3, 0.7], [0.3, 0.7])) == 0.0
    assert t_statistic(ScoredEvaluation([0.8, 0.8], [0.3, 0.3])) == pytest.approx(0.5)


def test_kl_statistic():
    assert kl_statistic(ScoredEvaluation([0.4, 0.6], [0.4, 0.6])) == 0.0
    assert kl_statistic(ScoredEvaluation([0.9], [0.5])) == pytest.approx(math.log(9), abs=1e-5)


def test_projection_gap_zero_when_reference_matches():
    evaluation = ScoredEvaluation([0.1, 0.4, 0.5], [0.2, 0.3, 0.6])
    reference = ecdf([0.1, 0.2, 0.3, 0.4, 0.5, 0.6])
    r_value = rank_sum_R(evaluation, 0)
    assert r_value == 5 / 9
    assert projection_gap(evaluation, r_value, reference) == pytest.approx(0.0, abs=1e-15)


def _statistic(evaluation, tie_seed):
    r_value = rank_sum_R(evaluation, tie_seed)
    variance = variance_hat(evaluation)
    return r_value, variance.raw, standardized_statistic(r_value, variance.sigma_hat_sq, evaluation.n2)


def test_increasing_map_leaves_statistic_unchanged():
    for k in range(50):
        rng = np.random.default_rng(derive(9, k))
        n2 = int(rng.integers(3, 120))
        evaluation = ScoredEvaluation(np.round(rng.random(n2), 2), np.round(rng.random(n2), 2))
        tie_seed = derive(10, k)
        before = _statistic(evaluation, tie_seed)
        for fn in (np.exp, lambda s: s ** 3 + 2 * s, lambda s: np.log(s + 1e-3)):
            assert _statistic(evaluation.transformed(fn), tie_seed) == before


def test_swapping_roles_complements_R():
    for k in range(50):
        rng = np.random.default_rng(derive(11, k))
        n2 = int(rng.integers(3, 120))
        a, b = rng.random(n2), rng.random(n2)
        r_value = rank_sum_R(ScoredEvaluation(a, b), k)
        assert rank_sum_R(ScoredEvaluation(b, a), k) == pytest.approx(1.0 - r_value, abs=1e-15)

        a, b = np.round(a, 1), np.round(b, 1)
        zeta, eta = tie_uniforms(n2, k)
        # with ties the uniforms swap along with the scores
        assert rank_sum_count(a, b, zeta, eta) + rank_sum_count(b, a, eta, zeta) == n2 * n2


@pytest.mark.slow
def test_fast_kernels_match_naive_full_fuzz():
    result = rank_sum_oracle(10_000, seed=derive(12, "fuzz"))
    assert result["instances"] == 10_000
    assert result["mismatches"] == 0
    assert variance_oracle(1_000, seed=derive(12, "variance"))["max_abs_diff"] <= 1e-15
