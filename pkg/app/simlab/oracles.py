"""
Oracle suite behind the `check` command. Every check compares a production
kernel against an independent slow evaluation or an exact identity.
"""
import logging
import time
from typing import Dict, List

import numpy as np

from app.classifier.mlp import flatten, init_params, loss_and_grad, unflatten
from app.classifier.quadratic import solve_penalized_quadratic
from app.model.evaluation import ScoredEvaluation
from app.schema.report import CheckReport, CheckResult
from app.service.baseline_service import distance_correlation
from app.simlab.checks import DiscreteDistPair, tv_bound_check, tv_bound_fuzz
from app.stats.rank_sum import rank_sum_R, rank_sum_R_naive
from app.stats.variance import VARIANCE_UPPER_BOUND, variance_hat_naive, variance_hat_raw, variance_hat
from app.utils.seeds import derive

logger = logging.getLogger(__name__)


def fuzz_scores(rng: np.random.Generator, max_n2: int = 200) -> ScoredEvaluation:
    """Random score pair; about half the instances are coarsely rounded to force ties."""
    n2 = int(rng.integers(3, max_n2 + 1))
    a, b = rng.random(n2), rng.random(n2)
    if rng.random() < 0.5:
        digits = int(rng.integers(0, 3))
        a, b = np.round(a, digits), np.round(b, digits)
    return ScoredEvaluation(a, b)


def rank_sum_oracle(count: int, seed: int) -> Dict[str, object]:
    mismatches = 0
    for k in range(count):
        rng = np.random.default_rng(derive(seed, "rank_sum", k))
        evaluation = fuzz_scores(rng)
        tie_seed = derive(seed, "rank_sum", "tie", k)
        if rank_sum_R(evaluation, tie_seed) != rank_sum_R_naive(evaluation, tie_seed):
            mismatches += 1
    return {"instances": count, "mismatches": mismatches, "passed": mismatches == 0}


def variance_oracle(count: int, seed: int) -> Dict[str, object]:
    worst = 0.0
    for k in range(count):
        evaluation = fuzz_scores(np.random.default_rng(derive(seed, "variance", k)))
        fast, naive = variance_hat(evaluation), variance_hat_naive(evaluation)
        worst = max(worst, abs(fast.raw - naive.raw))
    return {"instances": count, "max_abs_diff": worst, "passed": worst <= 1e-15}


def variance_bound_oracle(count: int, seed: int) -> Dict[str, object]:
    largest = -np.inf
    for k in range(count):
        largest = max(largest, variance_hat_raw(fuzz_scores(np.random.default_rng(derive(seed, "bound", k)), 50)))
    return {"instances": count, "max_raw": float(largest), "passed": largest <= VARIANCE_UPPER_BOUND}


def tv_oracle(count: int, seed: int) -> Dict[str, object]:
    fuzz = tv_bound_fuzz(count, 8, seed)
    hand = [
        tv_bound_check(DiscreteDistPair([0.5, 0.5], [0.5, 0.5])),
        tv_bound_check(DiscreteDistPair([1.0, 0.0], [0.5, 0.5])),
    ]
    return {
        "pairs": count,
        "failures": len(fuzz["failures"]),
        "hand_examples": [h.to_dict() for h in hand],
        "passed": not fuzz["failures"] and all(h.passed for h in hand),
    }


def gradient_oracle(points: int, seed: int, eps: float = 1e-6) -> Dict[str, object]:
    """Full-batch gradient of a 2-input, 1-hidden-unit network (5 parameters) vs central differences."""
    worst = 0.0
    failures = 0
    for k in range(points):
        rng = np.random.default_rng(derive(seed, "gradient", k))
        params = init_params(2, 1, rng)
        params["b1"] = rng.normal(0.5, 0.2, size=1)
        params["b2"] = rng.normal(size=1)
        z = rng.normal(size=(20, 2))
        labels = (rng.random(20) < 0.5).astype(float)
        _, grads = loss_and_grad(params, z, labels, 1e-3)
        analytic = flatten(grads)
        theta = flatten(params)
        numeric = np.empty_like(theta)
        for i in range(theta.shape[0]):
            up, down = theta.copy(), theta.copy()
            up[i] += eps
            down[i] -= eps
            f_up, _ = loss_and_grad(unflatten(up, 2, 1), z, labels, 1e-3)
            f_down, _ = loss_and_grad(unflatten(down, 2, 1), z, labels, 1e-3)
            numeric[i] = (f_up - f_down) / (2 * eps)
        rel = np.abs(analytic - numeric) / np.maximum(np.maximum(np.abs(analytic), np.abs(numeric)), 1e-3)
        worst = max(worst, float(rel.max()))
        if not np.allclose(analytic, numeric, rtol=1e-4, atol=1e-7):
            failures += 1
    return {"points": points, "failures": failures, "max_relative_error": worst, "passed": failures == 0}


def dcor_direct(x: np.ndarray, y: np.ndarray) -> float:
    """Loop evaluation of the double-centering formula."""
    n = x.shape[0]

    def centered(rows):
        d = [[float(np.linalg.norm(rows[i] - rows[j])) for j in range(n)] for i in range(n)]
        row = [sum(r) / n for r in d]
        grand = sum(row) / n
        return [[d[i][j] - row[i] - row[j] + grand for j in range(n)] for i in range(n)]

    a, b = centered(x), centered(y)
    xy = sum(a[i][j] * b[i][j] for i in range(n) for j in range(n)) / n ** 2
    xx = sum(a[i][j] ** 2 for i in range(n) for j in range(n)) / n ** 2
    yy = sum(b[i][j] ** 2 for i in range(n) for j in range(n)) / n ** 2
    if xx <= 0 or yy <= 0:
        return 0.0
    return max(xy, 0.0) ** 0.5 / (xx ** 0.5 * yy ** 0.5) ** 0.5


def dcor_oracle(count: int, seed: int) -> Dict[str, object]:
    worst = 0.0
    for k in range(count):
        rng = np.random.default_rng(derive(seed, "dcor", k))
        x, y = rng.normal(size=(4, 2)), rng.normal(size=(4, 1))
        worst = max(worst, abs(distance_correlation(x, y).dcor - dcor_direct(x, y)))
    return {"instances": count, "max_abs_diff": worst, "passed": worst <= 1e-12}


def kkt_oracle(count: int, seed: int) -> Dict[str, object]:
    """beta = 0 iff lambda >= 2 max|gamma|; checked just above and just below the threshold."""
    failures = 0
    for k in range(count):
        rng = np.random.default_rng(derive(seed, "kkt", k))
        xi = rng.normal(size=(30, 4))
        gram = xi.T @ xi / 15
        linear = xi[:15].sum(axis=0) / 15
        threshold = 2.0 * float(np.max(np.abs(linear)))
        above, _, _ = solve_penalized_quadratic(gram, linear, threshold * 1.001)
        below, _, _ = solve_penalized_quadratic(gram, linear, threshold * 0.9)
        if np.any(above != 0) or not np.any(below != 0):
            failures += 1
    return {"instances": count, "failures": failures, "passed": failures == 0}


def run_check(fast: bool = False, seed: int = 42) -> CheckReport:
    scale = 10 if fast else 1
    suite: List[tuple] = [
        ("rank_sum_merge_vs_naive", rank_sum_oracle, 10_000 // scale),
        ("variance_fast_vs_naive", variance_oracle, 1_000 // scale),
        ("variance_upper_bound", variance_bound_oracle, 10_000 // scale),
        ("tv_sandwich", tv_oracle, 1_000 // scale),
        ("mlp_gradient", gradient_oracle, 100 // scale),
        ("dcor_direct", dcor_oracle, 50 // scale),
        ("quadratic_kkt", kkt_oracle, 50 // scale),
    ]
    results = []
    for name, oracle, count in suite:
        start = time.perf_counter()
        detail = oracle(count, derive(seed, name))
        passed = bool(detail.pop("passed"))
        logger.info("check %s: %s (%.2fs)", name, "ok" if passed else "FAILED", time.perf_counter() - start)
        results.append(CheckResult(name=name, passed=passed, detail=detail))
    return CheckReport(passed=all(r.passed for r in results), fast=fast, seed=seed, checks=results)
