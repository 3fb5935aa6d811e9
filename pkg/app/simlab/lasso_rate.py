"""
Error rate of the penalized quadratic estimate against a planted sparse beta*.

Points z ~ U[-1, 1]^d, 2n per replicate, carry label 1 with probability
g(z) = xi(z)' beta*, where beta* puts `amplitude` on the squared term of the
first s2 coordinates. The program is normalized by n and lambda = C sqrt(log m / n).
"""
import logging
import os
from typing import Dict

import numpy as np
import pandas as pd

from app.classifier.basis import BasisConfig, basis_expand_rows, exponent_tuples
from app.classifier.quadratic import default_lambda, penalized_quadratic_from_design
from app.core.exceptions import InvalidConfig
from app.schema.experiment import LassoRateConfig
from app.utils.output import build_manifest, write_csv, write_manifest
from app.utils.seeds import derive

logger = logging.getLogger(__name__)

SPARSITY_SPOT_CHECKS = 10


def planted_beta(cfg: LassoRateConfig, basis: BasisConfig) -> np.ndarray:
    m = basis.dimension(cfg.d)
    beta = np.zeros(m)
    if cfg.s2 == 0:
        return beta
    if cfg.s1 != 1:
        raise InvalidConfig("planted signals are defined for s1 = 1")
    square = exponent_tuples(1, cfg.k_n).index((2,)) if cfg.k_n >= 2 else 0
    if cfg.s2 > cfg.d:
        raise InvalidConfig(f"s2={cfg.s2} exceeds d={cfg.d}")
    if cfg.s2 * cfg.amplitude > 1.0:
        raise InvalidConfig("s2 * amplitude must be <= 1 so that g stays a probability")
    for j in range(cfg.s2):
        beta[j * cfg.k_n + square] = cfg.amplitude
    return beta


def _fit(xi: np.ndarray, labels: np.ndarray, n: int, lam: float) -> np.ndarray:
    beta, converged, _ = penalized_quadratic_from_design(xi[labels == 1], xi[labels == 0], lam, n_norm=n)
    if not converged:
        logger.warning("lasso rate: solver did not converge at n=%s", n)
    return beta


def _draw(cfg: LassoRateConfig, basis: BasisConfig, beta_star: np.ndarray, n: int, seed: int):
    rng = np.random.default_rng(seed)
    z = rng.uniform(-1.0, 1.0, size=(2 * n, cfg.d))
    xi = basis_expand_rows(z, basis)
    prob = np.clip(xi @ beta_star, 0.0, 1.0)
    labels = (rng.random(2 * n) < prob).astype(int)
    return xi, labels


def lasso_rate_experiment(cfg: LassoRateConfig, out_dir: str = None) -> Dict[str, object]:
    basis = BasisConfig(s1=cfg.s1, k_n=cfg.k_n)
    beta_star = planted_beta(cfg, basis)
    m = basis.dimension(cfg.d)

    rows, seeds = [], []
    for n in cfg.n_grid:
        lam = cfg.c_lambda * default_lambda(m, n)
        errors = []
        for rep in range(cfg.reps):
            seeds.append(derive(cfg.master_seed, "lasso", n, rep))
            xi, labels = _draw(cfg, basis, beta_star, n, seeds[-1])
            errors.append(float(np.linalg.norm(_fit(xi, labels, n, lam) - beta_star)))
        rows.append({"n": n, "lambda": lam, "median_error": float(np.median(errors)), "reps": cfg.reps})
        logger.info("lasso rate n=%s: median error %.4f", n, rows[-1]["median_error"])
    table = pd.DataFrame(rows, columns=["n", "lambda", "median_error", "reps"])

    slope = float("nan")
    positive = table["median_error"] > 0
    if positive.sum() >= 2:
        slope = float(np.polyfit(np.log(table.loc[positive, "n"]), np.log(table.loc[positive, "median_error"]), 1)[0])

    monotone = sparsity_monotone(cfg, basis, beta_star)
    summary = {"slope": slope, "sparsity_monotone": monotone, "basis_dimension": m}
    if out_dir:
        write_csv(table, os.path.join(out_dir, "lasso_rate.csv"))
        write_manifest(out_dir, build_manifest("lasso_rate", cfg.model_dump(), seeds, {"summary": summary}))
    return {"table": table, **summary}


def sparsity_monotone(cfg: LassoRateConfig, basis: BasisConfig, beta_star: np.ndarray) -> Dict[str, int]:
    """Refit with 2 * lambda on a few instances; support size must not grow."""
    n = cfg.n_grid[0]
    m = basis.dimension(cfg.d)
    lam = cfg.c_lambda * default_lambda(m, n)
    violations = 0
    for k in range(SPARSITY_SPOT_CHECKS):
        xi, labels = _draw(cfg, basis, beta_star, n, derive(cfg.master_seed, "lasso", "sparsity", k))
        if np.count_nonzero(_fit(xi, labels, n, 2.0 * lam)) > np.count_nonzero(_fit(xi, labels, n, lam)):
            violations += 1
    return {"instances": SPARSITY_SPOT_CHECKS, "violations": violations}
