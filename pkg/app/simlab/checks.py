"""
Exact and Monte Carlo checks of the separation results behind the test:

* separation sandwich  l1 / 4 <= 1/2 - P{r(V) < r(W)} <= l1 / 2, l1 = sum |p - q|,
  for V ~ P, W ~ Q and r = dP/dQ, ties counted with mass 1/2;
* the estimation-error condition on a bivariate normal with correlation
  rho / sqrt(n), where the log-likelihood ratio is available in closed form.
"""
import logging
import math
import os
from dataclasses import dataclass
from typing import Dict, Optional

import numpy as np
import pandas as pd

from app.core.exceptions import AbsoluteContinuityViolated, InvalidConfig
from app.schema.experiment import MuConditionConfig
from app.stats.rank_sum import mann_whitney_fraction
from app.utils.output import build_manifest, write_csv, write_manifest
from app.utils.seeds import derive

logger = logging.getLogger(__name__)

SANDWICH_TOL = 1e-12
CORRELATION_CLIP = 0.99


@dataclass(frozen=True)
class DiscreteDistPair:
    p: np.ndarray
    q: np.ndarray

    def __post_init__(self):
        p = np.asarray(self.p, dtype=float).ravel()
        q = np.asarray(self.q, dtype=float).ravel()
        if p.shape != q.shape or p.size == 0:
            raise InvalidConfig("p and q must be nonempty and share one support")
        if (p < 0).any() or (q < 0).any():
            raise InvalidConfig("probabilities must be nonnegative")
        if abs(p.sum() - 1.0) > 1e-9 or abs(q.sum() - 1.0) > 1e-9:
            raise InvalidConfig("p and q must each sum to 1")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", q)

    @classmethod
    def random(cls, support: int, rng: np.random.Generator) -> "DiscreteDistPair":
        """Random pair with p << q; some supports get exact zeros and exact ties."""
        q = rng.dirichlet(np.ones(support))
        p = rng.dirichlet(np.ones(support))
        if support > 1 and rng.random() < 0.5:
            p[rng.integers(support)] = 0.0
            p = p / p.sum()
        if rng.random() < 0.3:
            p = q.copy()
        return cls(p, q)

    def total_variation(self) -> float:
        return 0.5 * float(np.sum(np.abs(self.p - self.q)))

    def ratio(self) -> np.ndarray:
        bad = np.flatnonzero((self.q == 0) & (self.p > 0))
        if bad.size:
            raise AbsoluteContinuityViolated(int(bad[0]))
        out = np.zeros_like(self.p)
        live = self.q > 0
        out[live] = self.p[live] / self.q[live]
        return out


@dataclass(frozen=True)
class TvBound:
    lhs: float
    middle: float
    rhs: float
    tv: float
    l1: float
    prob_less: float
    passed: bool
    identity_gap: float = 0.0

    def to_dict(self) -> Dict[str, float]:
        return {
            "lhs": self.lhs,
            "middle": self.middle,
            "rhs": self.rhs,
            "tv": self.tv,
            "l1": self.l1,
            "prob_less": self.prob_less,
            "identity_gap": self.identity_gap,
            "pass": self.passed,
        }


def tv_bound_check(pair: DiscreteDistPair, tie_seed: Optional[int] = None, tol: float = SANDWICH_TOL) -> TvBound:
    """Exact enumeration of P{r(V) < r(W)}; equal ratios contribute the tie-break expectation 1/2.

    The bounds are l1 / 4 and l1 / 2 with l1 = sum |p - q| = 2 * tv. Also checked:
    1/2 - P = E|r(W) - r(W')| / 4 for W, W' independent draws from Q.
    tie_seed is accepted for interface symmetry; nothing is sampled.
    """
    r = pair.ratio()
    less = (r[:, None] < r[None, :]).astype(float)
    ties = (r[:, None] == r[None, :]).astype(float)
    prob_less = float(np.sum(np.outer(pair.p, pair.q) * (less + 0.5 * ties)))
    tv = pair.total_variation()
    l1 = 2.0 * tv
    middle = 0.5 - prob_less
    lhs, rhs = 0.25 * l1, 0.5 * l1
    identity = 0.25 * float(np.sum(np.outer(pair.q, pair.q) * np.abs(r[:, None] - r[None, :])))
    gap = abs(middle - identity)
    passed = lhs - tol <= middle <= rhs + tol and gap <= 1e-10
    return TvBound(lhs, middle, rhs, tv, l1, prob_less, passed, gap)


def tv_bound_fuzz(count: int, max_support: int, seed: int) -> Dict[str, object]:
    failures = []
    for k in range(count):
        rng = np.random.default_rng(derive(seed, "tv", k))
        pair = DiscreteDistPair.random(int(rng.integers(1, max_support + 1)), rng)
        result = tv_bound_check(pair)
        if not result.passed:
            failures.append({"index": k, **result.to_dict()})
    return {"pairs": count, "failures": failures}


def bivariate_llr(x: np.ndarray, y: np.ndarray, c: float) -> np.ndarray:
    """log dP_c / d(P_X x P_Y) for a standard bivariate normal with correlation c."""
    one_minus = 1.0 - c * c
    return -0.5 * math.log(one_minus) - (x * x - 2.0 * c * x * y + y * y) / (2.0 * one_minus) + (x * x + y * y) / 2.0


def _bivariate(n: int, c: float, rng: np.random.Generator):
    x = rng.standard_normal(n)
    y = c * x + math.sqrt(1.0 - c * c) * rng.standard_normal(n)
    return x, y


def mu_condition_check(cfg: MuConditionConfig, out_dir: str = None) -> pd.DataFrame:
    """sqrt(n2) (mu_hat - mu) per n, where mu = P{theta(V) < theta(W)}, V joint, W product.

    theta_hat plugs in the correlation estimated from n1 = n / 2 joint points.
    One Monte Carlo reference draw per n is shared by all training replicates.
    """
    rows, seeds = [], []
    for n in cfg.n_grid:
        c = cfg.rho / math.sqrt(n)
        if not abs(c) < 1:
            raise InvalidConfig(f"rho / sqrt(n) must lie in (-1, 1); got {c} at n={n}")
        n1 = n // 2
        n2 = n - n1
        mc_rng = np.random.default_rng(derive(cfg.master_seed, "mu", n, "mc"))
        vx, vy = _bivariate(cfg.mc_size, c, mc_rng)
        wx, wy = mc_rng.standard_normal(cfg.mc_size), mc_rng.standard_normal(cfg.mc_size)
        mu = mann_whitney_fraction(bivariate_llr(vx, vy, c), bivariate_llr(wx, wy, c))

        gaps = []
        for rep in range(cfg.reps):
            seeds.append(derive(cfg.master_seed, "mu", n, rep))
            rng = np.random.default_rng(seeds[-1])
            tx, ty = _bivariate(n1, c, rng)
            c_hat = float(np.clip(np.mean(tx * ty), -CORRELATION_CLIP, CORRELATION_CLIP))
            mu_hat = mann_whitney_fraction(bivariate_llr(vx, vy, c_hat), bivariate_llr(wx, wy, c_hat))
            gaps.append(mu_hat - mu)
        value = math.sqrt(n2) * float(np.mean(gaps))
        logger.info("mu condition n=%s: sqrt(n2)(mu_hat - mu) = %.5f", n, value)
        rows.append({"n": n, "n2": n2, "correlation": c, "mu": mu, "scaled_gap": value, "reps": cfg.reps})

    table = pd.DataFrame(rows, columns=["n", "n2", "correlation", "mu", "scaled_gap", "reps"])
    if out_dir:
        write_csv(table, os.path.join(out_dir, "mu_condition.csv"))
        write_manifest(out_dir, build_manifest("mu_condition", cfg.model_dump(), seeds))
    return table
