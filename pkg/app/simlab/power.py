"""
Rejection-rate experiments over (model, a, dimension) grids.
"""
import logging
import os
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

import numpy as np
import pandas as pd

from app.core.exceptions import AppException
from app.schema.classifier import ClassifierConfig
from app.schema.experiment import PowerConfig
from app.service.baseline_service import dcor_test, score_permutation_pvalue
from app.service.test_service import run_cpc
from app.simlab.generators import SimModel, generate
from app.simlab.pool import run_jobs
from app.stats.alternatives import kl_statistic, t_statistic
from app.utils.output import build_manifest, write_csv, write_manifest
from app.utils.seeds import derive

logger = logging.getLogger(__name__)

CURVE_COLUMNS = ["model", "a", "d1", "d2", "method", "alpha", "power", "se", "reps", "failed"]


@dataclass(frozen=True)
class Replicate:
    model: SimModel
    a_index: int
    rep: int
    seed: int
    n: int
    methods: Tuple[str, ...]
    classifier: str
    permutations: int
    standardize: bool


@dataclass
class PowerCurve:
    """Aggregated (a, method, alpha) grid plus the per-replicate tidy rows."""
    table: pd.DataFrame
    tidy: pd.DataFrame
    seeds: List[int] = field(default_factory=list)

    def rejection_rate(self, method: str, alpha: float, a: float = None, model: str = None) -> float:
        rows = self.table[(self.table["method"] == method) & np.isclose(self.table["alpha"], alpha)]
        if a is not None:
            rows = rows[np.isclose(rows["a"], a)]
        if model is not None:
            rows = rows[rows["model"] == model]
        return float(rows["power"].iloc[0])


def mc_se(rate: float, reps: int) -> float:
    if reps <= 0:
        return float("nan")
    return float(np.sqrt(rate * (1.0 - rate) / reps))


def replicate_pvalues(job: Replicate) -> Dict[str, object]:
    """p-value per method for one seeded dataset; failures are returned, not raised."""
    out: Dict[str, object] = {"seed": job.seed, "error": None, "p": {}}
    try:
        sample = generate(job.model, job.n, job.seed)
        if any(m.startswith("cpc") for m in job.methods):
            outcome = run_cpc(
                sample,
                ClassifierConfig(kind=job.classifier),
                seed=derive(job.seed, "cpc"),
                standardize_inputs=job.standardize,
            )
            if "cpc" in job.methods:
                out["p"]["cpc"] = outcome.report.p_value
            if "cpc_t" in job.methods:
                out["p"]["cpc_t"] = score_permutation_pvalue(
                    outcome.evaluation, t_statistic, job.permutations, derive(job.seed, "cpc_t")
                )
            if "cpc_kl" in job.methods:
                out["p"]["cpc_kl"] = score_permutation_pvalue(
                    outcome.evaluation, kl_statistic, job.permutations, derive(job.seed, "cpc_kl")
                )
        if "dcor" in job.methods:
            result = dcor_test(sample.x_rows, sample.y_rows, job.permutations, derive(job.seed, "dcor"))
            out["p"]["dcor"] = result.p_value
    except AppException as e:
        logger.warning("replicate seed=%s failed: %s", job.seed, e.message)
        out["error"] = e.code
    return out


def _dimensions(cfg: PowerConfig) -> List[Tuple[Optional[int], int, int]]:
    if cfg.d_grid:
        return [(i, d, d) for i, d in enumerate(cfg.d_grid)]
    return [(None, cfg.d1, cfg.d2)]


def build_replicates(cfg: PowerConfig) -> List[Replicate]:
    jobs = []
    for model_id in cfg.models:
        for a_index, a in enumerate(cfg.a_grid):
            for d_index, d1, d2 in _dimensions(cfg):
                model = SimModel(model_id, a, d1, d2, cfg.covariance, cfg.rho, cfg.tails)
                for rep in range(cfg.reps):
                    keys = (model_id, a_index, rep) if d_index is None else (model_id, a_index, f"d{d_index}", rep)
                    jobs.append(
                        Replicate(
                            model=model,
                            a_index=a_index,
                            rep=rep,
                            seed=derive(cfg.master_seed, *keys),
                            n=cfg.n,
                            methods=tuple(cfg.methods),
                            classifier=cfg.classifier,
                            permutations=cfg.permutations,
                            standardize=cfg.standardize,
                        )
                    )
    return jobs


def tidy_rows(jobs: List[Replicate], results: List[Dict[str, object]], alphas: List[float]) -> pd.DataFrame:
    rows = []
    for job, result in zip(jobs, results):
        for method in job.methods:
            p = result["p"].get(method)
            for alpha in alphas:
                rows.append(
                    {
                        "model": job.model.model_id,
                        "a": job.model.a,
                        "d1": job.model.d1,
                        "d2": job.model.d2,
                        "rep": job.rep,
                        "seed": str(job.seed),
                        "method": method,
                        "alpha": alpha,
                        "p_value": p,
                        "reject": None if p is None else bool(p <= alpha),
                        "error": result["error"],
                    }
                )
    return pd.DataFrame(rows, columns=["model", "a", "d1", "d2", "rep", "seed", "method", "alpha", "p_value", "reject", "error"])


def aggregate(tidy: pd.DataFrame) -> pd.DataFrame:
    if tidy.empty:
        return pd.DataFrame(columns=CURVE_COLUMNS)
    rows = []
    for key, group in tidy.groupby(["model", "a", "d1", "d2", "method", "alpha"], sort=True):
        ok = group[group["error"].isna()]
        reps = int(ok.shape[0])
        rate = float(ok["reject"].astype(float).mean()) if reps else float("nan")
        rows.append(dict(zip(["model", "a", "d1", "d2", "method", "alpha"], key), power=rate, se=mc_se(rate, reps), reps=reps, failed=int(group.shape[0] - reps)))
    return pd.DataFrame(rows, columns=CURVE_COLUMNS)


def power_experiment(cfg: PowerConfig, out_dir: str = None) -> PowerCurve:
    jobs = build_replicates(cfg)
    logger.info("power experiment: %s replicates, methods=%s", len(jobs), cfg.methods)
    results = run_jobs(replicate_pvalues, jobs, workers=cfg.jobs, label="power")
    tidy = tidy_rows(jobs, results, cfg.alphas)
    curve = PowerCurve(table=aggregate(tidy), tidy=tidy, seeds=[job.seed for job in jobs])

    failed = sum(1 for r in results if r["error"])
    if failed:
        logger.warning("%s of %s replicates failed and were excluded", failed, len(jobs))
    if out_dir:
        write_csv(curve.tidy, os.path.join(out_dir, "power_tidy.csv"))
        write_csv(curve.table, os.path.join(out_dir, "power.csv"))
        write_manifest(out_dir, build_manifest("power", cfg.model_dump(), curve.seeds, {"failed_replicates": failed}))
    return curve
