"""
Null calibration and the diagnostic experiments built on it: variance-formula
validity, projection sanity and drift under local alternatives.
"""
import logging
import math
import os
from dataclasses import dataclass, field
from typing import Dict, List

import numpy as np
import pandas as pd
from scipy import stats
from scipy.special import expit

from app.core.exceptions import AppException
from app.model.evaluation import ScoredEvaluation
from app.schema.classifier import ClassifierConfig
from app.schema.experiment import CalibrationConfig
from app.service.split_service import build_training_sets, split_indices
from app.service.test_service import run_cpc
from app.classifier.factory import fit_classifier
from app.simlab.generators import SimModel, generate
from app.simlab.pool import run_jobs
from app.stats.ecdf import Ecdf
from app.stats.rank_sum import rank_sum_R
from app.stats.variance import projection_gap
from app.utils.output import build_manifest, write_csv, write_manifest
from app.utils.seeds import derive

logger = logging.getLogger(__name__)

UNIFORMITY_BINS = 20


@dataclass
class NullCalibration:
    statistics: np.ndarray
    p_values: np.ndarray
    ks_distance: float
    ks_pvalue: float
    mean: float
    chi2_stat: float
    chi2_critical: float
    failed: int = 0
    seeds: List[int] = field(default_factory=list)

    @property
    def uniform_ok(self) -> bool:
        return self.chi2_stat < self.chi2_critical

    def summary(self) -> Dict[str, float]:
        return {
            "reps": int(self.statistics.shape[0]),
            "failed": self.failed,
            "ks_distance": self.ks_distance,
            "ks_pvalue": self.ks_pvalue,
            "mean": self.mean,
            "mean_band": 3.0 / math.sqrt(max(1, self.statistics.shape[0])),
            "chi2_stat": self.chi2_stat,
            "chi2_critical": self.chi2_critical,
            "uniform_ok": self.uniform_ok,
        }

    def qq_table(self) -> pd.DataFrame:
        ordered = np.sort(self.statistics)
        m = ordered.shape[0]
        theoretical = stats.norm.ppf((np.arange(1, m + 1) - 0.5) / m)
        return pd.DataFrame({"theoretical": theoretical, "empirical": ordered})


def uniformity_chi2(p_values: np.ndarray, bins: int = UNIFORMITY_BINS, level: float = 0.01):
    """(statistic, critical value) of the equal-bin chi-square uniformity test."""
    counts, _ = np.histogram(p_values, bins=bins, range=(0.0, 1.0))
    expected = p_values.shape[0] / bins
    stat = float(np.sum((counts - expected) ** 2 / expected))
    return stat, float(stats.chi2.ppf(1.0 - level, bins - 1))


def _null_model(cfg: CalibrationConfig, d1: int = None, d2: int = None) -> SimModel:
    return SimModel("M1", 0.0, d1 or cfg.d1, d2 or cfg.d2)


def _null_job(args):
    cfg, seed = args
    try:
        sample = generate(_null_model(cfg), cfg.n, seed)
        report = run_cpc(sample, ClassifierConfig(kind=cfg.classifier), seed=derive(seed, "cpc"), standardize_inputs=cfg.standardize).report
        return report.statistic, report.p_value
    except AppException as e:
        logger.warning("null replicate seed=%s failed: %s", seed, e.message)
        return None


def null_calibration(cfg: CalibrationConfig) -> NullCalibration:
    seeds = [derive(cfg.master_seed, "null", rep) for rep in range(cfg.reps)]
    results = run_jobs(_null_job, [(cfg, s) for s in seeds], workers=cfg.jobs, label="null")
    kept = [r for r in results if r is not None]
    statistics = np.array([r[0] for r in kept])
    p_values = np.array([r[1] for r in kept])
    ks = stats.kstest(statistics, "norm")
    chi2_stat, chi2_critical = uniformity_chi2(p_values)
    return NullCalibration(
        statistics=statistics,
        p_values=p_values,
        ks_distance=float(ks.statistic),
        ks_pvalue=float(ks.pvalue),
        mean=float(np.mean(statistics)),
        chi2_stat=chi2_stat,
        chi2_critical=chi2_critical,
        failed=len(results) - len(kept),
        seeds=seeds,
    )


@dataclass
class VarianceValidity:
    mc_variance: float
    median_sigma_hat_sq: float
    ratio: float
    reps: int

    def summary(self) -> Dict[str, float]:
        return {
            "mc_variance": self.mc_variance,
            "median_sigma_hat_sq": self.median_sigma_hat_sq,
            "ratio": self.ratio,
            "reps": self.reps,
        }


def variance_validity(cfg: CalibrationConfig) -> VarianceValidity:
    """Monte Carlo variance of sqrt(n2) R against the median plug-in variance, one fixed classifier."""
    model_spec = _null_model(cfg)
    pre_sample = generate(model_spec, cfg.n, derive(cfg.master_seed, "pretrain"))
    pre_sets = build_training_sets(pre_sample, split_indices(pre_sample.n, derive(cfg.master_seed, "pretrain", "split")))
    classifier = ClassifierConfig(kind=cfg.classifier).resolved(cfg.d1, cfg.d2)
    model = fit_classifier(pre_sets, classifier, derive(cfg.master_seed, "pretrain", "classifier"))

    scaled, sigmas = [], []
    for rep in range(cfg.reps):
        seed = derive(cfg.master_seed, "variance", rep)
        report = run_cpc(generate(model_spec, cfg.n, seed), classifier, seed=seed, standardize_inputs=False, model=model).report
        scaled.append(math.sqrt(report.n2) * report.R)
        sigmas.append(report.sigma_hat_sq)
        if (rep + 1) % max(1, cfg.reps // 10) == 0:
            logger.info("variance: %s/%s done", rep + 1, cfg.reps)

    mc_variance = float(np.var(scaled, ddof=1))
    median = float(np.median(sigmas))
    return VarianceValidity(mc_variance, median, mc_variance / median, cfg.reps)


def _product_scores(n: int, rng: np.random.Generator) -> np.ndarray:
    return expit(rng.standard_normal(n) * rng.standard_normal(n))


def projection_sanity(cfg: CalibrationConfig) -> pd.DataFrame:
    """Median |(R - 1/2) - R_tilde| per n2 for the score expit(x * y) on independent normals."""
    reference = Ecdf(_product_scores(cfg.reference_size, np.random.default_rng(derive(cfg.master_seed, "reference"))))
    rows = []
    for n2 in cfg.n_grid:
        gaps = []
        for rep in range(cfg.reps):
            seed = derive(cfg.master_seed, "projection", n2, rep)
            rng = np.random.default_rng(seed)
            x = rng.standard_normal(n2)
            y = rng.standard_normal(n2)
            evaluation = ScoredEvaluation(expit(x * y), expit(x * np.roll(y, -1)))
            r_value = rank_sum_R(evaluation, derive(seed, "tie"))
            gaps.append(projection_gap(evaluation, r_value, reference))
        rows.append({"n2": n2, "median_gap": float(np.median(gaps)), "reps": cfg.reps})
    return pd.DataFrame(rows, columns=["n2", "median_gap", "reps"])


def local_alternative_drift(cfg: CalibrationConfig) -> pd.DataFrame:
    """M1 with a = c / sqrt(n): mean standardized statistic per n, with the a = 0 column."""
    rows = []
    classifier = ClassifierConfig(kind=cfg.classifier)
    for n in cfg.n_grid:
        a = cfg.drift_c / math.sqrt(n)
        for label, signal in (("alternative", a), ("null", 0.0)):
            values = []
            for rep in range(cfg.reps):
                seed = derive(cfg.master_seed, "drift", label, n, rep)
                sample = generate(SimModel("M1", signal, cfg.d1, cfg.d2), n, seed)
                values.append(run_cpc(sample, classifier, seed=seed, standardize_inputs=cfg.standardize).report.statistic)
            rows.append(
                {
                    "n": n,
                    "hypothesis": label,
                    "a": signal,
                    "mean_statistic": float(np.mean(values)),
                    "sd_statistic": float(np.std(values, ddof=1)) if len(values) > 1 else 0.0,
                    "reps": cfg.reps,
                }
            )
    return pd.DataFrame(rows, columns=["n", "hypothesis", "a", "mean_statistic", "sd_statistic", "reps"])


def run_calibration(cfg: CalibrationConfig, out_dir: str = None) -> Dict[str, object]:
    """Dispatch on cfg.experiment; writes CSV outputs and a manifest when out_dir is set."""
    summary: Dict[str, object]
    seeds: List[int] = []
    if cfg.experiment == "null":
        result = null_calibration(cfg)
        summary, seeds = result.summary(), result.seeds
        tables = {
            "null_statistics.csv": pd.DataFrame({"statistic": result.statistics, "p_value": result.p_values}),
            "null_qq.csv": result.qq_table(),
        }
    elif cfg.experiment == "variance":
        summary = variance_validity(cfg).summary()
        tables = {}
    elif cfg.experiment == "projection":
        table = projection_sanity(cfg)
        summary = {"median_gap": dict(zip(table["n2"].tolist(), table["median_gap"].tolist()))}
        tables = {"projection.csv": table}
    else:
        table = local_alternative_drift(cfg)
        summary = {"rows": table.to_dict(orient="records")}
        tables = {"drift.csv": table}

    if out_dir:
        for name, frame in tables.items():
            write_csv(frame, os.path.join(out_dir, name))
        write_manifest(out_dir, build_manifest(f"calibrate:{cfg.experiment}", cfg.model_dump(), seeds, {"summary": summary}))
    return summary
