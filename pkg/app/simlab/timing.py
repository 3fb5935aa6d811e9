"""
Wall-clock benchmarks: full tests per (method, n, d) and the rank-sum kernel alone.

CPC rows carry `rank_sum_seconds`, the kernel time at that cell's n2. Rows with
method `rank_sum` come from the separate `rank_sum_grid` (n is n2 there, d is 0).
"""
import logging
import os
import time
from typing import Callable

import numpy as np
import pandas as pd

from app.model.evaluation import ScoredEvaluation
from app.schema.classifier import ClassifierConfig
from app.schema.experiment import BenchConfig
from app.service.baseline_service import dcor_test
from app.service.test_service import cpc_test
from app.simlab.generators import SimModel, generate
from app.stats.rank_sum import rank_sum_R
from app.utils.output import build_manifest, write_csv, write_manifest
from app.utils.seeds import derive

logger = logging.getLogger(__name__)

BENCH_COLUMNS = ["method", "n", "d", "median_seconds", "rank_sum_seconds", "reps"]


def _median_time(fn: Callable[[int], object], reps: int) -> float:
    times = []
    for rep in range(reps):
        start = time.perf_counter()
        fn(rep)
        times.append(time.perf_counter() - start)
    return float(np.median(times))


def time_rank_sum(n2: int, reps: int, seed: int) -> float:
    rng = np.random.default_rng(seed)
    evaluation = ScoredEvaluation(rng.random(n2), rng.random(n2))
    return _median_time(lambda rep: rank_sum_R(evaluation, derive(seed, rep)), reps)


def timing_bench(cfg: BenchConfig, out_dir: str = None) -> pd.DataFrame:
    rows = []
    classifier = ClassifierConfig(kind=cfg.classifier)
    for d in cfg.d_grid:
        for n in cfg.n_grid:
            sample = generate(SimModel("M1", 0.0, d, d), n, derive(cfg.master_seed, "bench", n, d))
            for method in cfg.methods:
                if method == "cpc":
                    fn = lambda rep: cpc_test(sample, classifier, seed=derive(cfg.master_seed, "bench", rep))
                else:
                    fn = lambda rep: dcor_test(sample.x_rows, sample.y_rows, cfg.permutations, derive(cfg.master_seed, "bench", rep))
                seconds = _median_time(fn, cfg.reps)
                kernel = None
                if method == "cpc":
                    kernel = time_rank_sum(n - (n + 1) // 2, cfg.reps, derive(cfg.master_seed, "rank_sum", n, d))
                logger.info("bench %s n=%s d=%s: %.3fs", method, n, d, seconds)
                rows.append(
                    {"method": method, "n": n, "d": d, "median_seconds": seconds, "rank_sum_seconds": kernel, "reps": cfg.reps}
                )

    if "cpc" in cfg.methods:
        for n2 in cfg.rank_sum_grid:
            seconds = time_rank_sum(n2, cfg.reps, derive(cfg.master_seed, "rank_sum", n2))
            rows.append(
                {"method": "rank_sum", "n": n2, "d": 0, "median_seconds": seconds, "rank_sum_seconds": seconds, "reps": cfg.reps}
            )

    table = pd.DataFrame(rows, columns=BENCH_COLUMNS)
    if out_dir:
        write_csv(table, os.path.join(out_dir, "timing.csv"))
        write_manifest(out_dir, build_manifest("bench", cfg.model_dump(), [derive(cfg.master_seed, "bench", rep) for rep in range(cfg.reps)]))
    return table
