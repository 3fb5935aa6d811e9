"""
`calibrate`: null calibration, variance validity, projection sanity, local-alternative drift.
"""
import argparse
import logging
import os

from app.schema.experiment import CalibrationConfig, load_config
from app.simlab.calibration import run_calibration
from app.utils.output import canonical_json

logger = logging.getLogger(__name__)


def register(subparsers) -> None:
    parser = subparsers.add_parser("calibrate", help="Check the null distribution of the test statistic.")
    parser.add_argument("--config", help="Experiment config file (key = value per line).")
    parser.add_argument("--experiment", choices=["null", "variance", "projection", "drift"])
    parser.add_argument("--out", help="Output directory (default results/calibrate_<experiment>).")
    parser.add_argument("--seed", type=int, help="Overrides master_seed.")
    parser.add_argument("--jobs", type=int)
    parser.add_argument("--reps", type=int)
    parser.add_argument("--n", type=int)
    parser.add_argument("--classifier", choices=["mlp", "logistic", "quadratic"])
    parser.set_defaults(handler=run_calibrate)


def run_calibrate(args: argparse.Namespace) -> int:
    overrides = {
        "experiment": args.experiment,
        "master_seed": args.seed,
        "jobs": args.jobs,
        "reps": args.reps,
        "n": args.n,
        "classifier": args.classifier,
    }
    cfg = load_config(args.config, CalibrationConfig, overrides)
    out_dir = args.out or os.path.join("results", f"calibrate_{cfg.experiment}")
    summary = run_calibration(cfg, out_dir)
    print(canonical_json(summary))
    return 0
