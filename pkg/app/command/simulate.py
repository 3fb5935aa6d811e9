"""
`simulate`: power curves and the estimation experiments (lasso rate, mean condition).
"""
import argparse
import logging
import os

from app.schema.experiment import LassoRateConfig, MuConditionConfig, PowerConfig, load_config
from app.simlab.checks import mu_condition_check
from app.simlab.lasso_rate import lasso_rate_experiment
from app.simlab.power import power_experiment

logger = logging.getLogger(__name__)

_CONFIGS = {"power": PowerConfig, "lasso_rate": LassoRateConfig, "mu_condition": MuConditionConfig}


def register(subparsers) -> None:
    parser = subparsers.add_parser("simulate", help="Run a simulation campaign from a key=value config file.")
    parser.add_argument("--config", help="Experiment config file (key = value per line).")
    parser.add_argument("--experiment", choices=sorted(_CONFIGS), default="power")
    parser.add_argument("--out", help="Output directory (default results/<experiment>).")
    parser.add_argument("--seed", type=int, help="Overrides master_seed.")
    parser.add_argument("--jobs", type=int, help="Worker processes (default 1).")
    parser.add_argument("--reps", type=int, help="Overrides reps.")
    parser.set_defaults(handler=run_simulate)


def run_simulate(args: argparse.Namespace) -> int:
    overrides = {"master_seed": args.seed, "jobs": args.jobs, "reps": args.reps}
    cfg = load_config(args.config, _CONFIGS[args.experiment], overrides)
    out_dir = args.out or os.path.join("results", args.experiment)
    logger.info("simulate %s -> %s", args.experiment, out_dir)

    if args.experiment == "power":
        curve = power_experiment(cfg, out_dir)
        logger.info("wrote %s aggregated rows", len(curve.table))
    elif args.experiment == "lasso_rate":
        result = lasso_rate_experiment(cfg, out_dir)
        logger.info("lasso rate slope %.3f", result["slope"])
    else:
        table = mu_condition_check(cfg, out_dir)
        logger.info("mu condition values %s", table["scaled_gap"].tolist())
    return 0
