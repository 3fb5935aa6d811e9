"""
`bench`: wall-clock table over an n / d grid.
"""
import argparse
import logging
import os
from typing import Dict, List

from app.core.exceptions import InvalidConfig
from app.schema.experiment import BenchConfig, load_config
from app.simlab.timing import timing_bench

logger = logging.getLogger(__name__)

_GRID_KEYS = {"n": "n_grid", "d": "d_grid", "n2": "rank_sum_grid"}


def parse_grid(tokens: List[str]) -> Dict[str, str]:
    """['n=1000,2000', 'd=100'] -> {'n_grid': '1000,2000', 'd_grid': '100'}."""
    out = {}
    for token in tokens or []:
        key, sep, value = token.partition("=")
        if not sep or key not in _GRID_KEYS:
            raise InvalidConfig(f"Bad --grid entry {token!r}", hint=f"Use {', '.join(k + '=v1,v2' for k in _GRID_KEYS)}.")
        out[_GRID_KEYS[key]] = value
    return out


def register(subparsers) -> None:
    parser = subparsers.add_parser("bench", help="Time the test and the dcor baseline.")
    parser.add_argument("--config", help="Experiment config file (key = value per line).")
    parser.add_argument("--grid", nargs="*", help="Grid entries such as n=1000,2000 d=100.")
    parser.add_argument("--methods", help="Comma-separated subset of cpc,dcor.")
    parser.add_argument("--reps", type=int)
    parser.add_argument("--seed", type=int, help="Overrides master_seed.")
    parser.add_argument("--out", help="Output directory (default results/bench).")
    parser.set_defaults(handler=run_bench)


def run_bench(args: argparse.Namespace) -> int:
    overrides = {"master_seed": args.seed, "reps": args.reps, "methods": args.methods, **parse_grid(args.grid)}
    cfg = load_config(args.config, BenchConfig, overrides)
    out_dir = args.out or os.path.join("results", "bench")
    table = timing_bench(cfg, out_dir)
    print(table.to_csv(index=False))
    return 0
