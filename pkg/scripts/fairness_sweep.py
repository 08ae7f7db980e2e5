"""Monte-Carlo fairness sweep over random network drops.

Runs the max-min optimizer and the fractional baseline on a batch of
independently drawn setups, writes the per-UE and per-setup CSVs, then
prints the SE distribution summary.  Equivalent to

    cfwpt optimize -c CONFIG --setups N -o OUT && cfwpt cdf -o OUT

but handy when iterating on a config from a shell loop.
"""

import argparse
import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))

from cfwpt.cli import run_cdf, run_optimize
from cfwpt.config import ScenarioConfig, load_config
from cfwpt.geometry import PropagationModel


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("-c", "--config", type=pathlib.Path, default=None,
                    help="scenario file (defaults to the built-in scenario)")
    ap.add_argument("--setups", type=int, default=20,
                    help="number of random network drops")
    ap.add_argument("--seed", type=int, default=None,
                    help="override the config seed")
    ap.add_argument("--jobs", type=int, default=1,
                    help="worker processes for the sweep")
    ap.add_argument("-o", "--out", type=pathlib.Path, default=pathlib.Path("sweep_out"),
                    help="output directory for the CSVs")
    args = ap.parse_args()

    if args.config is not None:
        cfg, prop = load_config(args.config)
        label = str(args.config)
    else:
        cfg, prop = ScenarioConfig(), PropagationModel()
        label = "<defaults>"
    seed = cfg.seed if args.seed is None else args.seed

    run_optimize(cfg, prop, setups=args.setups, seed=seed,
                 out_dir=args.out, jobs=args.jobs, config_label=label)
    print(f"wrote {args.out}/se_per_ue.csv and {args.out}/min_se_per_setup.csv")
    run_cdf(args.out)


if __name__ == "__main__":
    main()
