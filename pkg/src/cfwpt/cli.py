"""Batch front-end: setup sweeps, oracle validation, and CDF extraction.

Subcommands:
  optimize   run max-min and the fixed baseline over many random
             setups, writing per-UE and per-setup-minimum SE tables
  validate   compare every closed-form statistic against its Monte
             Carlo estimator on a small instance (exit 1 on |z| > 3)
  cdf        turn a sweep manifest into empirical CDF tables plus a
             90%/95%-likely summary

Exit codes: 0 success, 1 validation failure, 2 usage/config error.
All outputs are a pure function of (config, seed): reruns are
byte-identical, and setup workers are gathered in index order so
--jobs never changes file contents.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

import numpy as np

from .config import ConfigError, ScenarioConfig, load_config, with_overrides
from .estimation import build_cache
from .geometry import PropagationModel, draw_link_statistics, place_network
from .maxmin import fpc_baseline, solve_maxmin
from .wit import lsfd_statistics, se_statistics_oracle
from .wpt import harvested_energy, harvested_energy_oracle

MAX_VALIDATE_SIZE = 1024      # cap on L*N*K so the oracles stay quick


def _fmt(v):
    return f"{float(v):.12g}"


def _setup_rng(seed, index):
    ss = np.random.SeedSequence(seed, spawn_key=(index,))
    token = int(ss.generate_state(1, np.uint64)[0])
    return np.random.default_rng(ss), token


def _run_setup(task):
    cfg, prop, seed, index = task
    rng, token = _setup_rng(seed, index)
    geom = place_network(cfg, rng)
    stats = draw_link_statistics(geom, prop, cfg, rng)
    cache = build_cache(stats, stats.plan, cfg)
    se = lsfd_statistics(cache, stats, stats.plan, cfg)
    mmf = solve_maxmin(stats, cache, se, cfg)
    fpc = fpc_baseline(stats, cache, se, cfg)
    return {
        "setup_id": index,
        "setup_seed": token,
        "status": mmf.status,
        "cap_hit": bool(mmf.cap_hit),
        "t_star": float(mmf.t_star),
        "se_mmf": [float(v) for v in mmf.per_ue_se],
        "se_fpc": [float(v) for v in fpc.per_ue_se],
        "min_se_mmf": float(mmf.per_ue_se.min()),
        "min_se_fpc": float(fpc.per_ue_se.min()),
    }


def run_optimize(cfg, prop, setups, seed, out_dir, jobs=1, config_label="<defaults>"):
    """Sweep random setups and write the SE tables plus a manifest."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    tasks = [(cfg, prop, seed, i) for i in range(setups)]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            records = list(pool.map(_run_setup, tasks))
    else:
        records = [_run_setup(t) for t in tasks]

    with open(out / "se_per_ue.csv", "w", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(["setup_id", "ue_id", "scheme", "se_bits_per_hz"])
        for rec in records:
            for scheme, key in (("MMF", "se_mmf"), ("FPC", "se_fpc")):
                for ue, val in enumerate(rec[key]):
                    w.writerow([rec["setup_id"], ue, scheme, _fmt(val)])

    with open(out / "min_se_per_setup.csv", "w", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(["setup_id", "scheme", "min_se"])
        for rec in records:
            w.writerow([rec["setup_id"], "MMF", _fmt(rec["min_se_mmf"])])
            w.writerow([rec["setup_id"], "FPC", _fmt(rec["min_se_fpc"])])

    manifest = {
        "subcommand": "optimize",
        "config": config_label,
        "setups": setups,
        "seed": seed,
        "out": str(out),
        "records": records,
    }
    with open(out / "manifest.json", "w") as f:
        json.dump(manifest, f, indent=2, sort_keys=True)
        f.write("\n")
    return manifest


def _z_scores(closed, mean, stderr):
    closed = np.asarray(closed, dtype=complex)
    mean = np.asarray(mean, dtype=complex)
    stderr = np.asarray(stderr, dtype=float)
    diff = np.abs(closed - mean)
    with np.errstate(divide="ignore", invalid="ignore"):
        z = np.where(stderr > 0.0, diff / np.where(stderr > 0, stderr, 1.0),
                     np.where(diff == 0.0, 0.0, np.inf))
    return z


def run_validate(cfg, prop, mc_samples, seed, corrupt=False, out=None):
    """Closed forms vs Monte Carlo on one setup; 0 iff all |z| <= 3.

    corrupt is a test hook: it biases the closed-form harvested energy
    by 5% so the comparison must fail.
    """
    out = sys.stdout if out is None else out
    rng = np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(0,)))
    geom = place_network(cfg, rng)
    stats = draw_link_statistics(geom, prop, cfg, rng)
    plan = stats.plan
    cache = build_cache(stats, plan, cfg)
    K, L = cache.tr_rhat.shape

    # Every AP splits its budget evenly over the UE-directed beams.
    p = cfg.rho_d / (K * cache.tr_rhat)

    checks = []
    closed_e = np.array([harvested_energy(k, p, cache, stats, plan, cfg)
                         for k in range(K)])
    if corrupt:
        closed_e = closed_e * 1.05
    est = np.array([harvested_energy_oracle(k, p, cache, stats, plan, cfg,
                                            mc_samples, rng)
                    for k in range(K)])
    checks.append(("harvested_energy",
                   _z_scores(closed_e, est[:, 0], est[:, 1])))

    se = lsfd_statistics(cache, stats, plan, cfg)
    oracle = se_statistics_oracle(cache, stats, plan, cfg, mc_samples, rng)
    checks.append(("b", _z_scores(se.b, oracle.b, oracle.b_se)))
    checks.append(("C", _z_scores(se.C, oracle.C, oracle.C_se)))
    checks.append(("D", _z_scores(se.D, oracle.D, oracle.D_se)))

    ok = True
    for name, z in checks:
        worst = float(np.max(z))
        ok = ok and worst <= 3.0
        print(f"{name:<17s} max|z| = {worst:.3f}  over {z.size} entries",
              file=out)
    print("validation " + ("PASSED" if ok else "FAILED")
          + " (threshold max|z| <= 3)", file=out)
    return 0 if ok else 1


def run_cdf(out_dir, out=None):
    """Empirical CDFs and likely-SE summary from an optimize manifest."""
    out = sys.stdout if out is None else out
    out_path = Path(out_dir)
    manifest_path = out_path / "manifest.json"
    if not manifest_path.exists():
        print(f"error: no manifest.json under {out_path}", file=sys.stderr)
        return 2
    try:
        with open(manifest_path) as f:
            manifest = json.load(f)
    except json.JSONDecodeError as exc:
        print(f"error: unreadable manifest: {exc}", file=sys.stderr)
        return 2
    records = manifest.get("records", [])
    if not records:
        print("error: manifest contains no setup records", file=sys.stderr)
        return 2

    per_ue = {"MMF": [], "FPC": []}
    min_se = {"MMF": [], "FPC": []}
    for rec in records:
        per_ue["MMF"].extend(rec["se_mmf"])
        per_ue["FPC"].extend(rec["se_fpc"])
        min_se["MMF"].append(rec["min_se_mmf"])
        min_se["FPC"].append(rec["min_se_fpc"])

    def write_cdf(name, table):
        with open(out_path / name, "w", newline="") as f:
            w = csv.writer(f, lineterminator="\n")
            w.writerow(["scheme", "value", "cdf"])
            for scheme in ("MMF", "FPC"):
                vals = sorted(table[scheme])
                n = len(vals)
                for i, v in enumerate(vals):
                    w.writerow([scheme, _fmt(v), _fmt((i + 1) / n)])

    write_cdf("cdf_se_per_ue.csv", per_ue)
    write_cdf("cdf_min_se.csv", min_se)

    def likely(vals, level):
        vals = sorted(vals)
        idx = max(int(np.ceil(level * len(vals))), 1) - 1
        return vals[idx]

    lines = []
    for label, table in (("per-UE SE", per_ue), ("min SE per setup", min_se)):
        for scheme in ("MMF", "FPC"):
            vals = table[scheme]
            lines.append(
                f"{label}, {scheme}: 90%-likely = {_fmt(likely(vals, 0.1))}"
                f" bits/s/Hz, 95%-likely = {_fmt(likely(vals, 0.05))}"
                " bits/s/Hz")
    text = "\n".join(lines) + "\n"
    with open(out_path / "summary.txt", "w") as f:
        f.write(text)
    print(text, end="", file=out)
    return 0


def _small_default_config():
    base = ScenarioConfig()
    return with_overrides(base, L=2, K=4, N=2, tau_p=2, tau_d=25, tau_u=173)


def build_parser():
    parser = argparse.ArgumentParser(
        prog="cfwpt",
        description="Wireless-powered cell-free massive MIMO experiments")
    sub = parser.add_subparsers(dest="command", required=True)

    opt = sub.add_parser("optimize", help="sweep setups, solve, write SE CSVs")
    opt.add_argument("-c", "--config", default=None)
    opt.add_argument("--setups", type=int, default=100)
    opt.add_argument("--seed", type=int, default=None)
    opt.add_argument("-o", "--out", default="out")
    opt.add_argument("--jobs", type=int, default=1)

    val = sub.add_parser("validate", help="closed forms vs Monte Carlo")
    val.add_argument("-c", "--config", default=None)
    val.add_argument("--seed", type=int, default=None)
    val.add_argument("--mc-samples", type=int, default=None)

    cdf = sub.add_parser("cdf", help="CDF tables from an optimize manifest")
    cdf.add_argument("-o", "--out", default="out")

    return parser


def main(argv=None):
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)

    try:
        if args.command == "cdf":
            return run_cdf(args.out)

        if args.config is not None:
            cfg, prop = load_config(args.config)
            label = str(args.config)
        elif args.command == "validate":
            cfg, prop = _small_default_config(), PropagationModel()
            label = "<built-in small instance>"
        else:
            cfg, prop = ScenarioConfig(), PropagationModel()
            label = "<defaults>"
        seed = args.seed if args.seed is not None else cfg.seed

        if args.command == "optimize":
            run_optimize(cfg, prop, args.setups, seed, args.out,
                         jobs=args.jobs, config_label=label)
            return 0

        size = cfg.L * cfg.N * cfg.K
        if size > MAX_VALIDATE_SIZE:
            print(f"error: validate instance too large (L*N*K = {size} > "
                  f"{MAX_VALIDATE_SIZE}); use a smaller config",
                  file=sys.stderr)
            return 2
        samples = args.mc_samples if args.mc_samples is not None \
            else cfg.mc_samples
        return run_validate(cfg, prop, samples, seed)
    except (ConfigError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def entry():
    sys.exit(main())


if __name__ == "__main__":
    entry()
