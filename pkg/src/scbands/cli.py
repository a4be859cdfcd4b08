"""Command line front end.

Subcommands:
    generate   draw a synthetic sample and write it to CSV
    scb        read a sample CSV and write a confidence band as JSON
    scale-scb  smooth a raw sample over a bandwidth range, then band it
    coverage   run a coverage sweep, write CSV + JSON, print the table
    width      run a width sweep, write CSV + JSON, print the table

Every subcommand takes --config pointing at a JSON document with the
experiment configuration (see ExperimentConfig.from_dict). The scb and
scale-scb configs additionally carry "input" (and optionally "input_x"
for a two-group comparison). --seed and --out override the config file,
--threads parallelizes the sweep drivers. Failures print a one-line JSON
object {"error": ..., "message": ...} to stderr and exit with status 1.
"""

import argparse
import json
import sys

import numpy as np

from .bands import scb_one_sample, scb_scale_space, scb_two_sample
from .experiments import ExperimentConfig, run_coverage, run_width
from .fdata import Grid1D
from .models import add_observation_noise, gen_model
from .rng import substream
from .sampleio import (
    format_report_table,
    read_sample,
    write_band,
    write_report_csv,
    write_report_json,
    write_sample,
)
from .scalespace import ScaleGrid, gaussian_kernel

__all__ = ["main"]

_INPUT_KEYS = ("input", "input_x")


def _load_config(args):
    with open(args.config) as fh:
        doc = json.load(fh)
    inputs = {k: doc.pop(k, None) for k in _INPUT_KEYS}
    if args.seed is not None:
        doc["seed"] = args.seed
    if args.out is not None:
        doc["out"] = args.out
    return ExperimentConfig.from_dict(doc), inputs


def _out_path(cfg, default):
    return cfg.out if cfg.out else default


def _cmd_generate(cfg, inputs):
    n = cfg.n_values[0]
    sample = gen_model(cfg.model, n, substream(cfg.seed, 0, 0, 0))
    if cfg.sigma_obs > 0:
        sample = add_observation_noise(sample, cfg.sigma_obs, substream(cfg.seed, 2, 0, 0))
    path = _out_path(cfg, "sample.csv")
    write_sample(path, sample)
    print(f"wrote {sample.n_samples} x {sample.n_points} sample to {path}")
    return 0


def _cmd_scb(cfg, inputs):
    if not inputs["input"]:
        raise ValueError('scb needs an "input" sample CSV in the config')
    sample = read_sample(inputs["input"])
    method = cfg.methods[0]
    if inputs["input_x"]:
        other = read_sample(inputs["input_x"])
        band = scb_two_sample(
            sample, other, method, cfg.alpha,
            replicates=cfg.bootstrap_replicates, seed=cfg.seed,
        )
    else:
        band = scb_one_sample(
            sample, method, cfg.alpha,
            replicates=cfg.bootstrap_replicates, seed=cfg.seed,
        )
    path = _out_path(cfg, "band.json")
    write_band(path, band)
    print(f"wrote {method} band (alpha={cfg.alpha}, quantile={band.quantile:.6g}) to {path}")
    return 0


def _cmd_scale_scb(cfg, inputs):
    if not inputs["input"]:
        raise ValueError('scale-scb needs an "input" sample CSV in the config')
    raw = read_sample(inputs["input"])
    if not isinstance(raw.grid, Grid1D):
        raise ValueError("scale-scb expects curves, not surfaces")
    if cfg.scale_grid is not None:
        h_min, h_max, count = cfg.scale_grid
        bandwidths = np.linspace(h_min, h_max, count)
    elif cfg.presmooth_bandwidth is not None:
        bandwidths = np.array([cfg.presmooth_bandwidth])
    else:
        raise ValueError('scale-scb needs "scale_grid" or "presmooth_bandwidth"')
    sg = ScaleGrid(raw.grid, bandwidths)
    band = scb_scale_space(
        raw, gaussian_kernel(), sg, cfg.methods[0], cfg.alpha,
        replicates=cfg.bootstrap_replicates, seed=cfg.seed,
    )
    path = _out_path(cfg, "band.json")
    write_band(path, band)
    print(
        f"wrote scale-space {cfg.methods[0]} band over {bandwidths.size} "
        f"bandwidth(s) to {path}"
    )
    return 0


def _write_report(report, stem):
    for suffix in (".csv", ".json"):
        if stem.endswith(suffix):
            stem = stem[: -len(suffix)]
    write_report_csv(stem + ".csv", report)
    write_report_json(stem + ".json", report)
    print(format_report_table(report))
    print(f"wrote {stem}.csv and {stem}.json")
    return 0


def _cmd_coverage(cfg, inputs, threads):
    report = run_coverage(cfg, threads=threads)
    return _write_report(report, _out_path(cfg, "coverage"))


def _cmd_width(cfg, inputs, threads):
    report = run_width(cfg, threads=threads)
    return _write_report(report, _out_path(cfg, "width"))


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="scbands",
        description="Simultaneous confidence bands for functional data.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in (
        ("generate", "draw a synthetic sample and write it to CSV"),
        ("scb", "compute a confidence band for a sample CSV"),
        ("scale-scb", "smooth a raw sample over bandwidths, then band it"),
        ("coverage", "run a coverage sweep"),
        ("width", "run a width sweep"),
    ):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--config", required=True, help="path to a JSON config")
        p.add_argument("--seed", type=int, default=None, help="override the config seed")
        p.add_argument("--out", default=None, help="override the config output path")
        p.add_argument("--threads", type=int, default=1, help="worker threads for sweeps")
    return parser


def main(argv=None):
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        cfg, inputs = _load_config(args)
        if args.command == "generate":
            return _cmd_generate(cfg, inputs)
        if args.command == "scb":
            return _cmd_scb(cfg, inputs)
        if args.command == "scale-scb":
            return _cmd_scale_scb(cfg, inputs)
        if args.command == "coverage":
            return _cmd_coverage(cfg, inputs, args.threads)
        return _cmd_width(cfg, inputs, args.threads)
    except Exception as exc:
        print(
            json.dumps({"error": type(exc).__name__, "message": str(exc)}),
            file=sys.stderr,
        )
        return 1


if __name__ == "__main__":
    sys.exit(main())
