"""Command-line interface.

    djcm simulate --config run.json [--force-oracle] [--out DIR]
    djcm figures  fig2..fig8 [--out DIR]
    djcm husimi   --t TAU [--range R] [--resolution N] [--all-sectors N_MAX]
                  [--config run.json] [--out DIR]
    djcm validate [--seed SEED] [--tuples N]

Exit codes: 0 success, 1 validation failure, 2 configuration error,
3 I/O error.  DJCM_THREADS caps the worker pool; DJCM_BACKEND selects
the numba or numpy kernels.
"""

from __future__ import annotations

import argparse
import os
import sys

import numpy as np

from . import __version__
from .backend import ACTIVE
from .config import ConfigError, load_config_file, run_config_from_dict, sweep_from_dict
from .dynamics import EXCITED, solve_sector
from .figures import FIGURE_IDS, ROWS, row_params, run_figure
from .observables import husimi_q
from .output import write_json
from .runner import run_pool, run_simulation, trajectory_quality, worker_count, write_husimi_files

__all__ = ["main", "build_parser"]

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_CONFIG = 2
EXIT_IO = 3


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="djcm",
        description="Sector dynamics and observables of a microwave-driven V-type atom "
        "in a Kerr-deformed cavity.",
    )
    parser.add_argument("--version", action="version", version=f"djcm {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    sim = sub.add_parser("simulate", help="run one configuration and emit CSV/SVG/manifest files")
    sim.add_argument("--config", required=True, help="JSON configuration file")
    sim.add_argument("--force-oracle", action="store_true", help="force the ODE path")
    sim.add_argument("--out", default="simulate_out", help="output directory")

    figs = sub.add_parser("figures", help="emit one of the built-in reference figures")
    figs.add_argument("figure", choices=FIGURE_IDS)
    figs.add_argument("--out", default="figures_out", help="output directory")

    hus = sub.add_parser("husimi", help="Husimi distribution over the coherent-state plane")
    hus.add_argument("--t", type=float, required=True, metavar="TAU", help="evaluation time tau")
    hus.add_argument("--range", type=float, default=3.0, help="half-width of the square grid")
    hus.add_argument("--resolution", type=int, default=121, help="grid points per axis")
    hus.add_argument(
        "--all-sectors",
        type=int,
        default=None,
        metavar="N_MAX",
        help="accumulate sectors 0..N_MAX instead of the populated sector only",
    )
    hus.add_argument("--config", default=None, help="JSON configuration for the model parameters")
    hus.add_argument("--out", default="husimi_out", help="output directory")

    val = sub.add_parser("validate", help="run the validation suite and print the report")
    val.add_argument("--seed", type=int, default=None, help="seed of the random property sweep")
    val.add_argument("--tuples", type=int, default=None, help="number of random parameter tuples")
    return parser


def _cmd_simulate(args) -> int:
    doc = load_config_file(args.config)
    cfg = run_config_from_dict(doc, force_oracle=args.force_oracle)
    sweep = sweep_from_dict(doc, cfg)
    if sweep is None:
        run_simulation(cfg, args.out)
        return EXIT_OK
    points = sweep.expand()
    tasks = [
        (lambda label=label, pt=pt: run_simulation(pt, os.path.join(args.out, label)))
        for label, pt in points
    ]
    manifests = run_pool(tasks)
    write_json(
        os.path.join(args.out, "sweep_manifest.json"),
        {
            "command": "simulate-sweep",
            "version": __version__,
            "backend": ACTIVE,
            "workers": worker_count(),
            "points": [
                {"label": label, "method": manifest["method"]}
                for (label, _), manifest in zip(points, manifests)
            ],
        },
    )
    return EXIT_OK


def _cmd_figures(args) -> int:
    run_figure(args.figure, args.out)
    return EXIT_OK


def _cmd_husimi(args) -> int:
    if args.config is not None:
        cfg = run_config_from_dict(load_config_file(args.config))
        params = cfg.params
        ic = cfg.ic
    else:
        params = row_params(ROWS[1])  # chi = 0.2 reference row
        ic = EXCITED
    if args.resolution < 2:
        raise ConfigError(f"--resolution must be >= 2, got {args.resolution}")
    if args.range <= 0:
        raise ConfigError(f"--range must be > 0, got {args.range}")
    if args.t < 0:
        raise ConfigError(f"--t must be >= 0, got {args.t}")
    r = args.range
    t_raw = args.t / params.omega_cavity
    grid = husimi_q(
        params,
        t_raw,
        x_range=(-r, r),
        y_range=(-r, r),
        resolution=args.resolution,
        mode="single" if args.all_sectors is None else "all",
        n_max=args.all_sectors,
        ic=ic,
    )
    # quality metrics of the underlying state solve (populated sector)
    grid_times = np.array([0.0, t_raw]) if t_raw > 0 else np.array([0.0])
    quality = trajectory_quality(solve_sector(params, grid_times, ic=ic))
    files = write_husimi_files(
        grid, os.path.join(args.out, "husimi"), f"Husimi Q at tau={args.t:g}", svg=True
    )
    write_json(
        os.path.join(args.out, "husimi_manifest.json"),
        {
            "command": "husimi",
            "version": __version__,
            "backend": ACTIVE,
            **quality,
            "tau": args.t,
            "range": r,
            "resolution": args.resolution,
            "mode": "single" if args.all_sectors is None else "all",
            "n_max": grid.n_max,
            "params": {
                "omega_cavity": params.omega_cavity,
                "omega_levels": list(params.omega_levels),
                "g1": params.g1,
                "g2": params.g2,
                "omega_e": params.omega_e,
                "chi": getattr(params.deformation, "chi", 0.0),
                "sector_n": params.sector_n,
            },
            "outputs": sorted(os.path.basename(f) for f in files),
        },
    )
    return EXIT_OK


def _cmd_validate(args) -> int:
    from .validate import DEFAULT_SEED, DEFAULT_TUPLES, format_report, run_all

    seed = DEFAULT_SEED if args.seed is None else args.seed
    tuples = DEFAULT_TUPLES if args.tuples is None else args.tuples
    if tuples < 1:
        raise ConfigError(f"--tuples must be >= 1, got {tuples}")
    results = run_all(seed, tuples)
    sys.stdout.write(format_report(results, seed, tuples))
    for r in results:
        sys.stderr.write(f"[{r.index:2d}] {r.elapsed:.3f} s\n")
    return EXIT_OK if all(r.passed for r in results) else EXIT_VALIDATION


_COMMANDS = {
    "simulate": _cmd_simulate,
    "figures": _cmd_figures,
    "husimi": _cmd_husimi,
    "validate": _cmd_validate,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except ValueError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    raise SystemExit(main())
