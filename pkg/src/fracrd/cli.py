"""``fracrd`` command-line interface.

Exit codes: 0 success, 1 configuration error, 2 divergence during a run,
3 oracle threshold breach.
"""
from __future__ import annotations

import argparse
import csv
import logging
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .config import load_config
from .convergence import EXAMPLES, convergence_table
from .errors import ConfigError, DivergenceError, GridError
from .etd import StepperContext, integrate
from .io import write_csv, write_pgm, write_ppm, write_snapshot
from .oracle import MAX_DENSE_N, oracle_report
from .stability import stability_boundary

EXIT_OK, EXIT_CONFIG, EXIT_DIVERGED, EXIT_ORACLE = 0, 1, 2, 3

log = logging.getLogger("fracrd")

DEFAULT_Y = (0.0, -5.0, -10.0, -20.0, -40.0)


def _fmt(x: float) -> str:
    return repr(float(x))


def cmd_run(args) -> int:
    try:
        cfg = load_config(args.config)
    except OSError as exc:
        print(f"error: cannot read {args.config}: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (ConfigError, GridError) as exc:
        print(f"error: {args.config}: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    out = Path(args.out) if args.out else cfg.out_dir
    out.mkdir(parents=True, exist_ok=True)
    model = cfg.model
    grid = cfg.grid()
    ctx = StepperContext(grid, model, cfg.tau, check_stages=True if args.debug else None)
    state0 = model.initial_state(grid)

    header = ["time"] + [f"{s}_{k}" for s in model.species for k in ("min", "max", "mean")]
    rows = []

    def summarise(t, arrays):
        row = [_fmt(t)]
        for a in arrays:
            row += [_fmt(np.min(a)), _fmt(np.max(a)), _fmt(np.mean(a))]
        rows.append(row)

    index = {t: i for i, t in enumerate(cfg.snapshots)}

    def on_snapshot(t, state):
        arrays = state.arrays
        if t != cfg.t0:
            summarise(t, arrays)
        stem = out / f"snap_{index[t]:03d}"
        if "snapshot" in cfg.formats:
            write_snapshot(stem.with_suffix(".frrd"), arrays, grid.bc, model.alpha, model.kappa, t)
        if "pgm" in cfg.formats:
            for name, a in zip(model.species, arrays):
                write_pgm(out / f"{stem.name}_{name}.pgm", a)
        if "ppm" in cfg.formats:
            write_ppm(stem.with_suffix(".ppm"), arrays[0], arrays[1])
        log.info("t=%g written", t)

    summarise(cfg.t0, state0.arrays)
    code = EXIT_OK
    try:
        integrate(ctx, state0, cfg.t0, cfg.T, cfg.snapshots, on_snapshot=on_snapshot, keep=False)
    except DivergenceError as exc:
        print(f"error: run diverged: {exc}", file=sys.stderr)
        code = EXIT_DIVERGED
    write_csv(out / "summary.csv", header, rows)
    return code


def cmd_converge(args) -> int:
    try:
        rows = convergence_table(args.example, args.alpha, args.bc, args.levels, args.kappa)
    except (ValueError, GridError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except DivergenceError as exc:
        print(f"error: run diverged: {exc}", file=sys.stderr)
        return EXIT_DIVERGED
    header = ["h", "tau", "max_error", "order", "wall_seconds"]
    data = [(r.h, r.tau, r.max_error, r.order, r.wall_seconds) for r in rows]
    if args.out:
        write_csv(args.out, header, data)
    else:
        w = csv.writer(sys.stdout)
        w.writerow(header)
        for row in data:
            w.writerow(["" if v is None else _fmt(v) for v in row])
    return EXIT_OK


def cmd_stability(args) -> int:
    ys = args.y if args.y else list(DEFAULT_Y)
    if args.ntheta < 64:
        print(f"error: --ntheta must be >= 64, got {args.ntheta}", file=sys.stderr)
        return EXIT_CONFIG
    rows = []
    try:
        for y in ys:
            curve = stability_boundary(y, args.ntheta)
            if curve.unconverged:
                log.warning("y=%g: %d theta samples did not converge", y, len(curve.unconverged))
            for j, th in enumerate(curve.theta):
                for k, x in enumerate(curve.roots[j]):
                    rows.append((float(y), float(th), float(x.real), float(x.imag), k))
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    write_csv(args.out, ["y", "theta", "re_x", "im_x", "branch"], rows)
    return EXIT_OK


def cmd_oracle(args) -> int:
    if args.n > MAX_DENSE_N or args.n < 4:
        print(f"error: --n must lie in [4, {MAX_DENSE_N}] for the dense oracle, got {args.n}",
              file=sys.stderr)
        return EXIT_CONFIG
    try:
        report = oracle_report(args.n, args.bc, args.alpha)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    print(f"oracle-check N={report.N} bc={report.bc.value} alpha={report.alpha:g}")
    for name, value, passed in report.checks:
        print(f"  {name:<18} {value:.3e}  {'ok' if passed else 'BREACH'}")
    return EXIT_OK if report.ok else EXIT_ORACLE


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="fracrd", description="Space-fractional reaction-diffusion solver.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    p.add_argument("-v", "--verbose", action="count", default=0, help="more logging (repeatable)")
    sub = p.add_subparsers(dest="command", required=True)

    r = sub.add_parser("run", help="integrate a config file")
    r.add_argument("config")
    r.add_argument("--out", help="output directory (overrides [output] dir)")
    r.add_argument("--debug", action="store_true", help="check every stage for non-finite values")
    r.set_defaults(func=cmd_run)

    c = sub.add_parser("converge", help="manufactured-solution refinement table")
    c.add_argument("--example", required=True, choices=EXAMPLES)
    c.add_argument("--alpha", type=float, required=True)
    c.add_argument("--bc", default=None, help="boundary condition (huxley2d: neumann or periodic)")
    c.add_argument("--levels", type=int, default=4)
    c.add_argument("--kappa", type=float, default=None)
    c.add_argument("--out", help="CSV path (default: stdout)")
    c.set_defaults(func=cmd_converge)

    s = sub.add_parser("stability", help="stability-region boundary curves as CSV")
    s.add_argument("--y", type=float, nargs="+", help="y values (default: 0 -5 -10 -20 -40)")
    s.add_argument("--ntheta", type=int, default=256)
    s.add_argument("--out", required=True)
    s.set_defaults(func=cmd_stability)

    o = sub.add_parser("oracle-check", help="dense cross-checks of the fast paths")
    o.add_argument("--n", type=int, required=True)
    o.add_argument("--bc", required=True)
    o.add_argument("--alpha", type=float, required=True)
    o.set_defaults(func=cmd_oracle)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    level = logging.WARNING - 10 * min(args.verbose, 2)
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s")
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
