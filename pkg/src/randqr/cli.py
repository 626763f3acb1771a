"""Command-line entry point.

  randqr run   --matrix fast --n 300 --block 50 --method m3 --q 2 \
               --oversample 25 --seed 1 --out results/
  randqr suite --out results/ [--n 300] [--block 50] [--seed 1]

Exit codes: 0 success, 2 bad arguments, 3 numerical failure.
"""

import argparse
import os
import sys

from .errors import ConvergenceError, DimensionError
from .experiments import (
    cell_filename,
    max_diag_deviation,
    method_config,
    run_experiment,
    run_suite,
    write_csv,
)
from .matrices import KINDS, MatrixSpec


def _build_parser():
    p = argparse.ArgumentParser(prog="randqr", description="blocked QR benchmark harness")
    sub = p.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run one (matrix, method) experiment and write its CSV")
    run.add_argument("--matrix", required=True, choices=KINDS)
    run.add_argument("--n", type=int, default=300)
    run.add_argument("--block", type=int, default=50)
    run.add_argument("--method", required=True, choices=("cpqr", "svd", "m1", "m2", "m3"))
    run.add_argument("--q", type=int, default=0, choices=(0, 1, 2), help="power iterations (m2/m3)")
    run.add_argument("--oversample", type=int, default=None, help="extra sketch columns (default: b/2 for m3, else 0)")
    run.add_argument("--seed", type=int, default=1)
    run.add_argument("--out", required=True, help="output directory")

    suite = sub.add_parser("suite", help="run the full 3-matrix method grid")
    suite.add_argument("--n", type=int, default=300)
    suite.add_argument("--block", type=int, default=50)
    suite.add_argument("--seed", type=int, default=1)
    suite.add_argument("--out", required=True, help="output directory")
    return p


def _cmd_run(args):
    if args.oversample is not None and args.oversample < 0:
        raise ValueError("--oversample must be non-negative")
    spec = MatrixSpec(args.matrix, args.n, args.seed)
    cfg = method_config(args.method, args.block, args.q, args.oversample)
    curve, diag = run_experiment(spec, args.method, cfg)
    os.makedirs(args.out, exist_ok=True)
    path = os.path.join(args.out, cell_filename(args.matrix, args.method, args.q))
    write_csv(path, curve, diag)
    print(f"wrote {path}")
    if args.method == "m3":
        print(f"  max | |R(k,k)|/sigma_k - 1 | = {max_diag_deviation(diag):.6f}")


def main(argv=None):
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "run":
            _cmd_run(args)
        else:
            run_suite(args.out, args.n, args.block, args.seed)
    except ConvergenceError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 3
    except (ValueError, DimensionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
