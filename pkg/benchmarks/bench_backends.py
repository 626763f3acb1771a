"""Micro-benchmark: numba kernels against the pure-numpy twin.

Times the hot paths (column-pivoted QR, Jacobi SVD of a panel-sized
block, and both blocked factorizations) on each backend and prints the
speedup.  The first numba call of each case is discarded so jit
compilation does not pollute the numbers.

Run: python benchmarks/bench_backends.py --n 256 --block 32 --repeats 3
"""

import argparse
import time

from randqr.backend import set_backend
from randqr.blocked import BlockConfig, block_qr, block_rrqr
from randqr.householder import qr_column_pivoted
from randqr.pivoting import SketchConfig
from randqr.rng import RngState, gaussian_matrix
from randqr.svd import svd_full


def best_of(fn, repeats):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    p = argparse.ArgumentParser()
    p.add_argument("--n", type=int, default=256)
    p.add_argument("--block", type=int, default=32)
    p.add_argument("--repeats", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    args = p.parse_args()

    n, b = args.n, args.block
    a = gaussian_matrix(n, n, RngState(args.seed))
    panel = gaussian_matrix(b, b, RngState(args.seed + 1))
    rrqr_cfg = BlockConfig(b, SketchConfig(b, b // 2, 1), "reflectors", True)

    cases = [
        (f"cpqr {n}x{n}", lambda: qr_column_pivoted(a)),
        (f"jacobi svd {b}x{b}", lambda: svd_full(panel)),
        (f"block_qr b={b}", lambda: block_qr(a, BlockConfig(b), RngState(1))),
        (f"block_rrqr q=1 b={b}", lambda: block_rrqr(a, rrqr_cfg, RngState(1))),
    ]

    times = {}
    for backend in ("numpy", "numba"):
        try:
            set_backend(backend)
        except ImportError:
            print(f"{backend}: not available, skipping")
            continue
        for name, fn in cases:
            fn()  # warm up (jit compile on numba, caches on numpy)
            times[backend, name] = best_of(fn, args.repeats)

    width = max(len(name) for name, _ in cases)
    print(f"{'case':<{width}}  {'numpy':>10}  {'numba':>10}  speedup")
    for name, _ in cases:
        t_np = times.get(("numpy", name))
        t_nb = times.get(("numba", name))
        if t_np is None or t_nb is None:
            continue
        print(f"{name:<{width}}  {t_np * 1e3:>8.2f}ms  {t_nb * 1e3:>8.2f}ms  {t_np / t_nb:>6.2f}x")


if __name__ == "__main__":
    main()
