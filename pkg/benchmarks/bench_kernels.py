"""Throughput comparison of the compiled and pure-numpy field kernels.

Runs the per-mode propagation step on grids of increasing size and
reports modes/second for each implementation plus the speedup.

    python3 benchmarks/bench_kernels.py [--sizes 4096 65536 1048576] [--reps 20]
"""

import argparse
import time

import numpy as np

from bosegas import _kernels_py, kernels


def _inputs(n, seed=0):
    rng = np.random.default_rng(seed)
    h1 = rng.normal(size=n) + 1j * rng.normal(size=n)
    h2 = rng.normal(size=n) + 1j * rng.normal(size=n)
    r = np.abs(rng.normal(size=n)) + 0.01
    r[0] = 0.0
    m = np.sqrt(1.0 + r * r)
    phi1 = r * m
    pxi = rng.normal(size=n) * r
    g2 = rng.normal(size=n) + 1j * rng.normal(size=n)
    return h1, h2, pxi, r, m, phi1, g2


def _time(step, args, dt, reps):
    step(*args, dt)  # warm up
    best = np.inf
    for _ in range(reps):
        t0 = time.perf_counter()
        step(*args, dt)
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--sizes", type=int, nargs="+",
                    default=[4096, 65536, 1048576])
    ap.add_argument("--reps", type=int, default=20)
    args = ap.parse_args()

    impls = [("numpy", _kernels_py.field_step)]
    if kernels.available()["cython"]:
        from bosegas import _kernels_cy

        impls.append(("cython", _kernels_cy.field_step))
    else:
        print("compiled kernel not built; benchmarking numpy only")

    print(f"{'modes':>10}  " + "".join(f"{name:>14}" for name, _ in impls)
          + ("   speedup" if len(impls) > 1 else ""))
    for n in args.sizes:
        data = _inputs(n)
        times = [_time(step, data, 0.01, args.reps) for _, step in impls]
        rates = [n / t for t in times]
        line = f"{n:>10}  " + "".join(f"{rate:>11.3g}/s" for rate in rates)
        if len(impls) > 1:
            line += f"   {times[0] / times[1]:>6.2f}x"
        print(line)


if __name__ == "__main__":
    main()
