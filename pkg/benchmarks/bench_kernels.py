"""Compare the numba and pure-numpy kernel backends on a flat parameter grid.

    python3 benchmarks/bench_kernels.py [--points N] [--repeat R]

Both backends are checked for agreement before timing.  The first numba
call (compilation, or loading the on-disk cache) is excluded.
"""

import argparse
import time

import numpy as np

from xyzdm import kernels
from xyzdm.kernels import _numpy

try:
    from xyzdm.kernels import _numba
except ImportError:  # numba not installed
    _numba = None


def _inputs(n, seed=0):
    rng = np.random.default_rng(seed)
    j, jz, dm, b_mean, b_inhom = rng.uniform(-5.0, 5.0, (5, n))
    gamma = rng.uniform(-1.0, 1.0, n)
    beta = 1.0 / rng.uniform(0.05, 10.0, n)
    theta = rng.uniform(0.0, np.pi, n)
    phi = rng.uniform(0.0, 2.0 * np.pi, n)
    return (j, gamma, jz, dm, b_mean, b_inhom), beta, theta, phi


CASES = {
    "xstate": lambda p, beta, th, ph, impl: kernels.xstate(*p, beta, impl=impl),
    "thermal_lambdas": lambda p, beta, th, ph, impl: kernels.thermal_lambdas(*p, beta, impl=impl),
    "ground_concurrence": lambda p, beta, th, ph, impl: kernels.ground_concurrence(*p, impl=impl),
    "output_lambdas": lambda p, beta, th, ph, impl: kernels.output_lambdas(*p, beta, th, ph, impl=impl),
    "avg_fidelity": lambda p, beta, th, ph, impl: kernels.avg_fidelity(*p, beta, impl=impl),
}


def _best(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--points", type=int, default=200_000)
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()

    p, beta, th, ph = _inputs(args.points)
    print(f"points={args.points} repeat={args.repeat} (best of)")
    print(f"{'kernel':<20} {'numpy [ms]':>11} {'numba [ms]':>11} {'speedup':>8} {'max diff':>10}")
    for name, case in CASES.items():
        ref = case(p, beta, th, ph, _numpy)
        t_np = _best(lambda: case(p, beta, th, ph, _numpy), args.repeat)
        if _numba is None:
            print(f"{name:<20} {t_np * 1e3:11.2f} {'-':>11} {'-':>8} {'-':>10}")
            continue
        got = case(p, beta, th, ph, _numba)  # warm-up
        diff = float(np.max(np.abs(got - ref)))
        t_nb = _best(lambda: case(p, beta, th, ph, _numba), args.repeat)
        print(f"{name:<20} {t_np * 1e3:11.2f} {t_nb * 1e3:11.2f} {t_np / t_nb:8.1f} {diff:10.1e}")


if __name__ == "__main__":
    main()
