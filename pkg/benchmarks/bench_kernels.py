"""Benchmark the compiled kernels against the pure-Python reference.

Times the three hot paths (RK4 integration, sheet unwrapping, grid field
evaluation) with best-of-N timing and prints a comparison table. Run as

    python benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import math
import timeit

import numpy as np

from dampedosc.kernels import _ref

try:
    from dampedosc.kernels import _speedups
except ImportError:
    _speedups = None


def make_workloads():
    rng = np.random.default_rng(0)
    walk = np.cumsum(rng.uniform(-3.0, 3.0, size=1_000_000))
    principal = np.remainder(walk + math.pi, 2.0 * math.pi) - math.pi
    principal = np.where(principal == -math.pi, math.pi, principal)
    x_centers = np.linspace(-2.0, 2.0, 600) + 1e-3
    p_centers = np.linspace(-2.0, 2.0, 600) + 1e-3
    return [
        ("rk4_path (50k steps)",
         lambda mod: mod.rk4_path(1.0, 0.2, 1.0, 0.0, 1e-3, 50_000, 0.0)),
        ("sheet_numbers (1M samples)",
         lambda mod: mod.sheet_numbers(principal)),
        ("grid_field spiral (600x600)",
         lambda mod: mod.grid_field(_ref.SPIRAL, 1.0, 0.1, x_centers, p_centers)),
        ("grid_field log-energy (600x600)",
         lambda mod: mod.grid_field(_ref.LOG_ENERGY, 1.0, 0.1, x_centers, p_centers)),
    ]


def best_of(func, repeat):
    return min(timeit.repeat(func, number=1, repeat=repeat))


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5,
                        help="timing repetitions per kernel (best is reported)")
    args = parser.parse_args()

    if _speedups is None:
        print("compiled extension not available; timing the pure-Python kernels only")

    name_w = max(len(name) for name, _ in make_workloads())
    header = f"{'kernel':<{name_w}}  {'python (ms)':>12}  {'compiled (ms)':>14}  {'speedup':>8}"
    print(header)
    print("-" * len(header))
    for name, call in make_workloads():
        ref_time = best_of(lambda: call(_ref), args.repeat)
        if _speedups is None:
            print(f"{name:<{name_w}}  {ref_time * 1e3:>12.3f}  {'-':>14}  {'-':>8}")
            continue
        fast_time = best_of(lambda: call(_speedups), args.repeat)
        print(f"{name:<{name_w}}  {ref_time * 1e3:>12.3f}  {fast_time * 1e3:>14.3f}  "
              f"{ref_time / fast_time:>7.1f}x")


if __name__ == "__main__":
    main()
