"""Time the compiled kernels against the pure-numpy fallback.

Run as ``python benchmarks/bench_kernels.py [--repeat N]``.  With numba
unavailable (or MONOGAMY_PURE_NUMPY set) only the numpy column is
reported.
"""
import argparse
import time

import numpy as np

from monogamy._kernels import (
    NUMBA_ENABLED,
    ptrace_sum_numpy,
    spin_flip_mus_numpy,
    warm_up,
)
from monogamy.qstate import _strides, _subset_offsets


def best_time(fn, args_list, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        for args in args_list:
            fn(*args)
        best = min(best, (time.perf_counter() - t0) / len(args_list))
    return best


def random_density(rng, dim):
    g = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    m = g @ g.conj().T
    return np.ascontiguousarray(m / np.trace(m).real)


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=7, help="timing repetitions")
    parser.add_argument("--calls", type=int, default=200, help="kernel calls per repetition")
    args = parser.parse_args()

    rng = np.random.default_rng(1)
    dims = (2,) * 5
    strides = _strides(dims)
    keep_off = _subset_offsets(dims, (0, 2), strides)
    trace_off = _subset_offsets(dims, (1, 3, 4), strides)
    ptrace_args = [(random_density(rng, 32), keep_off, trace_off) for _ in range(args.calls)]
    flip_args = [(random_density(rng, 4),) for _ in range(args.calls)]

    cases = [
        ("ptrace 5q -> 2q", ptrace_sum_numpy, "_ptrace_sum_jit", ptrace_args),
        ("spin-flip mus 4x4", spin_flip_mus_numpy, "_spin_flip_mus_jit", flip_args),
    ]

    if NUMBA_ENABLED:
        import monogamy._kernels as kernels

        warm_up()
        header = f"{'kernel':<20} {'numpy':>12} {'compiled':>12} {'speedup':>9}"
        print(header)
        print("-" * len(header))
        for label, numpy_fn, jit_name, call_args in cases:
            t_np = best_time(numpy_fn, call_args, args.repeat)
            t_jit = best_time(getattr(kernels, jit_name), call_args, args.repeat)
            print(
                f"{label:<20} {t_np * 1e6:>10.2f}us {t_jit * 1e6:>10.2f}us "
                f"{t_np / t_jit:>8.1f}x"
            )
    else:
        print("compiled path inactive (numba missing or MONOGAMY_PURE_NUMPY set)")
        print(f"{'kernel':<20} {'numpy':>12}")
        for label, numpy_fn, _, call_args in cases:
            t_np = best_time(numpy_fn, call_args, args.repeat)
            print(f"{label:<20} {t_np * 1e6:>10.2f}us")


if __name__ == "__main__":
    main()
