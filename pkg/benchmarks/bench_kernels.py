"""Time the numba and pure-numpy mixture kernels side by side.

    python3 benchmarks/bench_kernels.py --points 2001 --n 10 15 20
    python3 benchmarks/bench_kernels.py --kernels pdf cdf cf   # slow at n = 20

Both backends are importable in one process (``*_numba`` and ``*_numpy``),
so the comparison does not depend on ``HYPERCAUCHY_DISABLE_NUMBA``.  The
first numba call (compilation or cache load) is excluded from the timing.
"""

import argparse
import time

import numpy as np

from hypercauchy import _accel, _kernels
from hypercauchy.distributions import component_tables

KERNELS = {
    "pdf": (_kernels.pdf_bracket_numba, _kernels.pdf_bracket_numpy, False),
    "cdf": (_kernels.cdf_arctan_sum_numba, _kernels.cdf_arctan_sum_numpy, True),
    "cf": (_kernels.cf_sum_numba, _kernels.cf_sum_numpy, True),
}


def best_of(fn, args, repeats):
    times = []
    for _ in range(repeats):
        start = time.perf_counter()
        fn(*args)
        times.append(time.perf_counter() - start)
    return min(times)


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--points", type=int, default=2001)
    parser.add_argument("--n", type=int, nargs="+", default=[10, 15, 20])
    parser.add_argument("--kernels", nargs="+", choices=sorted(KERNELS), default=["pdf"])
    parser.add_argument("--repeats", type=int, default=3)
    args = parser.parse_args(argv)

    if not _accel.HAVE_NUMBA:
        raise SystemExit("numba is not installed; nothing to compare")
    threads = _accel.configure_threads()
    print(f"numba threads: {threads}, grid points: {args.points}")
    print(f"{'kernel':<6} {'n':>3} {'components':>10} {'numba [s]':>10} {'numpy [s]':>10} {'speed-up':>9} {'max rel diff':>13}")
    y = np.linspace(-5.0, 5.0, args.points)
    for name in args.kernels:
        fast, slow, needs_sin = KERNELS[name]
        for n in args.n:
            cos_k, sin_k = component_tables(n)
            call = (y, cos_k, sin_k) if needs_sin else (y, cos_k)
            a = fast(*call)  # compile / load cache
            b = slow(*call)
            t_fast = best_of(fast, call, args.repeats)
            t_slow = best_of(slow, call, args.repeats)
            diff = float(np.max(np.abs(a - b) / np.maximum(np.abs(b), 1e-300)))
            print(f"{name:<6} {n:>3} {cos_k.size:>10} {t_fast:>10.4f} {t_slow:>10.4f} "
                  f"{t_slow / t_fast:>8.1f}x {diff:>13.1e}")


if __name__ == "__main__":
    main()
