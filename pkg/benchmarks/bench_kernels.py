"""Benchmark the compiled measure kernels against the pure-NumPy fallback.

Run:  python benchmarks/bench_kernels.py
"""

import time

import numpy as np

from ineqtest import B0, SMParams, sm_sample
from ineqtest._kernels import BACKEND, _pykernels

try:
    from ineqtest._kernels import _ckernels
except ImportError:
    _ckernels = None


def timeit(fn, *args, repeat=5, number=20):
    best = np.inf
    for _ in range(repeat):
        t0 = time.perf_counter()
        for _ in range(number):
            fn(*args)
        best = min(best, (time.perf_counter() - t0) / number)
    return best


def run():
    rng = np.random.default_rng(1)
    bench = SMParams(2.8, B0, 1.7)
    x200 = sm_sample(bench, 200, rng)
    x5k = sm_sample(bench, 5_000, rng)
    rows = sm_sample(bench, 400 * 200, rng).reshape(400, 200)
    bounds = np.array([0, 50, 100, 150, 200], dtype=np.int64)

    cases = [
        ("gini_stat n=200", "gini_stat", (x200, False)),
        ("gini_stat n=5000", "gini_stat", (x5k, False)),
        ("theil_stat n=5000", "theil_stat", (x5k,)),
        ("ge_stat(2) n=5000", "ge_stat", (x5k, 2.0)),
        ("gini_segments q=4 n=200", "gini_segments", (x200, bounds, True)),
        ("gini_rows 400x200", "gini_rows", (rows,)),
        ("theil_rows 400x200", "theil_rows", (rows,)),
    ]

    print(f"active backend: {BACKEND}")
    header = f"{'kernel':28} {'numpy':>12} {'compiled':>12} {'speedup':>9}"
    print(header)
    print("-" * len(header))
    for label, name, args in cases:
        t_py = timeit(getattr(_pykernels, name), *args)
        if _ckernels is None:
            print(f"{label:28} {t_py * 1e6:10.1f}us {'-':>12} {'-':>9}")
            continue
        t_c = timeit(getattr(_ckernels, name), *args)
        print(f"{label:28} {t_py * 1e6:10.1f}us {t_c * 1e6:10.1f}us {t_py / t_c:8.1f}x")


if __name__ == "__main__":
    run()
