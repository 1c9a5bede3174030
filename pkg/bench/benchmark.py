"""Benchmark: numba kernel vs pure-numpy fallback for the weave automaton.

Usage: python3 bench/benchmark.py [picks] [tablets]
"""

import sys
import time

import numpy as np

from tabletloom import kernels


def run(picks=20000, tablets=64, repeats=5):
    rng = np.random.default_rng(7)
    actions = rng.choice(np.array([-1, 0, 1], dtype=np.int8), size=(picks, tablets))
    flips = rng.random((picks, tablets)) < 0.01
    sz_s = rng.random(tablets) < 0.5

    # warm up (numba compile) and verify both paths agree
    fast = kernels.simulate_arrays(actions, flips, sz_s) if kernels.numba_enabled() else None
    slow = kernels._simulate_numpy(actions, flips, sz_s)
    if fast is not None:
        for a, b in zip(fast, slow):
            assert np.array_equal(a, b)

    def timeit(fn):
        best = float("inf")
        for _ in range(repeats):
            t0 = time.perf_counter()
            fn(actions, flips, sz_s)
            best = min(best, time.perf_counter() - t0)
        return best

    t_np = timeit(kernels._simulate_numpy)
    print(f"picks={picks} tablets={tablets}")
    print(f"numpy fallback : {t_np * 1e3:8.2f} ms")
    if kernels.numba_enabled():
        t_nb = timeit(lambda a, f, s: kernels.simulate_arrays(a, f, s))
        print(f"numba kernel   : {t_nb * 1e3:8.2f} ms   ({t_np / t_nb:.1f}x)")
    else:
        print("numba disabled (TABLETLOOM_NO_NUMBA set or numba missing)")


if __name__ == "__main__":
    args = [int(a) for a in sys.argv[1:3]]
    run(*args)
