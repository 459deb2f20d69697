"""Time the compiled lattice scan against the NumPy fallback.

    python benchmarks/bench_lattice.py [--repeat N]

Each case scans every point of the grid with denominator ``k`` in ``d``
dimensions, checks that both backends return the same argmax, and reports
the best-of-N wall time.
"""

import argparse
import time

import numpy as np

from alphaleak.oracle import _lattice_py
from alphaleak.oracle._backend import LINEAR, MIN, POWER

CASES = [(2, 2000), (3, 250), (3, 1000), (4, 40), (4, 100)]
MODES = {"power": (POWER, 0.5), "linear": (LINEAR, 0.0), "min": (MIN, 0.0)}


def best_time(fn, repeat):
    best, out = float("inf"), None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    try:
        from alphaleak.oracle import _lattice
    except ImportError:
        _lattice = None
        print("compiled kernel not built; timing the NumPy fallback only")

    rng = np.random.default_rng(0)
    print(f"{'mode':<7}{'d':>3}{'k':>6}{'points':>10}{'numpy s':>11}{'cython s':>11}{'speedup':>9}")
    for name, (mode, c) in MODES.items():
        for d, k in CASES:
            a = np.abs(rng.normal(size=d))
            active = np.ones(d, dtype=np.uint8)
            t_py, ref = best_time(lambda: _lattice_py.lattice_argmax(k, d, mode, c, a, active), args.repeat)
            row = f"{name:<7}{d:>3}{k:>6}{ref[2]:>10}{t_py:>11.4f}"
            if _lattice is not None:
                t_c, got = best_time(lambda: _lattice.lattice_argmax(k, d, mode, c, a, active), args.repeat)
                if got[0] != ref[0]:
                    raise SystemExit(f"backends disagree on {name} d={d} k={k}: {got[0]} vs {ref[0]}")
                row += f"{t_c:>11.4f}{t_py / t_c:>8.1f}x"
            print(row)


if __name__ == "__main__":
    main()
