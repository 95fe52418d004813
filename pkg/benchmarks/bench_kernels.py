"""Compare the compiled and pure-Python enumeration kernels.

Runs the irreducible-pair count and the all-pairs loop sweep on both
backends (when the extension is available), checks they agree, and
prints timings.

    python3 benchmarks/bench_kernels.py --n 9 --loops-n 8
"""

import argparse
import time

from meanders import _core_py
from meanders.meander import count_irreducible_slice
from meanders.nclat import iter_nc

try:
    from meanders import _core
except ImportError:
    _core = None


def time_call(fn):
    t0 = time.perf_counter()
    out = fn()
    return out, time.perf_counter() - t0


def bench_irreducible(n):
    print(f"irreducible pair counts, n={n}")
    py, t_py = time_call(
        lambda: count_irreducible_slice(n, kernel=_core_py.count_for_alpha))
    total = sum(py.values())
    print(f"  python: {t_py:8.3f}s   ({total} pairs)")
    if _core is None:
        print("  cython: extension not built")
        return
    cy, t_cy = time_call(
        lambda: count_irreducible_slice(n, kernel=_core.count_for_alpha))
    assert cy == py, "backends disagree"
    print(f"  cython: {t_cy:8.3f}s   speedup {t_py / t_cy:6.1f}x")


def bench_loops(n):
    print(f"all-pairs loop sweep, n={n}")
    perms = [[v - 1 for v in p.perm] for p in iter_nc(n)]
    py, t_py = time_call(lambda: _core_py.loop_table(n, perms))
    print(f"  python: {t_py:8.3f}s   ({sum(py)} pairs)")
    if _core is None:
        print("  cython: extension not built")
        return
    cy, t_cy = time_call(lambda: _core.loop_table(n, perms))
    assert list(cy) == list(py), "backends disagree"
    print(f"  cython: {t_cy:8.3f}s   speedup {t_py / t_cy:6.1f}x")


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--n", type=int, default=9,
                        help="point count for the irreducible benchmark")
    parser.add_argument("--loops-n", type=int, default=8,
                        help="point count for the loop-sweep benchmark")
    args = parser.parse_args()
    bench_irreducible(args.n)
    bench_loops(args.loops_n)


if __name__ == "__main__":
    main()
