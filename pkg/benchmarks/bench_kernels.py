"""Compare the compiled and numpy associativity kernels.

Usage: python3 benchmarks/bench_kernels.py [--repeat N] [--full]

Times the pruned search on every census shape of orders 4, 8 and 9 with
both backends and checks that they return identical rows.  ``--full`` adds
the complete-table mode on the shapes where the numpy kernel finishes in
reasonable time.
"""

import argparse
import time

import numpy as np

from ringcover import _pykernels, kernels
from ringcover.census import ShapeData, shapes_of_order

FULL_SHAPES = [(2, 2), (3, 3), (2, 4), (8,), (9,)]


def _time(fn, orders, prune, repeat):
    data = ShapeData.build(orders)
    args = (data.group.coords, np.array(orders, dtype=np.int64), list(data.allowed), prune)
    best = float("inf")
    rows = None
    for _ in range(repeat):
        start = time.perf_counter()
        rows = fn(*args)
        best = min(best, time.perf_counter() - start)
    return best, rows


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--full", action="store_true", help="also time the complete-table mode")
    args = parser.parse_args()

    if not kernels.compiled_available():
        raise SystemExit("compiled kernels are not built; run `pip install -e . --no-build-isolation` first")
    from ringcover import _ckernels

    shapes = [s for n in (4, 9, 8) for s in shapes_of_order(n)]
    cases = [(s, True) for s in shapes]
    if args.full:
        cases += [(s, False) for s in FULL_SHAPES]

    print(f"{'shape':<10} {'mode':<7} {'rows':>6} {'cython s':>10} {'numpy s':>10} {'speedup':>8}")
    for orders, prune in cases:
        tc, rc = _time(_ckernels.associative_tables, orders, prune, args.repeat)
        tp, rp = _time(_pykernels.associative_tables, orders, prune, args.repeat)
        assert np.array_equal(rc, rp), f"backends disagree on {orders}"
        label = "x".join(map(str, orders))
        mode = "pruned" if prune else "full"
        print(f"{label:<10} {mode:<7} {len(rc):>6} {tc:>10.4f} {tp:>10.4f} {tp / max(tc, 1e-9):>7.1f}x")


if __name__ == "__main__":
    main()
