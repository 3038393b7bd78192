"""Benchmark the compiled kernel against the pure-Python fallback.

Times the symbolic ops and the direct-square closure on both backends:

    python -m latkit.bench [--budget 4000] [--ops 200000]
"""

from __future__ import annotations

import argparse
import random
import time

from latkit import _pykernel
from latkit.herringbone import square_generators_K


def _load_backends():
    backends = [("python", _pykernel)]
    try:
        from latkit import _kernel  # type: ignore[attr-defined]

        backends.insert(0, ("cython", _kernel))
    except ImportError:
        pass
    return backends


def _random_codes(module, count: int, max_index: int):
    rng = random.Random(12345)
    tags = [0, 1, 2, 3, 4, 5, 6, 7, 8, 9]
    out = []
    for _ in range(count):
        tag = rng.choice(tags)
        idx = rng.randrange(max_index)
        if tag in (4, 9):
            idx -= idx & 1
        elif tag in (5, 8):
            idx |= 1
        elif tag in (0, 1, 2, 3):
            idx = 0
        out.append(module.pack(tag, idx))
    return out


def bench_ops(module, count: int) -> float:
    codes = _random_codes(module, 2048, 400)
    meet = module.meet_code
    join = module.join_code
    n = len(codes)
    start = time.perf_counter()
    for i in range(count):
        a = codes[i % n]
        b = codes[(i * 7 + 3) % n]
        meet(a, b)
        join(a, b)
    return time.perf_counter() - start


def bench_closure(module, budget: int) -> tuple:
    gens = [(x.code(), y.code()) for x, y in square_generators_K()]
    start = time.perf_counter()
    elements, _, complete = module.pair_closure(gens, budget)
    elapsed = time.perf_counter() - start
    return elapsed, len(elements), complete


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--budget", type=int, default=4000)
    parser.add_argument("--ops", type=int, default=200_000)
    args = parser.parse_args(argv)

    backends = _load_backends()
    print(f"{'backend':<8} {'meet+join pairs/s':>18} {'closure({:d})'.format(args.budget):>14}")
    rows = []
    for name, module in backends:
        ops_time = bench_ops(module, args.ops)
        clo_time, size, complete = bench_closure(module, args.budget)
        rows.append((name, args.ops / ops_time, clo_time, size, complete))
        print(
            f"{name:<8} {args.ops / ops_time:>18,.0f} {clo_time:>12.2f}s"
            f"  ({size} elements, complete={complete})"
        )
    if len(rows) == 2:
        speedup = rows[1][2] / rows[0][2]
        print(f"closure speedup (cython over python): {speedup:.1f}x")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
