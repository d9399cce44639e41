#!/usr/bin/env python3
"""Time the parser and the full estimator on representative workloads.

    python3 scripts/runtime_benchmark.py
"""

from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path

import numpy as np

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from lzter import SymbolSequence, global_ter, lz76_word_count


def best_of(fn, repeats: int) -> float:
    times = []
    for _ in range(repeats):
        start = time.perf_counter()
        fn()
        times.append(time.perf_counter() - start)
    return min(times)


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeats", type=int, default=5)
    args = parser.parse_args()

    rng = np.random.default_rng(0)

    # first call pays the compilation cache load; report it separately
    start = time.perf_counter()
    lz76_word_count(SymbolSequence(rng.integers(0, 2, 1000), 2))
    print(f"warmup (jit cache load): {time.perf_counter() - start:.3f} s\n")

    print(f"{'workload':<42} {'best of ' + str(args.repeats):>12}")
    for length in (10_000, 100_000, 1_000_000):
        seq = SymbolSequence(rng.integers(0, 2, length), 2)
        dt = best_of(lambda: lz76_word_count(seq), args.repeats)
        print(f"parse, binary, T={length:<9,} {'':<14} {dt * 1e3:9.2f} ms")
    for alpha in (4, 256):
        seq = SymbolSequence(rng.integers(0, alpha, 100_000), alpha)
        dt = best_of(lambda: lz76_word_count(seq), args.repeats)
        print(f"parse, alphabet {alpha:<4}, T=100,000 {'':<10} {dt * 1e3:9.2f} ms")

    for m, tau, length, K in ((3, 1, 10_000, 30), (8, 10, 10_000, 30)):
        x = SymbolSequence(rng.integers(0, 2, length), 2)
        y = SymbolSequence(rng.integers(0, 2, length), 2)
        dt = best_of(lambda: global_ter(x, y, m, tau, K=K, seed=0), args.repeats)
        print(f"global estimate, m={m}, tau={tau:<3}, T={length:,}, "
              f"K={K} {dt * 1e3:9.2f} ms")
    return 0


if __name__ == "__main__":
    sys.exit(main())
