#!/usr/bin/env python3
"""Benchmark the compiled alias kernel against the numpy fallback.

Usage: python benchmarks/bench_sampling.py [--tokens N] [--repeat R]

Both backends draw identical streams (verified in the test suite); this
script compares their table-build and draw throughput.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from rankfreq._kernels import AliasSampler, available_backends


def time_call(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def zipfish_probs(k):
    p = 1.0 / np.arange(1.0, k + 1.0)
    return p / p.sum()


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--tokens", type=int, default=2_000_000)
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    backends = available_backends()
    print(f"backends: {', '.join(backends)}   tokens per draw: {args.tokens:,}")
    print(f"{'species':>10} {'phase':>7} " +
          " ".join(f"{b:>12}" for b in backends) + f" {'speedup':>9}")

    for k in (1_000, 10_000, 100_000, 1_000_000):
        probs = zipfish_probs(k)
        build_times = {}
        draw_times = {}
        for backend in backends:
            build_times[backend] = time_call(
                lambda: AliasSampler(probs, backend=backend), args.repeat)
            sampler = AliasSampler(probs, backend=backend)
            draw_times[backend] = time_call(
                lambda: sampler.sample_counts(args.tokens,
                                              np.random.default_rng(0)),
                args.repeat)
        for phase, times in (("build", build_times), ("draw", draw_times)):
            cells = " ".join(f"{times[b]*1e3:>10.2f}ms" for b in backends)
            if len(backends) == 2:
                speedup = times["python"] / times["compiled"]
                cells += f" {speedup:>8.2f}x"
            print(f"{k:>10,} {phase:>7} {cells}")


if __name__ == "__main__":
    main()
