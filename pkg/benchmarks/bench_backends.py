#!/usr/bin/env python3
"""Benchmark: compiled extension kernel vs the same source interpreted.

Both modules come from one file (src/qcplan/_core.py) and produce
bit-identical results; this script measures how much the C compilation
buys on the hot paths and verifies agreement on every workload it times.

Usage:
    python benchmarks/bench_backends.py           # full run (~1 min)
    python benchmarks/bench_backends.py --quick   # sanity-scale run
"""

import argparse
import random
import sys
import time
from array import array

from qcplan import _core

try:
    from qcplan import _core_c
except ImportError:
    print("compiled kernel not available; build it with: pip install -e .")
    sys.exit(1)


def timed(fn, *args):
    t0 = time.perf_counter()
    out = fn(*args)
    return out, time.perf_counter() - t0


def bench_rng(n_draws):
    rows = []
    (a, t_c) = timed(_core_c.rng_stream, 42, n_draws)
    (b, t_i) = timed(_core.rng_stream, 42, n_draws)
    assert a == b
    rows.append(("rng_stream", f"{n_draws} draws", t_c, t_i))
    return rows


def bench_matcher(rng, sizes, solves):
    rows = []
    for n in sizes:
        w = array("i", [0] * (n * n))
        for i in range(n):
            for j in range(i + 1, n):
                val = rng.randint(1, 20)
                w[i * n + j] = val
                w[j * n + i] = val
        ws_c = _core_c.make_matcher_workspace(n)
        ws_i = _core.make_matcher_workspace(n)
        assert _core_c.match_dense_min(n, w, ws_c) == _core.match_dense_min(n, w, ws_i)
        t0 = time.perf_counter()
        for _ in range(solves):
            _core_c.match_dense_min(n, w, ws_c)
        t_c = time.perf_counter() - t0
        t0 = time.perf_counter()
        for _ in range(max(1, solves // 50)):
            _core.match_dense_min(n, w, ws_i)
        t_i = (time.perf_counter() - t0) * 50
        rows.append((f"matcher n={n}", f"{solves} solves", t_c, t_i))
    return rows


def bench_trials(configs, trials):
    rows = []
    for d, rounds, p, q in configs:
        ws_c = _core_c.make_sim_workspace(d, rounds)
        ws_i = _core.make_sim_workspace(d, rounds)
        small = max(200, trials // 100)
        a = _core_c.run_chunk(ws_c, p, q, True, 7, 0, small, 60)
        b = _core.run_chunk(ws_i, p, q, True, 7, 0, small, 60)
        assert a == b, (a, b)
        _, t_c = timed(_core_c.run_chunk, ws_c, p, q, True, 7, 0, trials, 60)
        _, t_i0 = timed(_core.run_chunk, ws_i, p, q, True, 7, 0, small, 60)
        t_i = t_i0 * trials / small
        label = f"trials d={d} r={rounds} p={p}"
        rows.append((label, f"{trials} trials", t_c, t_i))
    return rows


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--quick", action="store_true", help="small sizes")
    args = parser.parse_args()

    rng = random.Random(1)
    if args.quick:
        rows = (
            bench_rng(200_000)
            + bench_matcher(rng, (10, 30), 2_000)
            + bench_trials([(3, 1, 0.08, 0.0), (5, 5, 0.03, 0.03)], 20_000)
        )
    else:
        rows = (
            bench_rng(2_000_000)
            + bench_matcher(rng, (6, 10, 20, 40, 60), 10_000)
            + bench_trials(
                [
                    (3, 1, 0.08, 0.0),
                    (5, 1, 0.05, 0.0),
                    (7, 1, 0.08, 0.0),
                    (5, 5, 0.03, 0.03),
                    (7, 7, 0.03, 0.03),
                ],
                200_000,
            )
        )

    print(f"\n{'workload':<26} {'size':<16} {'compiled':>12} {'interpreted':>12} {'speedup':>9}")
    for label, size, t_c, t_i in rows:
        print(f"{label:<26} {size:<16} {t_c:>11.3f}s {t_i:>11.3f}s {t_i / t_c:>8.1f}x")
    print("\ninterpreted times marked by extrapolation run fewer iterations;")
    print("all workloads verified to give identical results in both modes")


if __name__ == "__main__":
    main()
