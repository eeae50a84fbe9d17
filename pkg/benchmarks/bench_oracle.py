"""Time the enumeration kernels against the pure-python fallback.

Run as `python3 benchmarks/bench_oracle.py`. The first timed column repeats
each call after a warmup pass, so compilation cost is not charged to the
compiled backend; the cold-start column shows it separately.
"""

import argparse
import os
import time

CELLS = [
    (3, 2, True, True),
    (4, 2, True, True),
    (4, 2, False, False),
    (5, 2, True, True),
    (5, 3, True, False),
]


def timed(fn, repeats):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def run_backend(backend, cells, repeats):
    os.environ["CUEGENUS_BACKEND"] = backend
    from cuegenus.oracle import count_configs

    rows = []
    for d, g, mono, trans in cells:
        call = lambda: count_configs(d, g, monotone=mono, transitive=trans)
        call()  # warmup (and, for the compiled backend, jit load)
        rows.append(((d, g, mono, trans), timed(call, repeats)))
    return rows


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeats", type=int, default=3)
    parser.add_argument("--skip-python", action="store_true",
                        help="only time the compiled backend")
    args = parser.parse_args()

    os.environ["CUEGENUS_BACKEND"] = "numba"
    t0 = time.perf_counter()
    from cuegenus.oracle import count_configs

    count_configs(2, 1)
    cold = time.perf_counter() - t0
    print(f"compiled backend ready in {cold:.2f}s (includes import and jit load)")

    fast = run_backend("numba", CELLS, args.repeats)
    slow = None if args.skip_python else run_backend("python", CELLS, args.repeats)

    header = f"{'cell (d,g,mono,trans)':>24} {'numba':>11}"
    if slow:
        header += f" {'python':>11} {'speedup':>9}"
    print(header)
    for i, (cell, t_fast) in enumerate(fast):
        line = f"{str(cell):>24} {t_fast * 1e3:>9.2f}ms"
        if slow:
            t_slow = slow[i][1]
            line += f" {t_slow * 1e3:>9.2f}ms {t_slow / t_fast:>8.1f}x"
        print(line)


if __name__ == "__main__":
    main()
