"""Run every property suite once and print a line per suite.

Usage: python demos/sweep_summary.py [seed] [workers]
"""

import sys
import time

from expanse.sweeps import SUITES, run_suite


def main(argv):
    seed = int(argv[1]) if len(argv) > 1 else 0
    workers = int(argv[2]) if len(argv) > 2 else 1
    for name in SUITES:
        t = time.perf_counter()
        r = run_suite(name, seed=seed, workers=workers)
        took = time.perf_counter() - t
        print(f"{name:12} checked {r.checked:4}  skipped {len(r.skipped):3}  violations {len(r.violations)}  "
              f"{took:6.1f}s  {r.stats}")
        for v in r.violations[:3]:
            print("   ", v)


if __name__ == "__main__":
    main(sys.argv)
