#!/usr/bin/env python3
"""Sweep the identity-verification matrix over a range of weight bounds and
report per-check timings.

Example:
    python scripts/run_verify.py --weights 2 3 4 5 --seed 0
"""

import argparse
import random
import sys
import time

from qshuffle.cli import CHECKS, _check_hall_littlewood


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--weights", type=int, nargs="+", default=[2, 3, 4, 5])
    parser.add_argument("--q-degree", type=int, default=8)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    failures = 0
    for w in args.weights:
        rng = random.Random(args.seed)
        print(f"== max weight {w} ==")
        for name, fn in CHECKS:
            t0 = time.perf_counter()
            if name == "hall-littlewood":
                ok, detail = _check_hall_littlewood(w, args.q_degree, rng)
            else:
                ok, detail = fn(w, rng)
            elapsed = time.perf_counter() - t0
            verdict = "pass" if ok else "FAIL"
            print(f"  {verdict:4}  {elapsed:7.3f}s  {name:<22}  {detail}")
            failures += not ok
    print(f"total failures: {failures}")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
