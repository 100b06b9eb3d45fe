#!/usr/bin/env python3
"""Measured communication, rounds and matrix-vector products against the budget table.

For each protocol and size, runs honest instances and reports the largest
observed counts next to the budget evaluated on the same instance.
"""

from __future__ import annotations

import argparse
import random
import sys
import time

from lincert.budgets import budget
from lincert.instances import honest_instance
from lincert.protocols import NAMES, run


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--sizes", type=int, nargs="+", default=[2, 4, 8, 16])
    ap.add_argument("--reps", type=int, default=20)
    ap.add_argument("--p", type=int, default=(1 << 31) - 1)
    ap.add_argument("--protocol", action="append", choices=NAMES)
    args = ap.parse_args(argv)

    violations = 0
    print(f"{'protocol':<16} {'max dim':>7} {'items':>6} {'budget':>6} {'rounds':>6} {'mu':>3} {'ms/run':>7}")
    for name in args.protocol or NAMES:
        for size in args.sizes:
            rng = random.Random(f"{name}:{size}")
            worst_items = worst_budget = worst_rounds = worst_mu = 0
            start = time.perf_counter()
            for k in range(args.reps):
                inst = honest_instance(name, rng, args.p, max_dim=size)
                res = run(name, inst, seed=k)
                b = budget(name, inst)
                violations += bool(b.check(res.stats)) or not res.accepted
                if res.stats.elements >= worst_items:
                    worst_items, worst_budget = res.stats.elements, b.items or 0
                worst_rounds = max(worst_rounds, res.stats.rounds)
                worst_mu = max(worst_mu, res.stats.mu_count)
            ms = 1000 * (time.perf_counter() - start) / args.reps
            print(f"{name:<16} {size:>7} {worst_items:>6} {worst_budget or '-':>6} {worst_rounds:>6} {worst_mu:>3} {ms:>7.2f}")
    print(f"violations: {violations}")
    return 0 if violations == 0 else 1


if __name__ == "__main__":
    sys.exit(main())
