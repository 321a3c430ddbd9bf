#!/usr/bin/env python3
"""Dump a CSV grid of exponential-sum values over small order tuples.

Columns: the orders d_1..d_{2r-1}, the closed form (symbolic in q), and the
numeric oracle value at each requested prime.  Rows outside the closed
form's coverage show the oracle value alone; rows over budget are marked.

Usage: oracle_grid.py --mu 2,2 --dmax 3 --p 3,5 [--budget N] > grid.csv
"""

import argparse
import itertools
import sys

from spinchar.padic import (
    BudgetExceededError,
    DEFAULT_BUDGET,
    ShortPatternB,
    brute_force_G,
    closed_form_G,
    preconditions_hold,
)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--mu", required=True)
    ap.add_argument("--dmax", type=int, default=3)
    ap.add_argument("--p", default="3")
    ap.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    args = ap.parse_args()
    mu = tuple(int(x) for x in args.mu.split(","))
    primes = [int(x) for x in args.p.split(",")]
    r = len(mu)
    head = [f"d{i}" for i in range(1, 2 * r)] + ["closed_form"] + [
        f"oracle_p{p}" for p in primes
    ]
    print(",".join(head))
    for d in itertools.product(range(args.dmax + 1), repeat=2 * r - 1):
        t = ShortPatternB(mu, d)
        if not preconditions_hold(t):
            continue
        cf = closed_form_G(t)
        cells = [str(x) for x in d] + [f"\"{cf}\"" if cf is not None else "undefined"]
        for p in primes:
            try:
                val = brute_force_G(t, p, budget=args.budget)
                cells.append(f"{val.real:.9g}{val.imag:+.3g}j")
            except BudgetExceededError:
                cells.append("over-budget")
        print(",".join(cells))
    return 0


if __name__ == "__main__":
    sys.exit(main())
