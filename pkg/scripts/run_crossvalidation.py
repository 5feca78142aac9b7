#!/usr/bin/env python3
"""Run the closed-form-vs-brute-force identity suite and print the table."""

import argparse
import sys

from groverlab.bruteforce import cross_validate


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--max-n", type=int, default=8)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--inject-fault", type=float, default=0.0)
    args = parser.parse_args()

    summary = cross_validate(max_n=args.max_n, seed=args.seed, fault=args.inject_fault)
    print(f"{'identity':<34} {'max deviation':>14} {'tolerance':>10} {'cases':>6}  status")
    for check in summary.checks:
        status = "ok" if check.passed else "FAIL"
        print(
            f"{check.name:<34} {check.max_deviation:>14.3e} {check.tolerance:>10.0e} "
            f"{check.cases:>6}  {status}"
        )
    sys.exit(0 if summary.passed else 1)


if __name__ == "__main__":
    main()
