#!/usr/bin/env python3
"""Regenerate all measure-sweep figure data (CSV + gnuplot scripts).

Equivalent to `groverlab figures --out figures`, exposed as a script so the
sweep settings are easy to tweak in one place.
"""

import argparse
from pathlib import Path

from groverlab.optimizers import OptimizerConfig
from groverlab.report import RunConfig, figure_outputs


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default="figures", help="output directory")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--restarts", type=int, default=64)
    parser.add_argument("--phi-points", type=int, default=50)
    args = parser.parse_args()

    run = RunConfig(
        command="figures",
        seed=args.seed,
        phi_points=args.phi_points,
        optimizer=OptimizerConfig(restarts=args.restarts, seed=args.seed),
    )
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for name, content in figure_outputs(run).items():
        (out / name).write_text(content, newline="\n")
        print(f"wrote {out / name}")


if __name__ == "__main__":
    main()
