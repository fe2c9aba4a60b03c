#!/usr/bin/env python3
"""Run the robustness variants of the mass sweep.

Each variant perturbs one ingredient of the default experiment while
keeping everything else fixed:

* ``noise``:    5% measurement noise added to the displacements
* ``jitter``:   1% random perturbation of masses and stiffnesses
* ``t25``:      25 s time series instead of 10 s
* ``t5``:       5 s time series (expected to degrade detection)
* ``reversed``: the same mass grid traversed upward (increasing mass)

Outputs land in ``<out>/<variant>``; compare their report.json against
the clean run from run_reference_sweep.py.
"""

import argparse
import sys
from pathlib import Path

from locnet.cli import main as locnet_main

VARIANTS = {
    "noise": ["--noise", "0.05"],
    "jitter": ["--jitter", "0.01"],
    "t25": ["--t-end", "25"],
    "t5": ["--t-end", "5"],
    "reversed": ["--grid", "0.8:1.0:100"],
}


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default="results", help="output root directory")
    parser.add_argument("--seed", type=int, help="override the ensemble seed")
    parser.add_argument("--parallel", type=int, default=1, help="worker processes")
    parser.add_argument(
        "--only",
        choices=sorted(VARIANTS),
        nargs="*",
        help="run a subset of the variants",
    )
    args = parser.parse_args()

    root = Path(args.out)
    common = ["--parallel", str(args.parallel)]
    if args.seed is not None:
        common += ["--seed", str(args.seed)]

    names = args.only if args.only else list(VARIANTS)
    for name in names:
        print(f"== {name} variant ==")
        argv = ["sweep", *VARIANTS[name], "--out", str(root / name), *common]
        code = locnet_main(argv)
        if code != 0:
            return code
    return 0


if __name__ == "__main__":
    sys.exit(main())
