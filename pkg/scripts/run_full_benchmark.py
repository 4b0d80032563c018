"""Full benchmark: all fourteen test problems, all five constraint handlers,
thirty runs each at the standard 300k-evaluation budget.

Roughly 14 x 5 x 30 runs of ~30s each; plan for a day on one core or use
--parallel on a larger machine.
"""
from __future__ import annotations

import argparse
import sys

from cmoead.engine import EngineConfig
from cmoead.harness import ALGORITHM_NAMES, ExperimentConfig, run_experiment
from cmoead.problems import LIRCMOP_NAMES


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", required=True, help="output directory")
    parser.add_argument("--runs", type=int, default=30)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--parallel", type=int, default=1)
    args = parser.parse_args()

    cfg = ExperimentConfig(
        problems=LIRCMOP_NAMES,
        algorithms=ALGORITHM_NAMES,
        runs=args.runs,
        engine=EngineConfig(seed=args.seed),
        output_dir=args.out,
        parallel_runs=args.parallel,
    )
    rows, manifest = run_experiment(cfg)
    for row in rows:
        print(row)
    return 1 if manifest["failures"] else 0


if __name__ == "__main__":
    sys.exit(main())
