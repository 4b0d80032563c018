"""Robot gripper design runs: 600k evaluations per run, hypervolume only
(the true front is unknown, so there is no distance-based metric).
"""
from __future__ import annotations

import argparse
import sys

from cmoead.engine import EngineConfig
from cmoead.harness import ExperimentConfig, run_experiment


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", required=True, help="output directory")
    parser.add_argument("--runs", type=int, default=30)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--parallel", type=int, default=1)
    parser.add_argument(
        "--algo", default="iepsilon", help="comma-separated handler names"
    )
    args = parser.parse_args()

    cfg = ExperimentConfig(
        problems=("gripper",),
        algorithms=tuple(name.strip() for name in args.algo.split(",")),
        runs=args.runs,
        engine=EngineConfig(seed=args.seed),
        output_dir=args.out,
        metrics=("hv",),
        parallel_runs=args.parallel,
    )
    rows, manifest = run_experiment(cfg)
    for row in rows:
        print(row)
    return 1 if manifest["failures"] else 0


if __name__ == "__main__":
    sys.exit(main())
