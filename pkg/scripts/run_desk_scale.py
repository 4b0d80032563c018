"""Small benchmark slice: three problems, two handlers, five seeds each.

Finishes in under half an hour on one core and reproduces the headline
comparison (adaptive epsilon vs plain feasibility-first dominance).
"""
from __future__ import annotations

import argparse
import sys

from cmoead.engine import EngineConfig
from cmoead.harness import ExperimentConfig, run_experiment


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", required=True, help="output directory")
    parser.add_argument("--runs", type=int, default=5)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--parallel", type=int, default=1)
    args = parser.parse_args()

    cfg = ExperimentConfig(
        problems=("lircmop1", "lircmop5", "lircmop9"),
        algorithms=("iepsilon", "cdp"),
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
