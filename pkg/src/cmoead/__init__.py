"""Decomposition-based constrained multi-objective optimization with an
adaptive epsilon feasibility schedule, baseline constraint handlers, a
two-family benchmark suite, and an experiment harness."""
from __future__ import annotations

from .constraints import (
    IEpsilonState,
    LegacyEpsilonState,
    PolicyKind,
    Preference,
    UpdatePolicy,
    cmoead_epsilon,
    epsilon_compare,
    iepsilon_update,
    initial_epsilon,
    legacy_epsilon_update,
    update_subproblem,
    update_subproblem_many,
)
from .core import (
    Problem,
    Solution,
    dominates,
    make_solution,
    nondominated_filter,
    nondominated_mask,
    overall_violation,
)
from .decomposition import (
    Scalarization,
    SubproblemSet,
    generate_weight_vectors,
    lattice_size,
    neighborhoods,
    scalarize,
    update_ideal,
)
from .engine import EngineConfig, GenerationRecord, RunResult, archive_update, run
from .harness import (
    ExperimentConfig,
    SummaryRow,
    load_metrics,
    run_experiment,
    summarize,
    wilcoxon_rank_sum,
)
from .metrics import hypervolume, igd, reference_point
from .problems import (
    Gripper,
    LIRCMOP_NAMES,
    LirCmop,
    PROBLEM_NAMES,
    estimate_feasible_ratio,
    gripper_kinematics,
    lir_cmop_evaluate,
    problem_by_name,
    reference_front,
)
from .variation import VariationConfig, de_crossover, polynomial_mutation

__version__ = "0.1.0"

__all__ = [
    "EngineConfig",
    "ExperimentConfig",
    "GenerationRecord",
    "Gripper",
    "IEpsilonState",
    "LIRCMOP_NAMES",
    "LegacyEpsilonState",
    "LirCmop",
    "PROBLEM_NAMES",
    "PolicyKind",
    "Preference",
    "Problem",
    "RunResult",
    "Scalarization",
    "Solution",
    "SubproblemSet",
    "SummaryRow",
    "UpdatePolicy",
    "VariationConfig",
    "archive_update",
    "cmoead_epsilon",
    "de_crossover",
    "dominates",
    "epsilon_compare",
    "estimate_feasible_ratio",
    "generate_weight_vectors",
    "gripper_kinematics",
    "hypervolume",
    "iepsilon_update",
    "igd",
    "initial_epsilon",
    "lattice_size",
    "legacy_epsilon_update",
    "lir_cmop_evaluate",
    "load_metrics",
    "make_solution",
    "neighborhoods",
    "nondominated_filter",
    "nondominated_mask",
    "overall_violation",
    "polynomial_mutation",
    "problem_by_name",
    "reference_front",
    "reference_point",
    "run",
    "run_experiment",
    "scalarize",
    "summarize",
    "update_ideal",
    "update_subproblem",
    "update_subproblem_many",
    "wilcoxon_rank_sum",
]
