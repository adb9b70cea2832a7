# SPDX-License-Identifier: Apache-2.0
"""Monolithic multigrid preconditioners for 2D Stokes saddle systems."""

from ._stokesmg import (
    CoarseningMode,
    ComparisonTable,
    CycleParams,
    Family,
    ProblemOptions,
    RunConfig,
    RunReport,
    SolverKind,
    StokesError,
    SweepConfig,
    TableFormat,
    TableRow,
    compare,
    family_name,
    p_coarsening_schedule,
    parse_family,
    parse_solver,
    parse_sweep_config,
    problem_info,
    relative_metric,
    run,
    solution_diagnostics,
    solver_name,
    sweep,
)

__all__ = [
    "CoarseningMode",
    "ComparisonTable",
    "CycleParams",
    "Family",
    "ProblemOptions",
    "RunConfig",
    "RunReport",
    "SolverKind",
    "StokesError",
    "SweepConfig",
    "TableFormat",
    "TableRow",
    "compare",
    "family_name",
    "p_coarsening_schedule",
    "parse_family",
    "parse_solver",
    "parse_sweep_config",
    "problem_info",
    "relative_metric",
    "run",
    "solution_diagnostics",
    "solver_name",
    "sweep",
]
