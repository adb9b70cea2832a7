# SPDX-License-Identifier: Apache-2.0
import math

import numpy as np
import pytest

import stokesmg as sm


def small_config(solver=sm.SolverKind.Hmg, family=sm.Family.TaylorHood, k=2):
    c = sm.RunConfig()
    c.problem = "ldc2d"
    c.refinements = 1
    c.k = k
    c.family = family
    c.solver = solver
    return c


def test_schedules():
    assert sm.p_coarsening_schedule(6, sm.CoarseningMode.Gradual) == [6, 4, 2]
    assert sm.p_coarsening_schedule(6, sm.CoarseningMode.Direct) == [6, 2]


def test_name_round_trip():
    for s in [sm.SolverKind.Hmg, sm.SolverKind.PhmgDirect, sm.SolverKind.PhmgGradual,
              sm.SolverKind.FbfHmg, sm.SolverKind.FbfPhmg]:
        assert sm.parse_solver(sm.solver_name(s)) == s
    assert sm.parse_family("sv") == sm.Family.ScottVogelius
    with pytest.raises(sm.StokesError):
        sm.parse_solver("amg")


def test_problem_info():
    info = sm.problem_info("ldc2d", 1, 2)
    assert info["enclosed_flow"]
    assert info["dofs"] == info["velocity_dofs"] + info["pressure_dofs"]
    assert info["nnz_per_dof"] > 1.0


def test_run_converges():
    c = small_config()
    c.keep_solution = True
    r = sm.run(c)
    assert r.converged
    assert r.final_relative_residual <= 1e-10
    assert len(r.residual_history) == r.iterations + 1
    assert math.isclose(r.t_total, r.t_setup + r.t_solve, rel_tol=1e-2)
    assert isinstance(r.solution, np.ndarray)
    assert r.solution.shape == (r.dofs,)


def test_scott_vogelius_divergence_free():
    c = small_config(sm.SolverKind.PhmgDirect, sm.Family.ScottVogelius, 3)
    c.keep_solution = True
    d = sm.solution_diagnostics(sm.run(c))
    assert d["max_divergence"] < 1e-8


def test_manufactured_errors_decrease():
    errors = []
    for r in (1, 2):
        c = small_config(k=3)
        c.problem = "manufactured"
        c.refinements = r
        c.keep_solution = True
        errors.append(sm.solution_diagnostics(sm.run(c)))
    assert errors[0]["velocity_l2_error"] / errors[1]["velocity_l2_error"] > 8.0
    assert errors[0]["pressure_l2_error"] / errors[1]["pressure_l2_error"] > 4.0


def test_diagnostics_need_solution():
    with pytest.raises(sm.StokesError):
        sm.solution_diagnostics(sm.run(small_config()))


def test_compare_and_emit():
    reports = [sm.run(small_config(s)) for s in (sm.SolverKind.Hmg, sm.SolverKind.FbfHmg)]
    table = sm.compare(reports, sm.SolverKind.Hmg)
    assert len(table.rows) == 2
    ref = table.rows[0]
    assert ref.r_total == 1.0
    other = table.rows[1]
    assert other.r_total == pytest.approx(ref.report.t_total / other.report.t_total)
    csv = table.emit(sm.TableFormat.Csv)
    assert csv.splitlines()[0].split(",") == table.csv_columns()
    assert len(csv.strip().splitlines()) == 3
    assert "|" in table.emit(sm.TableFormat.Markdown)


def test_sweep_from_text():
    cfg = sm.parse_sweep_config("problem = ldc2d\nk = 2\nrefinements = 1\nsolvers = hmg, phmg-direct\nreference = hmg\n")
    seen = []
    table = sm.sweep(cfg, lambda r: seen.append(r.iterations))
    assert len(table.rows) == 2
    assert len(seen) == 2
    with pytest.raises(sm.StokesError):
        sm.parse_sweep_config("colour = red\n")
