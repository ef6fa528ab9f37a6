"""End-to-end flow: formula -> reduction -> gap -> solver -> report.

The oracle runs whenever the reduced instance fits its budget, which both
sharpens the gap (exact instead of 1/bound_M) and records the ground truth
the quantum verdict can be audited against.
"""
from __future__ import annotations

import json
import os
import tempfile
import time
from dataclasses import dataclass
from pathlib import Path

from .cnf import CnfFormula, format_assignment
from .oracle import DEFAULT_BUDGET, SpectrumSummary, qubo_spectrum
from .reduction import (
    GapInfo,
    IsingModel,
    Qubo,
    cnf_to_qubo,
    compute_gap,
    qubo_to_ising,
)
from .solvers import (
    NoSolutionFound,
    Sat,
    SolverReport,
    solve_grover,
    solve_qaoa,
    solve_qsvt,
    solve_vqe,
)
from .solvers.report import first_verified

SOLVERS = ("brute", "qaoa", "vqe", "grover", "qsvt")


@dataclass
class Problem:
    formula: CnfFormula
    qubo: Qubo
    ising: IsingModel
    gap: GapInfo
    spectrum: SpectrumSummary | None


def build_problem(formula: CnfFormula, oracle_budget: int = DEFAULT_BUDGET) -> Problem:
    qubo = cnf_to_qubo(formula)
    ising = qubo_to_ising(qubo)
    spectrum = None
    if qubo.num_vars <= oracle_budget:
        spectrum = qubo_spectrum(qubo, budget=oracle_budget)
    gap = compute_gap(qubo, spectrum=spectrum)
    return Problem(formula=formula, qubo=qubo, ising=ising, gap=gap, spectrum=spectrum)


def _solve_brute(problem: Problem, seed: int) -> SolverReport:
    started = time.perf_counter()
    if problem.spectrum is None:
        raise ValueError("instance exceeds the oracle budget; pick a quantum solver")
    spectrum = problem.spectrum
    verdict = first_verified(problem.formula, spectrum.satisfying_set)
    if verdict is None:
        verdict = NoSolutionFound("exhaustive enumeration found no solution")
    return SolverReport(
        solver="brute",
        verdict=verdict,
        best_value=float(spectrum.min_value),
        wall_time_s=time.perf_counter() - started,
        config={"assignments": 1 << problem.qubo.num_vars},
        seed=seed,
    )


def solve(problem: Problem, solver: str, *, optimizer=None, layers: int | None = None,
          degree: int | None = None, shots: int = 2048, seed: int = 0) -> SolverReport:
    if solver == "brute":
        return _solve_brute(problem, seed)
    if solver == "qaoa":
        return solve_qaoa(problem.ising, problem.formula, layers=layers or 3,
                          optimizer=optimizer, shots=shots, seed=seed)
    if solver == "vqe":
        return solve_vqe(problem.ising, problem.formula, layers=layers or 2,
                         optimizer=optimizer, shots=shots, seed=seed)
    if solver == "grover":
        return solve_grover(problem.formula, shots=shots, seed=seed)
    if solver == "qsvt":
        return solve_qsvt(problem.ising, problem.formula, problem.gap,
                          degree=degree, shots=shots, seed=seed)
    raise ValueError(f"unknown solver {solver!r}; pick one of {SOLVERS}")


def report_dict(problem: Problem, report: SolverReport, instance: str,
                duration_ms: float, trace_file: str | None = None) -> dict:
    """Flat JSON-ready run summary; deterministic except duration_ms."""
    gap: dict = {"M": problem.gap.bound_M, "estimated": float(problem.gap.estimated_gap)}
    if problem.gap.exact_gap is not None:
        gap["exact"] = float(problem.gap.exact_gap)
    out: dict = {
        "instance": instance,
        "provenance": problem.formula.provenance,
        "n_cnf_vars": problem.formula.num_variables,
        "n_qubo_vars": problem.qubo.num_vars,
        "n_aux": problem.qubo.num_auxiliary,
        "gap": gap,
        "solver": report.solver,
        "config": report.config,
        "verdict": "sat" if isinstance(report.verdict, Sat) else "none",
        "seed": report.seed,
        "duration_ms": duration_ms,
    }
    if isinstance(report.verdict, Sat):
        out["witness"] = format_assignment(report.verdict.witness,
                                           problem.formula.num_variables)
    else:
        out["reason"] = report.verdict.reason
    if report.rate is not None:
        out["rate"] = report.rate
        out["rate_sampled"] = report.rate_sampled
    if trace_file is not None:
        out["trace_file"] = trace_file
    return out


def write_text_atomic(path: Path, text: str) -> None:
    """Write via a sibling temp file and rename, so partial output never
    lands under the final name."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name + ".", suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as handle:
            handle.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def dump_json(data: dict) -> str:
    return json.dumps(data, indent=2, sort_keys=True) + "\n"
