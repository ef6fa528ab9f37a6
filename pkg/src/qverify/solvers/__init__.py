from .filters import (
    DegreeCapError,
    FilterPolynomial,
    choose_degree,
    eval_filter,
    filter_quality_log2_mu,
    filter_quality_mu,
)
from .grover import grover_iterations, grover_schedule, solve_grover
from .qsvt import BlockEncoding, build_block_encoding, solve_qsvt
from .report import (
    NoSolutionFound,
    Sat,
    SolverReport,
    Verdict,
    first_verified,
    hamiltonian_from_ising,
    project_candidates,
)
from .vqa import (
    qaoa_energy_gradient,
    qaoa_state,
    solve_qaoa,
    solve_vqe,
    vqe_energy_gradient,
    vqe_state,
)

__all__ = [
    "BlockEncoding",
    "DegreeCapError",
    "FilterPolynomial",
    "NoSolutionFound",
    "Sat",
    "SolverReport",
    "Verdict",
    "build_block_encoding",
    "choose_degree",
    "eval_filter",
    "filter_quality_log2_mu",
    "filter_quality_mu",
    "first_verified",
    "grover_iterations",
    "hamiltonian_from_ising",
    "project_candidates",
    "grover_schedule",
    "qaoa_energy_gradient",
    "qaoa_state",
    "solve_grover",
    "solve_qaoa",
    "solve_qsvt",
    "solve_vqe",
    "vqe_energy_gradient",
    "vqe_state",
]
