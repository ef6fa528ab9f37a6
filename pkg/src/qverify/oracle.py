"""Exhaustive classical reference for small instances.

Everything here enumerates the full assignment space, so callers must stay
inside an explicit variable budget; exceeding it raises instead of silently
truncating.  The satisfiability route evaluates clauses directly and never
goes through the reduction, which is what makes it usable as a cross-check
on the QUBO side.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .cnf import CnfFormula, satisfying_mask
from .reduction import Original, Qubo

DEFAULT_BUDGET = 24


class BudgetExceededError(RuntimeError):
    """Instance is too large for exhaustive enumeration."""


def _check_budget(num_vars: int, budget: int, what: str) -> None:
    if num_vars > budget:
        raise BudgetExceededError(
            f"{what} needs 2^{num_vars} assignments; budget allows 2^{budget}"
        )


def enumerate_sat(formula: CnfFormula, budget: int = DEFAULT_BUDGET) -> list[int]:
    """All satisfying assignments of the formula, ascending."""
    _check_budget(formula.num_variables, budget, "satisfiability enumeration")
    mask = satisfying_mask(formula)
    return [int(a) for a in np.nonzero(mask)[0]]


@dataclass(frozen=True)
class SpectrumSummary:
    """Full-objective statistics of a QUBO.

    satisfying_set holds the zero-objective assignments projected onto the
    original-variable prefix (deduplicated, ascending); min_value == 0 exactly
    when it is non-empty.
    """

    min_value: int
    min_count: int
    max_value: int
    satisfying_set: tuple[int, ...]
    value_histogram: dict[int, int]


def qubo_spectrum(qubo: Qubo, budget: int = DEFAULT_BUDGET) -> SpectrumSummary:
    _check_budget(qubo.num_vars, budget, "spectrum enumeration")
    for v in qubo.variable_map[: qubo.num_original]:
        if not isinstance(v, Original):
            raise ValueError("original variables must form the index prefix")
    values = qubo.objective_table()
    uniq, counts = np.unique(values, return_counts=True)
    histogram = {int(v): int(c) for v, c in zip(uniq, counts)}
    min_value = int(uniq[0])
    max_value = int(uniq[-1])
    proj_mask = (1 << qubo.num_original) - 1
    satisfying = sorted({int(a) & proj_mask for a in np.nonzero(values == 0)[0]})
    return SpectrumSummary(
        min_value=min_value,
        min_count=int(counts[0]),
        max_value=max_value,
        satisfying_set=tuple(satisfying),
        value_histogram=histogram,
    )
