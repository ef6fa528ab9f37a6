"""CNF -> QUBO -> Ising reduction with an integer gap guarantee.

A clause of width <= 2 becomes the penalty 1 - a - b + ab (zero iff the clause
holds); wider clauses are folded left through fresh auxiliaries r with the
gadget (1 - 2a - 2b)r + a + b + ab, which is 0 exactly when r = a OR b and at
least 1 otherwise (3 at a = b = 1, r = 0).  Negated literals substitute
x -> 1 - x before accumulation.  Every coefficient stays an integer, the
objective is a sum of non-negative terms, and its zero-level set projected to
the original variables is exactly the satisfying set of the formula.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm

import numpy as np

from .cnf import Clause, CnfFormula, Literal

# polynomial terms: {} -> constant, {i} -> linear, {i, j} -> quadratic
QuadPoly = dict[tuple[int, ...], int]


@dataclass(frozen=True)
class Original:
    """QUBO variable carrying CNF variable ``variable`` (1-indexed)."""

    variable: int


@dataclass(frozen=True)
class Auxiliary:
    """Fresh variable from reduction step ``step`` of clause ``clause_index``."""

    clause_index: int
    step: int


def _affine(negated: bool) -> tuple[int, int]:
    # literal value as const + sign * x
    return (1, -1) if negated else (0, 1)


def _add_term(poly: QuadPoly, key: tuple[int, ...], coeff: int) -> None:
    if coeff:
        key = tuple(sorted(key))
        poly[key] = poly.get(key, 0) + coeff
        if poly[key] == 0:
            del poly[key]


def _penalty_poly(lits: list[tuple[int, bool]]) -> QuadPoly:
    poly: QuadPoly = {}
    if len(lits) == 1:
        (i, neg), = lits
        ca, sa = _affine(neg)
        _add_term(poly, (), 1 - ca)
        _add_term(poly, (i,), -sa)
        return poly
    (i, na), (j, nb) = lits
    ca, sa = _affine(na)
    cb, sb = _affine(nb)
    _add_term(poly, (), 1 - ca - cb + ca * cb)
    _add_term(poly, (i,), -sa + sa * cb)
    _add_term(poly, (j,), -sb + ca * sb)
    _add_term(poly, (i, j), sa * sb)
    return poly


def clause_penalty(clause: Clause) -> QuadPoly:
    """Penalty polynomial of a width-<=2 clause over 0-based QUBO indices."""
    if clause.width > 2:
        raise ValueError("clause_penalty handles widths 1 and 2; reduce wider clauses first")
    return _penalty_poly([(lit.variable - 1, lit.negated) for lit in clause.literals])


def reduction_gadget(a: tuple[int, bool], b: tuple[int, bool], r: int) -> QuadPoly:
    """Gadget tying fresh index ``r`` to the OR of literals ``a`` and ``b``.

    Literals are (0-based index, negated) pairs; the polynomial is 0 exactly
    when r = a OR b and >= 1 (max 3) otherwise.
    """
    (i, na), (j, nb) = a, b
    ca, sa = _affine(na)
    cb, sb = _affine(nb)
    poly: QuadPoly = {}
    _add_term(poly, (r,), 1 - 2 * ca - 2 * cb)
    _add_term(poly, (i, r), -2 * sa)
    _add_term(poly, (j, r), -2 * sb)
    _add_term(poly, (), ca + cb + ca * cb)
    _add_term(poly, (i,), sa + sa * cb)
    _add_term(poly, (j,), sb + ca * sb)
    _add_term(poly, (i, j), sa * sb)
    return poly


def eval_poly(poly: QuadPoly, assignment: int) -> int:
    total = 0
    for key, coeff in poly.items():
        term = coeff
        for idx in key:
            term *= (assignment >> idx) & 1
        total += term
    return total


@dataclass
class Qubo:
    """x^T Q x + c over binary x; coefficients stored upper-triangular.

    ``coeffs`` maps (i, j) with i <= j to the full integer coefficient of
    x_i x_j (linear terms on the diagonal), so the symmetric-matrix reading
    splits each off-diagonal entry across Q[i][j] + Q[j][i].
    """

    num_vars: int
    coeffs: dict[tuple[int, int], int]
    offset: int
    variable_map: tuple
    clause_terms: int = 0
    gadget_terms: int = 0

    @property
    def num_original(self) -> int:
        return sum(isinstance(v, Original) for v in self.variable_map)

    @property
    def num_auxiliary(self) -> int:
        return self.num_vars - self.num_original

    def objective(self, assignment: int) -> int:
        total = self.offset
        for (i, j), coeff in self.coeffs.items():
            if (assignment >> i) & 1 and (assignment >> j) & 1:
                total += coeff
        return total

    def dense(self) -> np.ndarray:
        q = np.zeros((self.num_vars, self.num_vars), dtype=np.int64)
        for (i, j), coeff in self.coeffs.items():
            q[i, j] += coeff
        return q

    def objective_table(self, chunk: int = 1 << 16) -> np.ndarray:
        """Objective for all 2^n assignments (int64), assignment index order."""
        n = self.num_vars
        q = self.dense()
        size = 1 << n
        out = np.empty(size, dtype=np.int64)
        shifts = np.arange(n, dtype=np.int64)
        for start in range(0, size, chunk):
            stop = min(start + chunk, size)
            idx = np.arange(start, stop, dtype=np.int64)
            bits = (idx[:, None] >> shifts) & 1
            out[start:stop] = ((bits @ q) * bits).sum(axis=1) + self.offset
        return out

    def to_json_dict(self) -> dict:
        entries = [[i, j, c] for (i, j), c in sorted(self.coeffs.items())]
        var_map = []
        for v in self.variable_map:
            if isinstance(v, Original):
                var_map.append({"kind": "original", "variable": v.variable})
            else:
                var_map.append({"kind": "auxiliary", "clause": v.clause_index, "step": v.step})
        return {
            "num_vars": self.num_vars,
            "entries": entries,
            "offset": self.offset,
            "variable_map": var_map,
            "clause_terms": self.clause_terms,
            "gadget_terms": self.gadget_terms,
        }

    @staticmethod
    def from_json_dict(data: dict) -> "Qubo":
        coeffs = {(int(i), int(j)): int(c) for i, j, c in data["entries"]}
        var_map = []
        for v in data["variable_map"]:
            if v["kind"] == "original":
                var_map.append(Original(v["variable"]))
            else:
                var_map.append(Auxiliary(v["clause"], v["step"]))
        return Qubo(
            num_vars=int(data["num_vars"]),
            coeffs=coeffs,
            offset=int(data["offset"]),
            variable_map=tuple(var_map),
            clause_terms=int(data["clause_terms"]),
            gadget_terms=int(data["gadget_terms"]),
        )


def cnf_to_qubo(formula: CnfFormula) -> Qubo:
    """Reduce, fold-left per clause: r1 = L1 v L2, r2 = r1 v L3, ...

    Auxiliary count is sum over clauses of max(0, width - 2); original
    variables occupy QUBO indices 0..n-1 in CNF order.
    """
    coeffs: dict[tuple[int, int], int] = {}
    offset = 0
    variable_map: list = [Original(v) for v in range(1, formula.num_variables + 1)]
    gadgets = 0

    def accumulate(poly: QuadPoly) -> None:
        nonlocal offset
        for key, coeff in poly.items():
            if key == ():
                offset += coeff
            elif len(key) == 1:
                i = key[0]
                coeffs[(i, i)] = coeffs.get((i, i), 0) + coeff
            else:
                coeffs[key] = coeffs.get(key, 0) + coeff

    for ci, clause in enumerate(formula.clauses):
        lits = [(lit.variable - 1, lit.negated) for lit in clause.literals]
        step = 0
        while len(lits) > 2:
            r = len(variable_map)
            variable_map.append(Auxiliary(ci, step))
            accumulate(reduction_gadget(lits[0], lits[1], r))
            lits = [(r, False)] + lits[2:]
            step += 1
            gadgets += 1
        accumulate(_penalty_poly(lits))

    coeffs = {k: v for k, v in coeffs.items() if v != 0}
    return Qubo(
        num_vars=len(variable_map),
        coeffs=coeffs,
        offset=offset,
        variable_map=tuple(variable_map),
        clause_terms=len(formula.clauses),
        gadget_terms=gadgets,
    )


def extend_assignment(formula: CnfFormula, assignment: int) -> int:
    """Extend a CNF assignment with the forced auxiliary values.

    Mirrors the fold-left allocation order of cnf_to_qubo; the result is the
    unique zero-gadget extension, whose objective equals the number of
    unsatisfied clauses.
    """
    full = assignment
    nxt = formula.num_variables
    for clause in formula.clauses:
        if clause.width <= 2:
            continue
        acc = clause.literals[0].holds(assignment)
        for lit in clause.literals[1:-1]:
            acc = acc or lit.holds(assignment)
            if acc:
                full |= 1 << nxt
            nxt += 1
    return full


@dataclass(frozen=True)
class IsingModel:
    """Spin model h.z + sum J_ij z_i z_j + offset with exact rational terms."""

    h: tuple[Fraction, ...]
    couplings: dict[tuple[int, int], Fraction]
    offset: Fraction

    @property
    def n(self) -> int:
        return len(self.h)

    def energy(self, spins) -> Fraction:
        """Energy of a +-1 spin configuration."""
        total = self.offset
        for i, hi in enumerate(self.h):
            total += hi * spins[i]
        for (i, j), jij in self.couplings.items():
            total += jij * spins[i] * spins[j]
        return total

    def energy_of_assignment(self, assignment: int) -> Fraction:
        spins = [1 - 2 * ((assignment >> i) & 1) for i in range(self.n)]
        return self.energy(spins)

    def scaled_integer_form(self) -> tuple[np.ndarray, np.ndarray, int, int]:
        """(h, J, offset) numerators over a common denominator, as int64."""
        denoms = [f.denominator for f in self.h] + [self.offset.denominator]
        denoms.extend(f.denominator for f in self.couplings.values())
        scale = lcm(*denoms) if denoms else 1
        h = np.array([int(f * scale) for f in self.h], dtype=np.int64)
        j = np.zeros((self.n, self.n), dtype=np.int64)
        for (a, b), f in self.couplings.items():
            j[a, b] = int(f * scale)
        return h, j, int(self.offset * scale), scale

    def energy_table(self, chunk: int = 1 << 16) -> np.ndarray:
        """Energy for all 2^n assignments (float64), assignment index order."""
        h, j, off, scale = self.scaled_integer_form()
        n = self.n
        size = 1 << n
        out = np.empty(size, dtype=np.float64)
        shifts = np.arange(n, dtype=np.int64)
        for start in range(0, size, chunk):
            stop = min(start + chunk, size)
            idx = np.arange(start, stop, dtype=np.int64)
            z = 1 - 2 * ((idx[:, None] >> shifts) & 1)
            scaled = ((z @ j) * z).sum(axis=1) + z @ h + off
            out[start:stop] = scaled / scale
        return out


def qubo_to_ising(qubo: Qubo) -> IsingModel:
    """Substitute x_i = (1 - z_i)/2; energies match objectives exactly."""
    n = qubo.num_vars
    h = [Fraction(0)] * n
    couplings: dict[tuple[int, int], Fraction] = {}
    offset = Fraction(qubo.offset)
    for (i, j), coeff in qubo.coeffs.items():
        c = Fraction(coeff)
        if i == j:
            offset += c / 2
            h[i] -= c / 2
        else:
            offset += c / 4
            h[i] -= c / 4
            h[j] -= c / 4
            couplings[(i, j)] = couplings.get((i, j), Fraction(0)) + c / 4
    couplings = {k: v for k, v in couplings.items() if v != 0}
    return IsingModel(h=tuple(h), couplings=couplings, offset=offset)


@dataclass(frozen=True)
class GapInfo:
    """Spectral-gap data for a reduced QUBO.

    bound_M counts one per width-<=2 penalty term and three per gadget, so it
    dominates the largest objective value; estimated_gap = 1/bound_M.  The
    exact fields are filled from an exhaustive spectrum when the oracle budget
    allows: exact_gap = min_nonzero / max_value.
    """

    bound_M: int
    estimated_gap: Fraction
    exact_gap: Fraction | None = None
    max_value: int | None = None
    min_nonzero: int | None = None

    def __post_init__(self):
        if self.bound_M < 1:
            raise ValueError("bound_M must be a positive integer")
        if self.exact_gap is not None and self.exact_gap < self.estimated_gap:
            raise ValueError("exact gap cannot undercut the estimate")


def compute_gap(qubo: Qubo, exact: bool = False, budget: int = 24,
                spectrum=None) -> GapInfo:
    """Gap bound from term counts, optionally sharpened by full enumeration.

    A constant-zero objective (empty formula) has no spectral gap; bound_M is
    floored at 1 so the 1/bound_M estimate stays defined.
    """
    bound = max(1, qubo.clause_terms + 3 * qubo.gadget_terms)
    info = GapInfo(bound_M=bound, estimated_gap=Fraction(1, bound))
    if not exact and spectrum is None:
        return info
    if spectrum is None:
        from .oracle import qubo_spectrum

        spectrum = qubo_spectrum(qubo, budget=budget)
    nonzero = [v for v in spectrum.value_histogram if v != 0]
    if not nonzero or spectrum.max_value <= 0:
        return info
    min_nonzero = min(nonzero)
    return GapInfo(
        bound_M=bound,
        estimated_gap=Fraction(1, bound),
        exact_gap=Fraction(min_nonzero, spectrum.max_value),
        max_value=spectrum.max_value,
        min_nonzero=min_nonzero,
    )
