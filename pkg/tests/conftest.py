import stat

import numpy as np
import pytest

from qverify.cnf import Clause, CnfFormula


def random_formula(rng: np.random.Generator, max_vars: int = 10,
                   max_clauses: int = 15, max_width: int = 5) -> CnfFormula:
    """Random CNF; distinct variables per clause, so no tautologies."""
    num_vars = int(rng.integers(1, max_vars + 1))
    num_clauses = int(rng.integers(1, max_clauses + 1))
    clauses = []
    for _ in range(num_clauses):
        width = int(rng.integers(1, min(max_width, num_vars) + 1))
        variables = rng.choice(num_vars, size=width, replace=False) + 1
        signs = rng.integers(0, 2, size=width) * 2 - 1
        clauses.append(Clause.of(*(int(v * s) for v, s in zip(variables, signs))))
    return CnfFormula(num_vars, tuple(clauses))


@pytest.fixture
def make_fake_checker(tmp_path):
    """Factory for checker stand-ins: a script that prints CBMC-style chatter
    around a fixed DIMACS payload and logs its argv."""

    def _make(dimacs: str, name: str = "fakecheck", exit_code: int = 0):
        log = tmp_path / f"{name}.argv"
        script = tmp_path / name
        body = "\n".join([
            "#!/bin/sh",
            f"printf '%s\\n' \"$@\" > {log}",
            'echo "FAKE-CHECK version 0.0 (toy)"',
            'echo "Parsing $1"',
            'echo "Generating SAT formula"',
            "cat <<'PAYLOAD'",
            dimacs.rstrip("\n"),
            "PAYLOAD",
            'echo "Runtime decision procedure: 0.00s"',
            f"exit {exit_code}",
            "",
        ])
        script.write_text(body)
        script.chmod(script.stat().st_mode | stat.S_IXUSR)
        return script, log

    return _make


@pytest.fixture
def checker_env(monkeypatch):
    def _set(path):
        monkeypatch.setenv("QVERIFY_CHECKER", str(path))

    return _set
