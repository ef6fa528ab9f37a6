"""Bounded model checker frontend.

A C source file plus a list of error conditions goes in; the checker's CNF
encoding of "some enabled check fails within the unwinding bound" comes back
as a parsed formula.  The checker executable is found via the QVERIFY_CHECKER
environment variable or a `cbmc` on PATH; the flag table naming each error
condition ships as package data so other CBMC-compatible checkers can reuse
the plumbing.
"""
from __future__ import annotations

import json
import os
import re
import shutil
import subprocess
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from pathlib import Path

from .cnf import CnfError, CnfFormula, parse_dimacs

ENV_VAR = "QVERIFY_CHECKER"
DEFAULT_EXECUTABLE = "cbmc"


class CheckerError(RuntimeError):
    """The checker ran but produced no usable CNF."""


class CheckerUnavailableError(CheckerError):
    """No checker executable could be resolved."""


@lru_cache(maxsize=1)
def checker_flag_table() -> dict[str, tuple[str, ...]]:
    raw = resources.files("qverify.data").joinpath("checker_flags.json").read_text()
    return {name: tuple(flags) for name, flags in json.loads(raw).items()}


@dataclass(frozen=True)
class CheckerConfig:
    source: Path
    checks: tuple[str, ...] = ()
    unwind: int = 1
    executable: str | None = None

    def __post_init__(self):
        if self.unwind < 1:
            raise ValueError("unwind bound must be positive")
        unknown = [c for c in self.checks if c not in checker_flag_table()]
        if unknown:
            known = ", ".join(sorted(checker_flag_table()))
            raise ValueError(f"unknown checks {unknown}; known: {known}")

    def argv(self, executable: str) -> list[str]:
        flags: list[str] = []
        for check in self.checks:
            flags.extend(checker_flag_table()[check])
        return [executable, str(self.source), "--dimacs", *flags,
                "--unwind", str(self.unwind)]


def resolve_checker(executable: str | None = None) -> str | None:
    """Resolved checker path, or None when nothing suitable exists."""
    candidate = executable or os.environ.get(ENV_VAR) or DEFAULT_EXECUTABLE
    if os.path.sep in candidate:
        return candidate if os.access(candidate, os.X_OK) else None
    return shutil.which(candidate)


_CLAUSE_LINE = re.compile(r"^(-?\d+\s+)*0$")


def _extract_dimacs(stdout: str) -> str:
    """CBMC surrounds the DIMACS block with progress chatter; keep the header
    and clause lines only."""
    lines = []
    seen_header = False
    for line in stdout.splitlines():
        stripped = line.strip()
        if stripped.startswith("p cnf "):
            seen_header = True
            lines.append(stripped)
        elif seen_header and _CLAUSE_LINE.match(stripped):
            lines.append(stripped)
    if not seen_header:
        raise CheckerError("checker output contains no DIMACS header")
    return "\n".join(lines) + "\n"


def run_model_checker(config: CheckerConfig) -> CnfFormula:
    """Run the checker on the configured source and parse its CNF output."""
    executable = resolve_checker(config.executable)
    if executable is None:
        raise CheckerUnavailableError(
            f"no model checker found; install cbmc or point {ENV_VAR} at one"
        )
    if not config.source.exists():
        raise CheckerError(f"source file {config.source} does not exist")
    proc = subprocess.run(
        config.argv(executable), capture_output=True, text=True, check=False,
    )
    try:
        return parse_dimacs(_extract_dimacs(proc.stdout), provenance="model-checker")
    except (CheckerError, CnfError) as exc:
        detail = proc.stderr.strip().splitlines()
        hint = f" ({detail[-1]})" if detail else ""
        raise CheckerError(
            f"checker exited {proc.returncode} without usable CNF{hint}"
        ) from exc
