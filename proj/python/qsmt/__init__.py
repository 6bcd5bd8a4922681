"""Grover-oracle bit-vector solver, thin wrapper over the C++ core."""

import json

from ._qsmt import (
    BudgetError,
    ParseError,
    PlanError,
    enumerate_solutions,
    normalize,
    plan_iterations,
    run_cli,
    spec_version,
)
from . import _qsmt


def solve(text, engine="auto", shots=1024, seed=0, iterations=None, layout=None):
    """Solve a problem given in the input grammar; returns the JSON report as a dict."""
    return json.loads(_qsmt.solve_json(text, engine, shots, seed, iterations, layout))


def cli(*args):
    """Run a qsmt subcommand; returns (exit_code, stdout, stderr)."""
    return run_cli([str(a) for a in args])


__all__ = [
    "BudgetError",
    "ParseError",
    "PlanError",
    "cli",
    "enumerate_solutions",
    "normalize",
    "plan_iterations",
    "solve",
    "spec_version",
]
