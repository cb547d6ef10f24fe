"""Exact grid-polynomial computations: coefficients, Cayley-Bacharach relations,
toric residues and line grids over F_p and Q."""

import json as _json

from ._gridres import *  # noqa: F401,F403
from ._gridres import GridresError, ParseError, _run_job, subcommands

__all__ = [name for name in dir() if not name.startswith("_")] + ["run_job"]


def run_job(subcommand, document, budget=None):
    """Run one CLI job in-process.

    document is a dict (or a JSON string) in the documented input format.
    Returns (exit_code, report, error): report is a dict or None on error paths.
    """
    text = document if isinstance(document, str) else _json.dumps(document)
    code, report, error = _run_job(subcommand, text, budget)
    return code, (_json.loads(report) if report is not None else None), error
