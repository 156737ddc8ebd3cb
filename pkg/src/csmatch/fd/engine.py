"""Kernel selection and the Problem -> Solution bridge.

The compiled kernel is preferred when the extension built; the pure-Python
kernel is the fallback and the reference semantics.  Both consume the same
flat program, so results are identical; only speed differs.  Set
``CSMATCH_FD_BACKEND=python`` (or ``compiled``) to force one.
"""

from __future__ import annotations

import os

from . import _kernel_py
from .model import Problem, Solution
from .program import lower

try:
    from . import _kernel_cy  # compiled extension, built by setup.py

    _HAVE_COMPILED = True
except ImportError:  # pragma: no cover - depends on build environment
    _kernel_cy = None
    _HAVE_COMPILED = False


def available_backends() -> tuple[str, ...]:
    return ("python", "compiled") if _HAVE_COMPILED else ("python",)


def default_backend() -> str:
    forced = os.environ.get("CSMATCH_FD_BACKEND")
    if forced in ("python", "compiled"):
        if forced == "compiled" and not _HAVE_COMPILED:
            raise RuntimeError("CSMATCH_FD_BACKEND=compiled but the extension is not built")
        return forced
    return "compiled" if _HAVE_COMPILED else "python"


def _kernel(backend: str | None):
    name = backend or default_backend()
    if name == "compiled":
        if not _HAVE_COMPILED:
            raise RuntimeError("compiled kernel requested but not built")
        return _kernel_cy
    if name != "python":
        raise ValueError(f"unknown backend {name!r}")
    return _kernel_py


def solve(problem: Problem, backend: str | None = None) -> list[Solution]:
    """Run the search and wrap raw tuples into Solution records."""
    prog = lower(problem)
    rows = _kernel(backend).search(prog)
    names = prog.decision_names
    objective = problem.objective
    obj_pos = -1
    if objective is not None:
        obj_pos = prog.decision.index(objective.index)
    out = []
    for row in rows:
        assignment = dict(zip(names, row))
        out.append(
            Solution(assignment=assignment, objective_value=row[obj_pos] if obj_pos >= 0 else None)
        )
    return out
