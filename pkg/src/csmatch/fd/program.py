"""Lowering of a :class:`csmatch.fd.model.Problem` to a flat integer program.

Both search kernels (pure Python and compiled) consume the same
representation: domains, constraints, and watch lists flattened into
integer arrays, so the kernels contain no model objects at all.

Constraint encodings (``cdata`` slices, one per constraint):

====  =========  =============================================
kind  name       payload
====  =========  =============================================
0     UNARY_IN   var, n, allowed values (sorted ascending)
1     CMP_VV     x, op, y
2     ELEM_VV    idx, op, tvar, n, list values
3     REIF       b, cond kind, cond payload
4     SUM        total, nterms, (w, var, has_anchor, anchor)*
====  =========  =============================================

Reified condition payloads: CMP_C(0) ``var, op, c``; CMP_VV(1)
``x, op, y``; ELEM_C(2) ``idx, op, c, n, values``; ELEM_VV(3)
``idx, op, tvar, n, values``.

Operator codes: ``= != < <= > >=`` are 0..5.  An element whose index value
lies outside the list evaluates to false.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import model
from .model import (
    CompareConstraint,
    Condition,
    ElementConstraint,
    MemberConstraint,
    Problem,
    ReifiedConstraint,
    SumConstraint,
    eval_op,
)

K_UNARY_IN = 0
K_CMP_VV = 1
K_ELEM_VV = 2
K_REIF = 3
K_SUM = 4

C_CMP_C = 0
C_CMP_VV = 1
C_ELEM_C = 2
C_ELEM_VV = 3

OP_CODE = {op: i for i, op in enumerate(model.OPERATORS)}


@dataclass
class FlatProgram:
    """Search-ready form of one problem.  All lists hold Python ints."""

    nvars: int = 0
    dom_off: list[int] = field(default_factory=list)
    dom_val: list[int] = field(default_factory=list)
    ckind: list[int] = field(default_factory=list)
    coff: list[int] = field(default_factory=list)
    cdata: list[int] = field(default_factory=list)
    woff: list[int] = field(default_factory=list)
    wdat: list[int] = field(default_factory=list)
    decision: list[int] = field(default_factory=list)
    decision_names: list[str] = field(default_factory=list)
    objective: int = -1

    def domain_of(self, var: int) -> list[int]:
        return self.dom_val[self.dom_off[var] : self.dom_off[var + 1]]


def lower(problem: Problem) -> FlatProgram:
    prog = FlatProgram()
    variables = problem.variables
    prog.nvars = len(variables)
    prog.dom_off.append(0)
    for var in variables:
        prog.dom_val.extend(var.domain)
        prog.dom_off.append(len(prog.dom_val))
        if not var.auxiliary:
            prog.decision.append(var.index)
            prog.decision_names.append(var.name)
    if problem.objective is not None:
        prog.objective = problem.objective.index

    watches: list[list[int]] = [[] for _ in range(prog.nvars)]
    prog.coff.append(0)

    def emit(kind: int, data: list[int], watched: list[int]) -> None:
        cid = len(prog.ckind)
        prog.ckind.append(kind)
        prog.cdata.extend(data)
        prog.coff.append(len(prog.cdata))
        for v in watched:
            if cid not in watches[v][-1:]:
                watches[v].append(cid)

    for con in problem.constraints:
        if isinstance(con, MemberConstraint):
            v = con.var.index
            dom = set(con.var.domain)
            allowed = [x for x in con.allowed if x in dom]
            emit(K_UNARY_IN, [v, len(allowed), *allowed], [v])
        elif isinstance(con, ElementConstraint):
            idx = con.index.index
            if isinstance(con.rhs, model.Var):
                data = [idx, OP_CODE[con.op], con.rhs.index, len(con.values), *con.values]
                emit(K_ELEM_VV, data, [idx, con.rhs.index])
            else:
                allowed = [
                    k
                    for k in con.index.domain
                    if 0 <= k < len(con.values) and eval_op(con.values[k], con.op, con.rhs)
                ]
                emit(K_UNARY_IN, [idx, len(allowed), *allowed], [idx])
        elif isinstance(con, CompareConstraint):
            left = con.left.index
            if isinstance(con.rhs, model.Var):
                emit(K_CMP_VV, [left, OP_CODE[con.op], con.rhs.index], [left, con.rhs.index])
            else:
                allowed = [v for v in con.left.domain if eval_op(v, con.op, con.rhs)]
                emit(K_UNARY_IN, [left, len(allowed), *allowed], [left])
        elif isinstance(con, ReifiedConstraint):
            payload, watched = _lower_condition(con.condition)
            emit(K_REIF, [con.truth.index, *payload], [con.truth.index, *watched])
        elif isinstance(con, SumConstraint):
            data = [con.total.index, len(con.terms)]
            watched = [con.total.index]
            for t in con.terms:
                data.extend(
                    [t.weight, t.var.index, 0 if t.anchor is None else 1, t.anchor or 0]
                )
                watched.append(t.var.index)
            emit(K_SUM, data, watched)
        else:  # pragma: no cover - new constraint kinds must be lowered here
            raise model.ModelError(f"cannot lower {con!r}")

    prog.woff.append(0)
    for v in range(prog.nvars):
        prog.wdat.extend(watches[v])
        prog.woff.append(len(prog.wdat))
    return prog


def _lower_condition(cond: Condition) -> tuple[list[int], list[int]]:
    if cond.kind == "compare":
        left = cond.left.index
        if isinstance(cond.rhs, model.Var):
            return [C_CMP_VV, left, OP_CODE[cond.op], cond.rhs.index], [left, cond.rhs.index]
        return [C_CMP_C, left, OP_CODE[cond.op], cond.rhs], [left]
    idx = cond.index.index
    if isinstance(cond.rhs, model.Var):
        payload = [C_ELEM_VV, idx, OP_CODE[cond.op], cond.rhs.index, len(cond.values), *cond.values]
        return payload, [idx, cond.rhs.index]
    payload = [C_ELEM_C, idx, OP_CODE[cond.op], cond.rhs, len(cond.values), *cond.values]
    return payload, [idx]
