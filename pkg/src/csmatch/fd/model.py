"""Finite-domain problem construction.

A :class:`Problem` holds integer variables over finite domains plus the
constraints posted on them.  Solving is delegated to a search kernel
(compiled or pure Python, see :mod:`csmatch.fd.engine`); this module only
validates and records the model.

Supported constraints:

* element -- ``values[index] op target`` where ``index`` is a variable and
  ``target`` is an integer or a second variable,
* comparisons between a variable and an integer or another variable,
* equivalence of two conditions, realised as two reified truth variables
  constrained equal,
* weighted sums ``total = sum(w_i * t_i)`` whose terms are either a plain
  variable or an absolute distance ``|var - anchor|``.

Conditions (unposted comparisons used by reification and equivalence) may
reference decision variables only.  An element condition whose index value
falls outside the value list evaluates to false rather than failing.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence, Union

from .errors import (
    DuplicateIdError,
    DuplicateObjectiveError,
    EmptyDomainError,
    ModelError,
    NoObjectiveError,
    UnknownVariableError,
)

OPERATORS = ("=", "!=", "<", "<=", ">", ">=")

_NEGATION = {"=": "!=", "!=": "=", "<": ">=", ">=": "<", ">": "<=", "<=": ">"}

_OP_EVAL = {
    "=": lambda a, b: a == b,
    "!=": lambda a, b: a != b,
    "<": lambda a, b: a < b,
    "<=": lambda a, b: a <= b,
    ">": lambda a, b: a > b,
    ">=": lambda a, b: a >= b,
}


def negate_op(op: str) -> str:
    return _NEGATION[op]


def eval_op(left: int, op: str, right: int) -> bool:
    return _OP_EVAL[op](left, right)


@dataclass(frozen=True)
class Var:
    """Handle for a registered variable.

    ``index`` is the registration position inside its problem; ``domain`` is
    the initial domain, sorted ascending and deduplicated.
    """

    name: str
    index: int
    domain: tuple[int, ...]
    auxiliary: bool = False

    def __repr__(self) -> str:  # pragma: no cover - debug aid
        lo, hi = self.domain[0], self.domain[-1]
        return f"Var({self.name!r}, [{lo}..{hi}]/{len(self.domain)})"


@dataclass(frozen=True)
class Condition:
    """Truth-valued expression over variables, used unposted.

    ``kind`` is ``"compare"`` (``left op rhs``) or ``"element"``
    (``values[index] op rhs``); ``rhs`` is an int or a Var.
    """

    kind: str
    op: str
    left: Var | None = None
    values: tuple[int, ...] = ()
    index: Var | None = None
    rhs: Union[int, "Var"] = 0

    def negated(self) -> "Condition":
        return Condition(
            kind=self.kind,
            op=negate_op(self.op),
            left=self.left,
            values=self.values,
            index=self.index,
            rhs=self.rhs,
        )


def compares(left: Var, op: str, rhs: int | Var) -> Condition:
    """Condition ``left op rhs``."""
    _check_op(op)
    return Condition(kind="compare", op=op, left=left, rhs=rhs)


def element_hits(values: Sequence[int], index: Var, op: str, rhs: int | Var) -> Condition:
    """Condition ``values[index] op rhs``; false when index is out of range."""
    _check_op(op)
    if not values:
        raise ModelError("element condition over an empty value list")
    return Condition(kind="element", op=op, values=tuple(int(v) for v in values), index=index, rhs=rhs)


@dataclass(frozen=True)
class SumTerm:
    """One addend of a weighted sum: ``weight * var`` or ``weight * |var - anchor|``."""

    weight: int
    var: Var
    anchor: int | None = None

    def value(self, assigned: int) -> int:
        if self.anchor is None:
            return self.weight * assigned
        return self.weight * abs(assigned - self.anchor)


def linear(weight: int, var: Var) -> SumTerm:
    return SumTerm(weight=int(weight), var=var)


def distance(weight: int, var: Var, anchor: int) -> SumTerm:
    return SumTerm(weight=int(weight), var=var, anchor=int(anchor))


# Posted constraint records.  Kept in high-level form so tests can evaluate
# them directly against full assignments, independent of the search kernels.


@dataclass(frozen=True)
class ElementConstraint:
    values: tuple[int, ...]
    index: Var
    op: str
    rhs: Union[int, Var]


@dataclass(frozen=True)
class CompareConstraint:
    left: Var
    op: str
    rhs: Union[int, Var]


@dataclass(frozen=True)
class ReifiedConstraint:
    """``truth = 1`` exactly when ``condition`` holds."""

    truth: Var
    condition: Condition


@dataclass(frozen=True)
class SumConstraint:
    terms: tuple[SumTerm, ...]
    total: Var


@dataclass(frozen=True)
class MemberConstraint:
    """``var`` restricted to an explicit value set (possibly empty)."""

    var: Var
    allowed: tuple[int, ...]


Constraint = Union[
    ElementConstraint, CompareConstraint, ReifiedConstraint, SumConstraint, MemberConstraint
]


@dataclass(frozen=True)
class Solution:
    """One satisfying assignment over the decision variables."""

    assignment: dict[str, int]
    objective_value: int | None = None

    def __getitem__(self, name: str) -> int:
        return self.assignment[name]


def _check_op(op: str) -> None:
    if op not in OPERATORS:
        raise ModelError(f"unknown operator {op!r}; expected one of {OPERATORS}")


def _as_domain(lo, hi, values) -> tuple[int, ...]:
    if values is not None:
        if lo is not None or hi is not None:
            raise ModelError("pass either bounds or values, not both")
        dom = tuple(sorted({int(v) for v in values}))
    else:
        if lo is None or hi is None:
            raise ModelError("a variable needs bounds lo..hi or an explicit value list")
        dom = tuple(range(int(lo), int(hi) + 1))
    if not dom:
        raise EmptyDomainError("variable domain is empty")
    return dom


class Problem:
    """A finite-domain constraint problem under construction.

    Single-threaded during construction and solving; independent problems
    may be built and solved concurrently.
    """

    def __init__(self) -> None:
        self._vars: list[Var] = []
        self._by_name: dict[str, Var] = {}
        self._constraints: list[Constraint] = []
        self._objective: Var | None = None
        self._aux_count = 0

    # -- construction ----------------------------------------------------

    def add_variable(
        self,
        name: str,
        lo: int | None = None,
        hi: int | None = None,
        *,
        values: Iterable[int] | None = None,
    ) -> Var:
        """Register a decision variable over ``lo..hi`` or an explicit value list."""
        if name in self._by_name:
            raise DuplicateIdError(f"variable {name!r} already registered")
        var = Var(name=name, index=len(self._vars), domain=_as_domain(lo, hi, values))
        self._vars.append(var)
        self._by_name[name] = var
        return var

    def _add_aux(self, lo: int, hi: int) -> Var:
        name = f"_aux{self._aux_count}"
        self._aux_count += 1
        var = Var(name=name, index=len(self._vars), domain=tuple(range(lo, hi + 1)), auxiliary=True)
        self._vars.append(var)
        self._by_name[name] = var
        return var

    def _own(self, var: Var) -> None:
        if not isinstance(var, Var):
            raise ModelError(f"expected a variable, got {var!r}")
        if var.index >= len(self._vars) or self._vars[var.index] is not var:
            raise UnknownVariableError(f"variable {var.name!r} is not registered in this problem")

    def _own_rhs(self, rhs: int | Var) -> int | Var:
        if isinstance(rhs, Var):
            self._own(rhs)
            return rhs
        return int(rhs)

    def post_element(self, values: Sequence[int], index: Var, op: str, rhs: int | Var) -> None:
        """Require ``values[index] op rhs``.

        The index domain is narrowed to ``0..len(values)-1``; an index domain
        with no surviving value shows up as an unsatisfiable problem, not an
        error.
        """
        _check_op(op)
        self._own(index)
        if not values:
            raise ModelError("element constraint over an empty value list")
        self._constraints.append(
            ElementConstraint(tuple(int(v) for v in values), index, op, self._own_rhs(rhs))
        )

    def post_compare(self, left: Var, op: str, rhs: int | Var) -> None:
        """Require ``left op rhs`` with standard integer comparison semantics."""
        _check_op(op)
        self._own(left)
        self._constraints.append(CompareConstraint(left, op, self._own_rhs(rhs)))

    def post_member(self, var: Var, allowed: Iterable[int]) -> None:
        """Restrict ``var`` to an explicit value set.

        An empty set is allowed and makes the problem unsatisfiable, which is
        how index-domain pre-filtering expresses "no candidate survives".
        """
        self._own(var)
        self._constraints.append(MemberConstraint(var, tuple(sorted({int(v) for v in allowed}))))

    def reify(self, condition: Condition) -> Var:
        """Return a fresh 0/1 truth variable tied to ``condition``."""
        self._check_condition(condition)
        truth = self._add_aux(0, 1)
        self._constraints.append(ReifiedConstraint(truth, condition))
        return truth

    def post_equivalence(self, p: Condition, q: Condition) -> None:
        """Require truth(p) == truth(q), via two reified truth variables."""
        bp = self.reify(p)
        bq = self.reify(q)
        self._constraints.append(CompareConstraint(bp, "=", bq))

    def post_sum(self, terms: Sequence[SumTerm], total: Var) -> None:
        """Require ``total = sum(term values)``.  Weights must be >= 0."""
        self._own(total)
        terms = tuple(terms)
        for t in terms:
            self._own(t.var)
            if t.weight < 0:
                raise ModelError("sum term weights must be non-negative")
        self._constraints.append(SumConstraint(terms, total))

    def set_minimize(self, objective: Var) -> None:
        """Declare the variable minimized by solve_optimal.  At most one."""
        self._own(objective)
        if self._objective is not None:
            raise DuplicateObjectiveError("objective already set")
        self._objective = objective

    def _check_condition(self, condition: Condition) -> None:
        if not isinstance(condition, Condition):
            raise ModelError(f"expected a Condition, got {condition!r}")
        if condition.kind == "compare":
            self._own(condition.left)
        else:
            self._own(condition.index)
        if isinstance(condition.rhs, Var):
            self._own(condition.rhs)

    # -- inspection -------------------------------------------------------

    @property
    def variables(self) -> tuple[Var, ...]:
        return tuple(self._vars)

    @property
    def decision_variables(self) -> tuple[Var, ...]:
        return tuple(v for v in self._vars if not v.auxiliary)

    @property
    def constraints(self) -> tuple[Constraint, ...]:
        return tuple(self._constraints)

    @property
    def objective(self) -> Var | None:
        return self._objective

    def num_variables(self) -> int:
        return sum(1 for v in self._vars if not v.auxiliary)

    def num_constraints(self) -> int:
        return len(self._constraints)

    # -- solving ----------------------------------------------------------

    def solve_all(self, backend: str | None = None) -> list[Solution]:
        """Enumerate every satisfying assignment.

        Solutions are ordered lexicographically by variable registration
        order with ascending values.  An unsatisfiable problem yields an
        empty list.
        """
        from . import engine

        if not any(not v.auxiliary for v in self._vars):
            raise ModelError("cannot solve a problem with no variables")
        return engine.solve(self, backend=backend)

    def solve_optimal(self, backend: str | None = None) -> list[Solution]:
        """Enumerate all solutions, sorted ascending by the objective value.

        Ties keep the solve_all order, so callers can inspect every
        equally-optimal assignment.
        """
        if self._objective is None:
            raise NoObjectiveError("set_minimize was never called")
        solutions = self.solve_all(backend=backend)
        solutions.sort(key=lambda s: s.objective_value)
        return solutions


def new_problem() -> Problem:
    """Fresh problem with no variables, constraints, or objective."""
    return Problem()


def extend_with_auxiliaries(problem: Problem, assignment: dict[str, int]) -> dict[str, int]:
    """Assignment over decision variables, extended with derived truth values.

    Reified truth variables are functionally determined by their conditions,
    which reference decision variables only; deriving them lets posted
    constraints over truth variables be evaluated directly.
    """
    full = dict(assignment)
    for constraint in problem.constraints:
        if isinstance(constraint, ReifiedConstraint):
            full[constraint.truth.name] = int(evaluate_condition(constraint.condition, full))
    return full


def check_assignment(problem: Problem, assignment: dict[str, int]) -> bool:
    """Whether a full decision assignment satisfies every posted constraint.

    Direct evaluation with no search involved; this is the basis for the
    brute-force oracles in the test suite.
    """
    full = extend_with_auxiliaries(problem, assignment)
    return all(evaluate_constraint(c, full) for c in problem.constraints)


def evaluate_constraint(constraint: Constraint, assignment: dict[str, int]) -> bool:
    """Direct truth evaluation of one posted constraint under a full assignment.

    The assignment must cover every variable the constraint mentions
    (see :func:`extend_with_auxiliaries` for deriving truth variables).
    """
    values = _DerivedView(assignment)
    if isinstance(constraint, ElementConstraint):
        k = values[constraint.index]
        if not 0 <= k < len(constraint.values):
            return False
        return eval_op(constraint.values[k], constraint.op, values.resolve(constraint.rhs))
    if isinstance(constraint, CompareConstraint):
        return eval_op(values[constraint.left], constraint.op, values.resolve(constraint.rhs))
    if isinstance(constraint, ReifiedConstraint):
        return values[constraint.truth] == int(evaluate_condition(constraint.condition, assignment))
    if isinstance(constraint, SumConstraint):
        total = sum(t.value(values[t.var]) for t in constraint.terms)
        return values[constraint.total] == total
    if isinstance(constraint, MemberConstraint):
        return values[constraint.var] in constraint.allowed
    raise ModelError(f"unknown constraint {constraint!r}")


def evaluate_condition(condition: Condition, assignment: dict[str, int]) -> bool:
    values = _DerivedView(assignment)
    rhs = values.resolve(condition.rhs)
    if condition.kind == "compare":
        return eval_op(values[condition.left], condition.op, rhs)
    k = values[condition.index]
    if not 0 <= k < len(condition.values):
        return False
    return eval_op(condition.values[k], condition.op, rhs)


class _DerivedView:
    """Assignment lookup that understands Var handles."""

    def __init__(self, assignment: dict[str, int]):
        self._assignment = assignment

    def __getitem__(self, var: Var) -> int:
        return self._assignment[var.name]

    def resolve(self, rhs: int | Var) -> int:
        return self._assignment[rhs.name] if isinstance(rhs, Var) else rhs
