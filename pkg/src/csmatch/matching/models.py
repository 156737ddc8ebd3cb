"""Constraint models over a catalog and request.

Three builders share one skeleton: a service-index variable over the
catalog, pre-filtered to services that specify every hard-constrained
scalar, plus one element constraint per hard scalar.

* hard model: nothing else; solutions are the feasible service indices.
* boolean-soft model: each soft constraint contributes
  ``weight * (1 - satisfied)`` to a violation-sum variable through a
  reified, negated element condition; missing specs enter the value column
  as an operator-violating sentinel so they charge the full weight.
* difference-soft model: one variable per soft property whose domain is
  the property's value column, channeled to the service index (index = x
  implies property = column[x], as reified implications); the objective
  sums ``weight * |property - requested|``.  A missing spec binds to the
  sentinel ``requested + (column max - column min)``, charging the column
  spread.

The difference builder can normalize each property's distance to 0..1000
(half-up, against the worst per-service distance); the objective then runs
through per-property distance variables since the transform is
per-service.
"""

from __future__ import annotations

from dataclasses import dataclass

from .. import fd
from ..catalog import (
    Catalog,
    Kind,
    Mode,
    ObjectiveMode,
    RequestConstraint,
    ServiceRequest,
    effective_operator,
)

INDEX_VAR = "serviceIndex"
VIOLATION_VAR = "violationSum"


@dataclass(frozen=True)
class BuiltModel:
    problem: fd.Problem
    index: fd.Var
    covered: frozenset[int]  # services the index variable may take


def split_constraints(
    catalog: Catalog, request: ServiceRequest
) -> tuple[list[RequestConstraint], list[RequestConstraint], list[RequestConstraint]]:
    """(hard scalars, soft scalars, feature lists) in request order."""
    hard: list[RequestConstraint] = []
    soft: list[RequestConstraint] = []
    features: list[RequestConstraint] = []
    for c in request.constraints:
        if catalog.property_schema(c.property_id).kind is Kind.FEATURE_LIST:
            features.append(c)
        elif c.mode is Mode.HARD:
            hard.append(c)
        else:
            soft.append(c)
    return hard, soft, features


def eligible_services(catalog: Catalog, hard: list[RequestConstraint]) -> list[int]:
    """Service ids specifying every hard-constrained scalar property."""
    out = []
    for svc in catalog.services:
        if all(svc.spec(c.property_id) is not None for c in hard):
            out.append(svc.service_id)
    return out


def _violating_value(operator: str, value: int) -> int:
    """An integer that fails ``x operator value``; stands in for missing."""
    if operator == ">=":
        return value - 1
    return value + 1  # fails both "=" and "<="


def _base_model(catalog: Catalog, hard: list[RequestConstraint]) -> BuiltModel:
    n = len(catalog.services)
    if n == 0:
        raise ValueError("cannot build a model over an empty catalog")
    problem = fd.new_problem()
    index = problem.add_variable(INDEX_VAR, 0, n - 1)
    eligible = eligible_services(catalog, hard)
    problem.post_member(index, eligible)
    for c in hard:
        prop = catalog.property_schema(c.property_id)
        operator = effective_operator(prop, c)
        column = [
            v if v is not None else _violating_value(operator, c.value)
            for v in catalog.column(c.property_id)
        ]
        problem.post_element(column, index, operator, c.value)
    return BuiltModel(problem=problem, index=index, covered=frozenset(eligible))


def build_model_hard(catalog: Catalog, request: ServiceRequest) -> BuiltModel:
    """Matrix model for the hard scalar constraints."""
    hard, _, _ = split_constraints(catalog, request)
    return _base_model(catalog, hard)


def build_model_soft_boolean(catalog: Catalog, request: ServiceRequest) -> BuiltModel:
    """Hard skeleton plus a minimized weighted count of violated softs."""
    hard, soft, _ = split_constraints(catalog, request)
    built = _base_model(catalog, hard)
    problem, index = built.problem, built.index
    terms = []
    max_total = 0
    for c in soft:
        prop = catalog.property_schema(c.property_id)
        operator = effective_operator(prop, c)
        column = [
            v if v is not None else _violating_value(operator, c.value)
            for v in catalog.column(c.property_id)
        ]
        unsatisfied = problem.reify(fd.element_hits(column, index, operator, c.value).negated())
        terms.append(fd.linear(c.weight, unsatisfied))
        max_total += c.weight
    violation = problem.add_variable(VIOLATION_VAR, 0, max_total)
    problem.post_sum(terms, violation)
    problem.set_minimize(violation)
    return built


def build_model_soft_difference(catalog: Catalog, request: ServiceRequest) -> BuiltModel:
    """Per-property variables channeled to the index; minimize distances."""
    hard, soft, _ = split_constraints(catalog, request)
    built = _base_model(catalog, hard)
    problem, index = built.problem, built.index

    index_truth: dict[int, fd.Var] = {}

    def index_is(x: int) -> fd.Var:
        if x not in index_truth:
            index_truth[x] = problem.reify(fd.compares(index, "=", x))
        return index_truth[x]

    def channel(var: fd.Var, per_service: list[int]) -> None:
        value_truth: dict[int, fd.Var] = {}
        for x, v in enumerate(per_service):
            if v not in value_truth:
                value_truth[v] = problem.reify(fd.compares(var, "=", v))
            problem.post_compare(index_is(x), "<=", value_truth[v])

    terms = []
    max_total = 0
    for c in soft:
        column = catalog.column(c.property_id)
        known = [v for v in column if v is not None]
        spread = max(known) - min(known) if known else 0
        sentinel = c.value + spread
        per_service = [v if v is not None else sentinel for v in column]
        prop_var = problem.add_variable(
            f"property_{c.property_id}", values=sorted(set(per_service))
        )
        channel(prop_var, per_service)
        if request.normalize:
            distances = [abs(v - c.value) if v is not None else spread for v in column]
            worst = max(distances)
            normalized = [_normalized_distance(d, worst) for d in distances]
            dist_var = problem.add_variable(
                f"distance_{c.property_id}", values=sorted(set(normalized))
            )
            channel(dist_var, normalized)
            terms.append(fd.linear(c.weight, dist_var))
            max_total += c.weight * max(normalized)
        else:
            terms.append(fd.distance(c.weight, prop_var, c.value))
            max_total += c.weight * max(abs(v - c.value) for v in per_service)
    violation = problem.add_variable(VIOLATION_VAR, 0, max_total)
    problem.post_sum(terms, violation)
    problem.set_minimize(violation)
    return built


def _normalized_distance(d: int, worst: int) -> int:
    """Distance scaled to 0..1000 against the worst service, half-up."""
    if worst == 0:
        return 0
    return (2000 * d + worst) // (2 * worst)


def build_objective_model(catalog: Catalog, request: ServiceRequest) -> BuiltModel:
    if request.objective_mode is ObjectiveMode.DIFFERENCE:
        return build_model_soft_difference(catalog, request)
    return build_model_soft_boolean(catalog, request)
