"""Loading, validating, and saving catalog and request documents.

Documents are UTF-8 JSON.  Validation is exhaustive: every violation is
collected with the path to the offending element before anything raises,
so callers can list all problems at once.
"""

from __future__ import annotations

import json
from typing import Any

from .errors import ParseError, ValidationError
from .scaling import is_power_of_ten, scale_value, unscale_value
from .schema import (
    ALLOWED_TENDENCIES,
    Catalog,
    Direction,
    Kind,
    Mode,
    ObjectiveMode,
    PropertySchema,
    RequestConstraint,
    ServiceDescription,
    ServiceRequest,
    Tendency,
)

_KINDS = {k.value: k for k in Kind}
_TENDENCIES = {t.value: t for t in Tendency}
_OPERATORS = {"eq": "=", "lte": "<=", "gte": ">="}
_OPERATOR_NAMES = {v: k for k, v in _OPERATORS.items()}


class _Issues:
    def __init__(self) -> None:
        self.items: list[tuple[str, str]] = []

    def add(self, path: str, message: str) -> None:
        self.items.append((path, message))

    def raise_if_any(self) -> None:
        if self.items:
            raise ValidationError(self.items)

    def check_fields(self, entry: dict, path: str, allowed: frozenset[str]) -> None:
        """Flag unknown keys; field names are exact, so typos must not pass."""
        for key in entry:
            if key not in allowed:
                self.add(f"{path}.{key}", f"unknown field {key!r}")


def _parse_json(source: bytes | str | Any) -> Any:
    if hasattr(source, "read"):
        source = source.read()
    if isinstance(source, bytes):
        try:
            source = source.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError(f"document is not valid UTF-8: {exc}") from exc
    try:
        return json.loads(source)
    except json.JSONDecodeError as exc:
        raise ParseError(f"document is not valid JSON: {exc}") from exc


def _is_number(value: Any) -> bool:
    return isinstance(value, (int, float)) and not isinstance(value, bool)


# -- catalog ---------------------------------------------------------------


def load_catalog(source: bytes | str | Any) -> Catalog:
    """Parse, validate, and scale a catalog document."""
    doc = _parse_json(source)
    if not isinstance(doc, dict):
        raise ParseError("catalog document must be a JSON object")
    issues = _Issues()
    issues.check_fields(doc, "catalog", frozenset({"schema", "services"}))
    schema = _load_schema(doc.get("schema"), issues)
    issues.raise_if_any()
    services = _load_services(doc.get("services"), schema, issues)
    issues.raise_if_any()
    return Catalog(schema=tuple(schema), services=tuple(services))


def _load_schema(raw: Any, issues: _Issues) -> list[PropertySchema]:
    if not isinstance(raw, list):
        issues.add("schema", "missing or not an array")
        return []
    out: list[PropertySchema] = []
    seen: set[str] = set()
    for i, entry in enumerate(raw):
        path = f"schema[{i}]"
        if not isinstance(entry, dict):
            issues.add(path, "property entry must be an object")
            continue
        issues.check_fields(
            entry,
            path,
            frozenset({"id", "display_name", "kind", "tendency", "unit", "scale", "enum_values"}),
        )
        pid = entry.get("id")
        if not isinstance(pid, str) or not pid:
            issues.add(f"{path}.id", "missing or empty")
            continue
        if pid in seen:
            issues.add(f"{path}.id", f"duplicate property id {pid!r}")
            continue
        seen.add(pid)
        ok = True
        display = entry.get("display_name")
        if not isinstance(display, str):
            issues.add(f"{path}.display_name", "missing or not a string")
            ok = False
        kind = _KINDS.get(entry.get("kind"))
        if kind is None:
            issues.add(f"{path}.kind", f"must be one of {sorted(_KINDS)}")
            ok = False
        tendency = _TENDENCIES.get(entry.get("tendency"))
        if tendency is None:
            issues.add(f"{path}.tendency", f"must be one of {sorted(_TENDENCIES)}")
            ok = False
        unit = entry.get("unit")
        if not isinstance(unit, str):
            issues.add(f"{path}.unit", "missing or not a string")
            ok = False
        scale = entry.get("scale")
        if not isinstance(scale, int) or isinstance(scale, bool) or not is_power_of_ten(scale):
            issues.add(f"{path}.scale", "must be a positive integer power of ten")
            ok = False
        if kind is not None and tendency is not None and tendency not in ALLOWED_TENDENCIES[kind]:
            allowed = ", ".join(t.value for t in ALLOWED_TENDENCIES[kind])
            issues.add(f"{path}.tendency", f"{kind.value} properties allow only: {allowed}")
            ok = False
        enum_values = entry.get("enum_values")
        needs_enum = kind in (Kind.ENUMERATION, Kind.FEATURE_LIST)
        if needs_enum:
            if (
                not isinstance(enum_values, list)
                or not enum_values
                or not all(isinstance(v, str) for v in enum_values)
            ):
                issues.add(f"{path}.enum_values", "must be a non-empty array of strings")
                ok = False
            elif len(set(enum_values)) != len(enum_values):
                issues.add(f"{path}.enum_values", "labels must be unique")
                ok = False
        elif enum_values is not None:
            issues.add(f"{path}.enum_values", f"not allowed for kind {entry.get('kind')!r}")
            ok = False
        if ok:
            out.append(
                PropertySchema(
                    property_id=pid,
                    display_name=display,
                    kind=kind,
                    tendency=tendency,
                    unit=unit,
                    scale=scale,
                    enum_values=tuple(enum_values) if needs_enum else None,
                )
            )
    return out


def _load_services(
    raw: Any, schema: list[PropertySchema], issues: _Issues
) -> list[ServiceDescription]:
    if not isinstance(raw, list):
        issues.add("services", "missing or not an array")
        return []
    by_id = {p.property_id: p for p in schema}
    out: list[ServiceDescription] = []
    for i, entry in enumerate(raw):
        path = f"services[{i}]"
        if not isinstance(entry, dict):
            issues.add(path, "service entry must be an object")
            continue
        issues.check_fields(entry, path, frozenset({"id", "name", "specs"}))
        sid = entry.get("id")
        if not isinstance(sid, int) or isinstance(sid, bool) or sid != i:
            issues.add(f"{path}.id", f"service ids must be dense 0..n-1; expected {i}")
        name = entry.get("name")
        if not isinstance(name, str) or not name:
            issues.add(f"{path}.name", "missing or empty")
            name = f"service-{i}"
        raw_specs = entry.get("specs")
        if not isinstance(raw_specs, dict):
            issues.add(f"{path}.specs", "missing or not an object")
            raw_specs = {}
        specs: dict[str, Any] = {}
        for pid, value in raw_specs.items():
            spath = f"{path}.specs.{pid}"
            prop = by_id.get(pid)
            if prop is None:
                issues.add(spath, f"unknown property {pid!r}")
                continue
            specs[pid] = _load_spec_value(prop, value, spath, issues)
        out.append(ServiceDescription(service_id=i, name=name, specs=specs))
    return out


def _load_spec_value(prop: PropertySchema, value: Any, path: str, issues: _Issues):
    if value is None:
        return None
    if prop.kind is Kind.FEATURE_LIST:
        if not isinstance(value, list) or not all(isinstance(v, str) for v in value):
            issues.add(path, "feature list specs must be an array of strings or null")
            return None
        codes = set()
        for label in value:
            if label not in prop.enum_values:
                issues.add(path, f"unknown feature label {label!r}")
            else:
                codes.add(prop.code_of(label))
        return frozenset(codes)
    if prop.kind is Kind.ENUMERATION:
        if not isinstance(value, int) or isinstance(value, bool):
            issues.add(path, "enumeration specs must be an integer code")
            return None
        if not 0 <= value < len(prop.enum_values):
            issues.add(path, f"enumeration code {value} out of range 0..{len(prop.enum_values) - 1}")
            return None
        return value
    if not _is_number(value):
        issues.add(path, "must be a number or null")
        return None
    return scale_value(value, prop.scale)


def save_catalog(catalog: Catalog) -> bytes:
    """Serialize back to the document form; load(save(c)) equals c."""
    return json.dumps(catalog_to_document(catalog), indent=2, ensure_ascii=False).encode("utf-8")


def catalog_to_document(catalog: Catalog) -> dict:
    schema = []
    for p in catalog.schema:
        entry: dict[str, Any] = {
            "id": p.property_id,
            "display_name": p.display_name,
            "kind": p.kind.value,
            "tendency": p.tendency.value,
            "unit": p.unit,
            "scale": p.scale,
        }
        if p.enum_values is not None:
            entry["enum_values"] = list(p.enum_values)
        schema.append(entry)
    services = []
    for svc in catalog.services:
        specs: dict[str, Any] = {}
        for pid, value in svc.specs.items():
            prop = catalog.property_schema(pid)
            if value is None:
                specs[pid] = None
            elif prop.kind is Kind.FEATURE_LIST:
                specs[pid] = [prop.label_of(c) for c in sorted(value)]
            elif prop.kind is Kind.ENUMERATION:
                specs[pid] = value
            else:
                specs[pid] = unscale_value(value, prop.scale)
        services.append({"id": svc.service_id, "name": svc.name, "specs": specs})
    return {"schema": schema, "services": services}


# -- requests ---------------------------------------------------------------


def load_request(source: bytes | str | Any, catalog: Catalog) -> ServiceRequest:
    """Parse, validate, and scale a request document against a catalog."""
    doc = _parse_json(source)
    if not isinstance(doc, dict):
        raise ParseError("request document must be a JSON object")
    issues = _Issues()
    issues.check_fields(doc, "request", frozenset({"constraints", "objective"}))

    objective = doc.get("objective")
    mode_map = {m.value: m for m in ObjectiveMode}
    objective_mode = mode_map.get(objective)
    if objective_mode is None:
        issues.add("objective", f"must be one of {sorted(mode_map)}")
        objective_mode = ObjectiveMode.BOOLEAN

    raw_constraints = doc.get("constraints")
    if not isinstance(raw_constraints, list) or not raw_constraints:
        issues.add("constraints", "missing or empty; a request needs at least one constraint")
        issues.raise_if_any()

    constraints: list[RequestConstraint] = []
    seen: set[str] = set()
    for i, entry in enumerate(raw_constraints):
        path = f"constraints[{i}]"
        if not isinstance(entry, dict):
            issues.add(path, "constraint must be an object")
            continue
        pid = entry.get("property")
        if not isinstance(pid, str) or not catalog.has_property(pid):
            issues.add(f"{path}.property", f"unknown property {pid!r}")
            continue
        if pid in seen:
            issues.add(f"{path}.property", f"duplicate constraint for {pid!r}")
            continue
        seen.add(pid)
        constraint = _load_constraint(catalog.property_schema(pid), entry, path, issues)
        if constraint is not None:
            constraints.append(constraint)

    if objective_mode is ObjectiveMode.DIFFERENCE:
        for i, c in enumerate(constraints):
            prop = catalog.property_schema(c.property_id)
            if c.mode is Mode.SOFT and prop.kind is not Kind.DISCRETE:
                issues.add(
                    f"constraints[{i}].mode",
                    "difference objective allows soft constraints on discrete properties only",
                )

    issues.raise_if_any()
    return ServiceRequest(constraints=tuple(constraints), objective_mode=objective_mode)


def _load_constraint(
    prop: PropertySchema, entry: dict, path: str, issues: _Issues
) -> RequestConstraint | None:
    ok = True
    issues.check_fields(
        entry, path, frozenset({"property", "operator", "value", "mode", "weight", "direction"})
    )

    mode_raw = entry.get("mode")
    mode = {m.value: m for m in Mode}.get(mode_raw)
    if mode is None:
        issues.add(f"{path}.mode", "must be 'hard' or 'soft'")
        return None

    operator = _OPERATORS.get(entry.get("operator"))
    if operator is None:
        issues.add(f"{path}.operator", "must be one of 'eq', 'lte', 'gte'")
        return None

    weight = entry.get("weight")
    if mode is Mode.HARD:
        if weight is not None:
            issues.add(f"{path}.weight", "weight is only allowed on soft constraints")
            ok = False
        weight = None
    else:
        if weight is None:
            weight = 1
        elif not isinstance(weight, int) or isinstance(weight, bool) or weight < 1:
            issues.add(f"{path}.weight", "must be an integer >= 1")
            ok = False
            weight = 1

    direction_raw = entry.get("direction")
    direction = {d.value: d for d in Direction}.get(direction_raw)
    if prop.tendency is Tendency.REQUESTER_DEFINED:
        if direction is None:
            issues.add(
                f"{path}.direction",
                f"property {prop.property_id!r} needs a direction of 'low' or 'high'",
            )
            ok = False
    elif direction_raw is not None:
        issues.add(f"{path}.direction", "only allowed for requester-defined properties")
        ok = False

    expected = _expected_operators(prop, direction)
    if expected is not None and operator not in expected:
        names = " or ".join(repr(_OPERATOR_NAMES[op]) for op in expected)
        issues.add(
            f"{path}.operator",
            f"{_OPERATOR_NAMES[operator]!r} not allowed on {prop.kind.value} property "
            f"{prop.property_id!r}; use {names}",
        )
        ok = False

    value = _load_constraint_value(prop, entry.get("value"), path, issues, mode)
    if value is None or not ok:
        return None
    return RequestConstraint(
        property_id=prop.property_id,
        operator=operator,
        value=value,
        mode=mode,
        weight=weight,
        direction=direction,
    )


def _expected_operators(prop: PropertySchema, direction: Direction | None) -> tuple[str, ...] | None:
    """Operators a request may carry for this property, or None when unknown.

    Bounds on the side an interval property does not guarantee are redundant
    (a lower limit on a low-preferred property constrains nothing), so they
    are rejected rather than silently dropped.
    """
    if prop.tendency is Tendency.REQUESTER_DEFINED:
        if direction is None:
            return None
        return (">=",) if direction is Direction.HIGH else ("<=",)
    if prop.kind in (Kind.DISCRETE, Kind.ENUMERATION, Kind.FEATURE_LIST):
        return ("=",)
    return ("<=",) if prop.tendency is Tendency.LOW else (">=",)


def _load_constraint_value(
    prop: PropertySchema, value: Any, path: str, issues: _Issues, mode: Mode
):
    vpath = f"{path}.value"
    if prop.kind is Kind.FEATURE_LIST:
        if mode is Mode.SOFT:
            issues.add(f"{path}.mode", "feature list constraints must be hard")
            return None
        if not isinstance(value, list) or not value or not all(isinstance(v, str) for v in value):
            issues.add(vpath, "must be a non-empty array of feature labels")
            return None
        codes = set()
        bad = False
        for label in value:
            if label not in prop.enum_values:
                issues.add(vpath, f"unknown feature label {label!r}")
                bad = True
            else:
                codes.add(prop.code_of(label))
        return None if bad else frozenset(codes)
    if prop.kind is Kind.ENUMERATION:
        if not isinstance(value, int) or isinstance(value, bool):
            issues.add(vpath, "must be an integer enumeration code")
            return None
        if not 0 <= value < len(prop.enum_values):
            issues.add(vpath, f"enumeration code {value} out of range 0..{len(prop.enum_values) - 1}")
            return None
        return value
    if not _is_number(value):
        issues.add(vpath, "must be a number")
        return None
    return scale_value(value, prop.scale)


def request_to_document(request: ServiceRequest, catalog: Catalog) -> dict:
    """Canonical document form of a validated request (for echoing back)."""
    constraints = []
    for c in request.constraints:
        prop = catalog.property_schema(c.property_id)
        entry: dict[str, Any] = {
            "property": c.property_id,
            "operator": _OPERATOR_NAMES[c.operator],
            "mode": c.mode.value,
        }
        if isinstance(c.value, frozenset):
            entry["value"] = [prop.label_of(code) for code in sorted(c.value)]
        elif prop.kind is Kind.ENUMERATION:
            entry["value"] = c.value
        else:
            entry["value"] = unscale_value(c.value, prop.scale)
        if c.weight is not None:
            entry["weight"] = c.weight
        if c.direction is not None:
            entry["direction"] = c.direction.value
        constraints.append(entry)
    return {"constraints": constraints, "objective": request.objective_mode.value}
