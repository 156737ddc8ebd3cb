"""Catalog domain types: property schema, service descriptions, requests.

All types are immutable after load; sharing across threads is safe.
Spec values are already scaled integers; a value of ``None`` means the
provider supplied nothing for that property.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Mapping, Union


class Kind(enum.Enum):
    DISCRETE = "discrete"
    INTERVAL = "interval"
    ENUMERATION = "enumeration"
    FEATURE_LIST = "feature_list"


class Tendency(enum.Enum):
    LOW = "low"
    HIGH = "high"
    NEUTRAL = "neutral"
    REQUESTER_DEFINED = "requester_defined"


class Mode(enum.Enum):
    HARD = "hard"
    SOFT = "soft"


class Direction(enum.Enum):
    LOW = "low"
    HIGH = "high"


class ObjectiveMode(enum.Enum):
    BOOLEAN = "boolean"
    DIFFERENCE = "difference"


# Which tendencies each kind of property may declare.
ALLOWED_TENDENCIES: dict[Kind, tuple[Tendency, ...]] = {
    Kind.DISCRETE: (Tendency.NEUTRAL, Tendency.REQUESTER_DEFINED),
    Kind.INTERVAL: (Tendency.LOW, Tendency.HIGH, Tendency.REQUESTER_DEFINED),
    Kind.ENUMERATION: (Tendency.NEUTRAL,),
    Kind.FEATURE_LIST: (Tendency.NEUTRAL,),
}

SpecValue = Union[int, frozenset, None]


@dataclass(frozen=True)
class PropertySchema:
    property_id: str
    display_name: str
    kind: Kind
    tendency: Tendency
    unit: str
    scale: int
    enum_values: tuple[str, ...] | None = None

    def code_of(self, label: str) -> int:
        """Stable enum code: position in enum_values."""
        return self.enum_values.index(label)

    def label_of(self, code: int) -> str:
        return self.enum_values[code]


@dataclass(frozen=True)
class ServiceDescription:
    service_id: int
    name: str
    specs: Mapping[str, SpecValue]

    def __post_init__(self):
        object.__setattr__(self, "specs", MappingProxyType(dict(self.specs)))

    def spec(self, property_id: str) -> SpecValue:
        return self.specs.get(property_id)


@dataclass(frozen=True)
class RequestConstraint:
    property_id: str
    operator: str  # "=", "<=", ">="
    value: int | frozenset
    mode: Mode
    weight: int | None = None
    direction: Direction | None = None


@dataclass(frozen=True)
class ServiceRequest:
    constraints: tuple[RequestConstraint, ...]
    objective_mode: ObjectiveMode
    # range-normalized difference violations; CLI-level option, not part of
    # the document format
    normalize: bool = False

    def constraint_for(self, property_id: str) -> RequestConstraint | None:
        for c in self.constraints:
            if c.property_id == property_id:
                return c
        return None


@dataclass(frozen=True)
class Catalog:
    schema: tuple[PropertySchema, ...]
    services: tuple[ServiceDescription, ...]
    _by_id: Mapping[str, PropertySchema] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(
            self, "_by_id", MappingProxyType({p.property_id: p for p in self.schema})
        )

    def property_schema(self, property_id: str) -> PropertySchema:
        return self._by_id[property_id]

    def has_property(self, property_id: str) -> bool:
        return property_id in self._by_id

    def column(self, property_id: str) -> list[SpecValue]:
        """Per-service spec values for one property, indexed by service id."""
        return [svc.spec(property_id) for svc in self.services]

    def known_column(self, property_id: str) -> list[int]:
        """Scalar column with missing entries dropped."""
        return [v for v in self.column(property_id) if isinstance(v, int)]


def effective_operator(prop: PropertySchema, constraint: RequestConstraint) -> str:
    """Operator actually used for matching a scalar property.

    Requester-defined properties follow the requested direction; discrete
    values and enumerations match exactly; interval properties guarantee a
    bound on their preferred side, so only that side is compared.
    """
    if prop.kind is Kind.FEATURE_LIST:
        raise ValueError("feature lists are matched by set intersection, not an operator")
    if prop.tendency is Tendency.REQUESTER_DEFINED:
        return ">=" if constraint.direction is Direction.HIGH else "<="
    if prop.kind in (Kind.DISCRETE, Kind.ENUMERATION):
        return "="
    return "<=" if prop.tendency is Tendency.LOW else ">="
