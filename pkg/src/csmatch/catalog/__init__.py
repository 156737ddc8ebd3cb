"""Property schema, service descriptions, and request handling."""

from .errors import ParseError, ValidationError
from .io import (
    catalog_to_document,
    load_catalog,
    load_request,
    request_to_document,
    save_catalog,
)
from .scaling import scale_value, unscale_value
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
    effective_operator,
)

__all__ = [
    "ALLOWED_TENDENCIES",
    "Catalog",
    "Direction",
    "Kind",
    "Mode",
    "ObjectiveMode",
    "ParseError",
    "PropertySchema",
    "RequestConstraint",
    "ServiceDescription",
    "ServiceRequest",
    "Tendency",
    "ValidationError",
    "catalog_to_document",
    "effective_operator",
    "load_catalog",
    "load_request",
    "request_to_document",
    "save_catalog",
    "scale_value",
    "unscale_value",
]
