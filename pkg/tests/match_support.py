"""Random catalog and request documents for matcher equivalence tests.

Generators emit document dicts and push them through the public loaders,
so every generated instance also exercises validation and scaling.
"""

from __future__ import annotations

import json
import random

import csmatch.catalog as cat

_LABEL_POOL = ["alpha", "beta", "gamma", "delta", "epsilon", "zeta"]


def random_catalog_doc(
    rng: random.Random, max_services: int = 50, max_props: int = 8
) -> dict:
    n_props = rng.randint(1, max_props)
    schema = []
    for i in range(n_props):
        kind = rng.choice(["discrete", "interval", "enumeration", "feature_list"])
        if kind == "discrete":
            tendency = rng.choice(["neutral", "requester_defined"])
        elif kind == "interval":
            tendency = rng.choice(["low", "high", "requester_defined"])
        else:
            tendency = "neutral"
        entry = {
            "id": f"p{i}",
            "display_name": f"Property {i}",
            "kind": kind,
            "tendency": tendency,
            "unit": "",
            "scale": rng.choice([1, 1, 10, 100]) if kind in ("discrete", "interval") else 1,
        }
        if kind in ("enumeration", "feature_list"):
            entry["enum_values"] = _LABEL_POOL[: rng.randint(2, len(_LABEL_POOL))]
        schema.append(entry)

    services = []
    for sid in range(rng.randint(1, max_services)):
        specs = {}
        for entry in schema:
            if rng.random() < 0.15:
                if rng.random() < 0.5:
                    specs[entry["id"]] = None  # explicit null; otherwise omit the key
                continue
            if entry["kind"] == "feature_list":
                labels = [l for l in entry["enum_values"] if rng.random() < 0.5]
                specs[entry["id"]] = labels
            elif entry["kind"] == "enumeration":
                specs[entry["id"]] = rng.randrange(len(entry["enum_values"]))
            else:
                scaled = rng.randint(-50, 120)
                specs[entry["id"]] = _document_value(scaled, entry["scale"])
        services.append({"id": sid, "name": f"svc-{sid}", "specs": specs})
    return {"schema": schema, "services": services}


def _document_value(scaled: int, scale: int) -> float | int:
    if scale == 1:
        return scaled
    value = scaled / scale
    return int(value) if value == int(value) else value


def random_request_doc(rng: random.Random, catalog_doc: dict) -> dict:
    objective = rng.choice(["boolean", "difference"])
    constraints = []
    props = catalog_doc["schema"]
    chosen = [p for p in props if rng.random() < 0.6] or [rng.choice(props)]
    for entry in chosen:
        kind = entry["kind"]
        if kind == "feature_list":
            labels = [l for l in entry["enum_values"] if rng.random() < 0.5]
            if not labels:
                labels = [rng.choice(entry["enum_values"])]
            constraints.append(
                {
                    "property": entry["id"],
                    "operator": "eq",
                    "value": labels,
                    "mode": "hard",
                }
            )
            continue
        mode = rng.choice(["hard", "soft"])
        if mode == "soft" and objective == "difference" and kind != "discrete":
            mode = "hard"
        constraint: dict = {"property": entry["id"], "mode": mode}
        if mode == "soft":
            constraint["weight"] = rng.randint(1, 5)
        if entry["tendency"] == "requester_defined":
            direction = rng.choice(["low", "high"])
            constraint["direction"] = direction
            constraint["operator"] = "gte" if direction == "high" else "lte"
        elif kind in ("discrete", "enumeration"):
            constraint["operator"] = "eq"
        else:
            constraint["operator"] = "lte" if entry["tendency"] == "low" else "gte"
        if kind == "enumeration":
            constraint["value"] = rng.randrange(len(entry["enum_values"]))
        else:
            # mix exact column hits with near misses
            column = [
                svc["specs"].get(entry["id"])
                for svc in catalog_doc["services"]
                if isinstance(svc["specs"].get(entry["id"]), (int, float))
            ]
            if column and rng.random() < 0.5:
                constraint["value"] = rng.choice(column)
            else:
                constraint["value"] = _document_value(rng.randint(-50, 120), entry["scale"])
        constraints.append(constraint)
    return {"constraints": constraints, "objective": objective}


def random_instance(rng: random.Random, max_services: int = 50, max_props: int = 8):
    catalog_doc = random_catalog_doc(rng, max_services, max_props)
    request_doc = random_request_doc(rng, catalog_doc)
    catalog = cat.load_catalog(json.dumps(catalog_doc))
    request = cat.load_request(json.dumps(request_doc), catalog)
    return catalog, request
