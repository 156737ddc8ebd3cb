#!/usr/bin/env python3
"""Compare the compiled and pure-Python search kernels.

Times the three matchmaking workloads (hard, boolean-soft, difference-soft)
at growing catalog sizes plus a batch of random solver instances, and
prints one table.  Run after `pip install -e .`:

    python3 benchmarks/bench_backends.py [--sizes 100,300,1000]
"""

from __future__ import annotations

import argparse
import json
import random
import time

import csmatch.catalog as cat
import csmatch.matching as m
from csmatch import fd
from csmatch.fd import engine


def synthetic_catalog(rng: random.Random, services: int) -> cat.Catalog:
    schema = []
    for i in range(8):
        schema.append(
            {
                "id": f"p{i}",
                "display_name": f"P{i}",
                "kind": "interval" if i % 2 else "discrete",
                "tendency": "low" if i % 2 else "neutral",
                "unit": "",
                "scale": 1,
            }
        )
    schema.append(
        {
            "id": "plan",
            "display_name": "Plan",
            "kind": "enumeration",
            "tendency": "neutral",
            "unit": "",
            "scale": 1,
            "enum_values": ["a", "b", "c"],
        }
    )
    schema.append(
        {
            "id": "features",
            "display_name": "Features",
            "kind": "feature_list",
            "tendency": "neutral",
            "unit": "",
            "scale": 1,
            "enum_values": ["f1", "f2", "f3", "f4", "f5"],
        }
    )
    rows = []
    for sid in range(services):
        specs = {f"p{i}": rng.randint(0, 500) for i in range(8)}
        specs["plan"] = rng.randrange(3)
        specs["features"] = [f for f in ("f1", "f2", "f3", "f4", "f5") if rng.random() < 0.5]
        rows.append({"id": sid, "name": f"svc-{sid}", "specs": specs})
    return cat.load_catalog(json.dumps({"schema": schema, "services": rows}))


def request_hard(rng: random.Random, catalog: cat.Catalog) -> cat.ServiceRequest:
    constraints = [
        {"property": f"p{i}", "operator": "lte" if i % 2 else "eq", "value": rng.randint(100, 400), "mode": "hard"}
        for i in range(4)
    ]
    constraints.append({"property": "features", "operator": "eq", "value": ["f1", "f3"], "mode": "hard"})
    return cat.load_request(json.dumps({"constraints": constraints, "objective": "boolean"}), catalog)


def request_boolean(rng: random.Random, catalog: cat.Catalog) -> cat.ServiceRequest:
    constraints = []
    for i in range(8):
        entry = {
            "property": f"p{i}",
            "operator": "lte" if i % 2 else "eq",
            "value": rng.randint(100, 400),
            "mode": "hard" if i < 4 else "soft",
        }
        if entry["mode"] == "soft":
            entry["weight"] = 2
        constraints.append(entry)
    constraints.append({"property": "plan", "operator": "eq", "value": 1, "mode": "hard"})
    constraints.append({"property": "features", "operator": "eq", "value": ["f1", "f3"], "mode": "hard"})
    return cat.load_request(json.dumps({"constraints": constraints, "objective": "boolean"}), catalog)


def request_difference(rng: random.Random, catalog: cat.Catalog) -> cat.ServiceRequest:
    constraints = [
        {"property": f"p{i}", "operator": "eq", "value": rng.randint(100, 400), "mode": "soft", "weight": 1}
        for i in (0, 2, 4)
    ]
    return cat.load_request(json.dumps({"constraints": constraints, "objective": "difference"}), catalog)


def time_match(catalog, request, backend: str) -> float:
    started = time.perf_counter()
    m.match(catalog, request, backend=backend)
    return time.perf_counter() - started


def random_solver_batch(backend: str, count: int = 150) -> float:
    import sys
    from pathlib import Path

    sys.path.insert(0, str(Path(__file__).parent.parent / "tests"))
    from fd_support import random_problem

    rng = random.Random(8)
    started = time.perf_counter()
    for _ in range(count):
        random_problem(rng).solve_all(backend)
    return time.perf_counter() - started


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--sizes", default="100,300,1000")
    args = parser.parse_args()
    sizes = [int(s) for s in args.sizes.split(",")]
    backends = engine.available_backends()
    if "compiled" not in backends:
        print("note: compiled kernel not built; showing pure Python only")

    rows = []
    for size in sizes:
        rng = random.Random(42)
        catalog = synthetic_catalog(rng, size)
        for label, build in (
            ("hard", request_hard),
            ("boolean", request_boolean),
            ("difference", request_difference),
        ):
            request = build(random.Random(7), catalog)
            timings = {b: time_match(catalog, request, b) for b in backends}
            rows.append((f"{label} n={size}", timings))
    rows.append((f"random CSPs x150", {b: random_solver_batch(b) for b in backends}))

    width = max(len(r[0]) for r in rows)
    header = f"{'workload'.ljust(width)}  " + "  ".join(f"{b:>12}" for b in backends)
    if len(backends) == 2:
        header += f"  {'speedup':>8}"
    print(header)
    print("-" * len(header))
    for label, timings in rows:
        line = label.ljust(width) + "  " + "  ".join(f"{timings[b] * 1000:>10.1f}ms" for b in backends)
        if len(backends) == 2 and timings["compiled"] > 0:
            line += f"  {timings['python'] / timings['compiled']:>7.1f}x"
        print(line)


if __name__ == "__main__":
    main()
