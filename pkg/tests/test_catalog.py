"""Catalog loading, scaling, validation, and round-tripping."""

import json
import random
from pathlib import Path

import pytest
from hypothesis import given
from hypothesis import strategies as st

import csmatch.catalog as cat

FIXTURES = Path(__file__).parent.parent / "fixtures"


@pytest.fixture(scope="module")
def catalog():
    return cat.load_catalog((FIXTURES / "dbapp_catalog.json").read_bytes())


def make_doc(**overrides):
    doc = {
        "schema": [
            {
                "id": "speed",
                "display_name": "Speed",
                "kind": "interval",
                "tendency": "low",
                "unit": "ms",
                "scale": 1,
            }
        ],
        "services": [{"id": 0, "name": "svc", "specs": {"speed": 10}}],
    }
    doc.update(overrides)
    return json.dumps(doc)


class TestLoadCatalog:
    def test_fixture_shape(self, catalog):
        assert len(catalog.services) == 3
        assert len(catalog.schema) == 7
        assert catalog.services[1].spec("free_storage") == 15

    def test_scaling_applied(self, catalog):
        assert catalog.column("availability") == [9999, 9995, 9995]
        assert catalog.column("version") == [55, 56, 56]

    def test_feature_labels_become_codes(self, catalog):
        assert sorted(catalog.services[2].spec("compatible_browsers")) == [0, 3]

    def test_unknown_property_in_spec(self):
        doc = make_doc(services=[{"id": 0, "name": "svc", "specs": {"nope": 1}}])
        with pytest.raises(cat.ValidationError) as err:
            cat.load_catalog(doc)
        assert any("nope" in m for _, m in err.value.issues)
        assert any(p == "services[0].specs.nope" for p, _ in err.value.issues)

    def test_malformed_json_is_parse_error(self):
        with pytest.raises(cat.ParseError):
            cat.load_catalog(b"{not json")

    def test_non_dense_service_ids(self):
        doc = make_doc(
            services=[
                {"id": 0, "name": "a", "specs": {}},
                {"id": 5, "name": "b", "specs": {}},
            ]
        )
        with pytest.raises(cat.ValidationError) as err:
            cat.load_catalog(doc)
        assert any("dense" in m for _, m in err.value.issues)

    def test_all_errors_reported_not_just_first(self):
        doc = make_doc(
            services=[
                {"id": 1, "name": "a", "specs": {"bad1": 1}},
                {"id": 1, "name": "b", "specs": {"bad2": 2}},
            ]
        )
        with pytest.raises(cat.ValidationError) as err:
            cat.load_catalog(doc)
        paths = [p for p, _ in err.value.issues]
        assert "services[0].specs.bad1" in paths
        assert "services[1].specs.bad2" in paths
        assert any(p.startswith("services[0].id") for p in paths)

    def test_enum_needs_values(self):
        doc = make_doc(
            schema=[
                {
                    "id": "plan",
                    "display_name": "Plan",
                    "kind": "enumeration",
                    "tendency": "neutral",
                    "unit": "",
                    "scale": 1,
                }
            ],
            services=[],
        )
        with pytest.raises(cat.ValidationError):
            cat.load_catalog(doc)

    def test_kind_tendency_matrix(self):
        doc = make_doc(
            schema=[
                {
                    "id": "plan",
                    "display_name": "Plan",
                    "kind": "enumeration",
                    "tendency": "high",
                    "unit": "",
                    "scale": 1,
                    "enum_values": ["a"],
                }
            ],
            services=[],
        )
        with pytest.raises(cat.ValidationError) as err:
            cat.load_catalog(doc)
        assert any("allow only" in m for _, m in err.value.issues)

    def test_missing_specs(self):
        doc = make_doc(services=[{"id": 0, "name": "svc", "specs": {"speed": None}}])
        c = cat.load_catalog(doc)
        assert c.services[0].spec("speed") is None
        # omitted keys read as missing too
        doc2 = make_doc(services=[{"id": 0, "name": "svc", "specs": {}}])
        assert cat.load_catalog(doc2).services[0].spec("speed") is None

    def test_unknown_fields_rejected(self):
        doc = make_doc(services=[{"id": 0, "name": "svc", "specs": {}, "extra": 1}])
        with pytest.raises(cat.ValidationError) as err:
            cat.load_catalog(doc)
        assert any("unknown field" in msg for _, msg in err.value.issues)


class TestScaling:
    def test_availability_example(self):
        assert cat.scale_value(99.95, 100) == 9995

    def test_half_up(self):
        assert cat.scale_value(2.5, 1) == 3
        assert cat.scale_value(0.645, 100) == 65

    @given(
        st.integers(min_value=-(10**6), max_value=10**6),
        st.sampled_from([1, 10, 100, 1000]),
    )
    def test_lossless_for_representable(self, raw, scale):
        value = raw / scale
        assert cat.unscale_value(cat.scale_value(value, scale), scale) == pytest.approx(value)


class TestSaveCatalog:
    def test_round_trip_fixture(self, catalog):
        assert cat.load_catalog(cat.save_catalog(catalog)) == catalog

    def test_empty_services(self):
        doc = make_doc(services=[])
        c = cat.load_catalog(doc)
        assert cat.load_catalog(cat.save_catalog(c)) == c

    def test_round_trip_generated(self):
        rng = random.Random(3)
        services = []
        for i in range(1000):
            value = rng.randint(0, 10_000) / 100
            services.append({"id": i, "name": f"svc-{i}", "specs": {"speed": value}})
        doc = json.dumps(
            {
                "schema": [
                    {
                        "id": "speed",
                        "display_name": "Speed",
                        "kind": "interval",
                        "tendency": "low",
                        "unit": "ms",
                        "scale": 100,
                    }
                ],
                "services": services,
            }
        )
        c = cat.load_catalog(doc)
        assert cat.load_catalog(cat.save_catalog(c)) == c


class TestLoadRequest:
    def test_feature_labels_to_codes(self, catalog):
        req = cat.load_request(
            json.dumps(
                {
                    "constraints": [
                        {
                            "property": "compatible_browsers",
                            "operator": "eq",
                            "value": ["explorer", "firefox", "safari"],
                            "mode": "hard",
                        }
                    ],
                    "objective": "boolean",
                }
            ),
            catalog,
        )
        assert req.constraints[0].value == frozenset({0, 1, 3})

    def test_scalar_scaled(self, catalog):
        req = cat.load_request(
            json.dumps(
                {
                    "constraints": [
                        {"property": "response_time", "operator": "lte", "value": 300, "mode": "hard"}
                    ],
                    "objective": "boolean",
                }
            ),
            catalog,
        )
        c = req.constraints[0]
        assert c.value == 300 and c.operator == "<="

    def test_operator_kind_mismatch(self, catalog):
        with pytest.raises(cat.ValidationError) as err:
            cat.load_request(
                json.dumps(
                    {
                        "constraints": [
                            {"property": "version", "operator": "gte", "value": 5.6, "mode": "hard"}
                        ],
                        "objective": "boolean",
                    }
                ),
                catalog,
            )
        assert any("not allowed" in m for _, m in err.value.issues)

    def test_weight_on_hard_rejected(self, catalog):
        with pytest.raises(cat.ValidationError) as err:
            cat.load_request(
                json.dumps(
                    {
                        "constraints": [
                            {
                                "property": "version",
                                "operator": "eq",
                                "value": 5.6,
                                "mode": "hard",
                                "weight": 2,
                            }
                        ],
                        "objective": "boolean",
                    }
                ),
                catalog,
            )
        assert any(p.endswith(".weight") for p, _ in err.value.issues)

    def test_missing_direction_on_requester_defined(self, catalog):
        with pytest.raises(cat.ValidationError) as err:
            cat.load_request(
                json.dumps(
                    {
                        "constraints": [
                            {"property": "established", "operator": "gte", "value": 2009, "mode": "hard"}
                        ],
                        "objective": "boolean",
                    }
                ),
                catalog,
            )
        assert any(p.endswith(".direction") for p, _ in err.value.issues)

    def test_misspelled_field_is_an_error_not_a_default(self, catalog):
        with pytest.raises(cat.ValidationError) as err:
            cat.load_request(
                json.dumps(
                    {
                        "constraints": [
                            {
                                "property": "version",
                                "operator": "eq",
                                "value": 5.6,
                                "mode": "soft",
                                "weigth": 5,
                            }
                        ],
                        "objective": "boolean",
                    }
                ),
                catalog,
            )
        assert any("weigth" in p for p, _ in err.value.issues)

    def test_soft_default_weight(self, catalog):
        req = cat.load_request(
            json.dumps(
                {
                    "constraints": [
                        {"property": "version", "operator": "eq", "value": 5.6, "mode": "soft"}
                    ],
                    "objective": "boolean",
                }
            ),
            catalog,
        )
        assert req.constraints[0].weight == 1

    def test_difference_objective_needs_discrete_softs(self, catalog):
        with pytest.raises(cat.ValidationError) as err:
            cat.load_request(
                json.dumps(
                    {
                        "constraints": [
                            {
                                "property": "response_time",
                                "operator": "lte",
                                "value": 300,
                                "mode": "soft",
                            }
                        ],
                        "objective": "difference",
                    }
                ),
                catalog,
            )
        assert any("difference objective" in m for _, m in err.value.issues)

    def test_unknown_objective(self, catalog):
        with pytest.raises(cat.ValidationError):
            cat.load_request(
                json.dumps(
                    {
                        "constraints": [
                            {"property": "version", "operator": "eq", "value": 5.6, "mode": "hard"}
                        ],
                        "objective": "fastest",
                    }
                ),
                catalog,
            )

    def test_request_echo_round_trip(self, catalog):
        doc = {
            "constraints": [
                {"property": "version", "operator": "eq", "value": 5.6, "mode": "soft", "weight": 3},
                {
                    "property": "compatible_browsers",
                    "operator": "eq",
                    "value": ["explorer", "safari"],
                    "mode": "hard",
                },
            ],
            "objective": "boolean",
        }
        req = cat.load_request(json.dumps(doc), catalog)
        echoed = cat.request_to_document(req, catalog)
        again = cat.load_request(json.dumps(echoed), catalog)
        assert again == req


class TestEffectiveOperator:
    def test_tendency_rules(self, catalog):
        hard = cat.load_request(
            (FIXTURES / "dbapp_request_hard.json").read_bytes(), catalog
        )
        by_pid = {c.property_id: c for c in hard.constraints}
        eff = lambda pid: cat.effective_operator(catalog.property_schema(pid), by_pid[pid])
        assert eff("free_storage") == ">="
        assert eff("response_time") == "<="
        assert eff("established") == ">="
        assert eff("version") == "="
        assert eff("pricing") == "="
