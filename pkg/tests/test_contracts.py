"""The JSON schemas in contracts/ track the pydantic models they describe."""

from __future__ import annotations

import json
from pathlib import Path

import pytest

from simple_rc.inference import TestReport, run_pair_test
from simple_rc.model_core import ModelConfig

CONTRACTS_DIR = Path(__file__).resolve().parent.parent / "contracts"


def load_schema(name: str) -> dict:
    with open(CONTRACTS_DIR / name, "r", encoding="utf-8") as f:
        return json.load(f)


@pytest.mark.parametrize("name, model", [
    ("test_report_schema.json", TestReport),
    ("model_config_schema.json", ModelConfig),
])
def test_schema_lists_every_field(name: str, model) -> None:
    schema = load_schema(name)
    assert set(schema["properties"]) == set(model.model_fields)
    assert set(schema["required"]) <= set(schema["properties"])


def test_report_has_required_keys(sampled_example1) -> None:
    X, _, group = sampled_example1
    report = run_pair_test(X, group[0], group[1], k0_override=3).one_based()
    data = report.model_dump(mode="json")
    schema = load_schema("test_report_schema.json")

    assert set(schema["required"]) <= set(data)
    assert data["variant"] in schema["properties"]["variant"]["enum"]
    assert data["calibration"] in schema["properties"]["calibration"]["enum"]
    assert data["k0_rule"] in schema["properties"]["k0_rule"]["enum"]
