import json
from pathlib import Path

import pytest

from qschur.cli import main

jsonschema = pytest.importorskip("jsonschema")
referencing = pytest.importorskip("referencing")

SCHEMAS = Path(__file__).resolve().parent.parent / "docs" / "schemas"


def validator(name):
    resources = []
    for path in SCHEMAS.glob("*.json"):
        resources.append((path.name, referencing.Resource.from_contents(json.loads(path.read_text()))))
    registry = referencing.Registry().with_resources(resources)
    schema = json.loads((SCHEMAS / name).read_text())
    return jsonschema.Draft202012Validator(schema, registry=registry)


def cli_json(capsys, *argv):
    assert main(list(argv)) == 0
    return json.loads(capsys.readouterr().out)


def test_canon_output_matches_schema(capsys):
    obj = cli_json(capsys, "canon", "-A", "diag(0,1) + 1*E^{1,3}", "--json")
    validator("canon.schema.json").validate(obj)


def test_mult_output_matches_schema(capsys):
    obj = cli_json(capsys, "mult", "--word", "E1^(2) F2 K(1,-1)", "-a", "2,1", "--json")
    validator("word.schema.json").validate(obj["word"])
    validator("element.schema.json").validate(obj["result"])


def test_oracle_and_verify_output_match_schema(capsys):
    obj = cli_json(capsys, "oracle", "count", "-A", "diag(1,0) + 1*E^{1,2}")
    validator("oracle.schema.json").validate(obj)
    obj = cli_json(capsys, "verify", "A4", "--json")
    validator("verify.schema.json").validate(obj)
