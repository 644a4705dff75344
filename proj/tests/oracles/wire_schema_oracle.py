"""Checks the wire fixtures against the shared JSON schema with jsonschema.

valid_* and request_* files must validate, invalid_* files must not. The C++
tests assert the same split through parse_response_body, so the schema and the
client parser stay in agreement.
"""
import json
import pathlib
import sys

import jsonschema

root = pathlib.Path(__file__).resolve().parents[2]
schema = json.loads((root / "classify_wire_schema.json").read_text())
jsonschema.Draft202012Validator.check_schema(schema)
validator = jsonschema.Draft202012Validator(schema)
bad = 0
for path in sorted((root / "tests/fixtures/wire").glob("*.json")):
    ok = validator.is_valid(json.loads(path.read_text()))
    expect = not path.name.startswith("invalid_")
    print(f"{'ok ' if ok == expect else 'BAD'} {path.name} valid={ok}")
    bad += ok != expect
sys.exit(1 if bad else 0)
