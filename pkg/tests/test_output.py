import hashlib
import json

import numpy as np

from application.model.manifest import Report
from application.utils.output import build_manifest, format_number, render, sha256_text, to_csv, to_json, write_output


def _report():
    return Report(
        command="effective spectrum",
        parameters={"config": "O4", "two_j": 0},
        rows=[{"value": -2.0, "multiplicity": 2}, {"value": 0.1, "multiplicity": 3}],
        meta={"verified": True},
        rows_key="levels",
    )


def test_format_number_keeps_full_precision():
    assert format_number(0.1) == "0.10000000000000001"
    assert format_number(np.float64(2.0)) == "2"
    assert format_number(None) == ""
    assert format_number(True) == "true"
    assert format_number(float("nan")) == "nan"
    assert format_number([1.0, 3]) == "1;3"


def test_csv_has_a_header_and_one_line_per_row():
    text = to_csv(_report())
    assert text.splitlines() == ["value,multiplicity", "-2,2", "0.10000000000000001,3"]


def test_json_places_rows_under_their_key():
    text = render(_report(), "json")
    assert text.endswith("}\n")
    payload = json.loads(text)
    assert payload["command"] == "effective spectrum"
    assert payload["verified"] is True
    assert payload["levels"][1] == {"value": 0.1, "multiplicity": 3}


def test_json_writes_non_finite_values_as_null():
    payload = json.loads(to_json({"a": float("inf"), "b": [np.float64("nan"), np.int64(4)]}))
    assert payload == {"a": None, "b": [None, 4]}


def test_manifest_records_output_digests(tmp_path):
    text = render(_report(), "csv")
    target = tmp_path / "levels.csv"
    write_output(text, str(target))
    assert target.read_text(encoding="utf-8") == text

    digest = sha256_text(text)
    assert digest == hashlib.sha256(target.read_bytes()).hexdigest()
    manifest = build_manifest(_report(), {str(target): digest})
    assert manifest.command == "effective spectrum"
    assert manifest.parameters == {"config": "O4", "two_j": 0}
    assert "numpy" in manifest.versions
    assert manifest.outputs[str(target)] == digest


def test_stdout_output(capsys):
    write_output("hello\n", "-")
    assert capsys.readouterr().out == "hello\n"
