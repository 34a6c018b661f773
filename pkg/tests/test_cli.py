import json

import pytest
from numpy.linalg import LinAlgError

from application.cli import EXIT_INVALID, EXIT_NUMERICAL, EXIT_OK, build_parser, main
from application.service import exact_spectrum_service


def _run(capsys, argv):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_effective_spectrum_prints_json_levels(capsys):
    code, out, _ = _run(capsys, ["effective", "spectrum", "--config", "O4", "--two-j", "0", "--w", "1"])
    assert code == EXIT_OK
    payload = json.loads(out)
    assert payload["command"] == "effective spectrum"
    assert payload["verified"] is True
    assert [level["multiplicity"] for level in payload["levels"]] == [2, 3, 1]
    assert [level["value"] for level in payload["levels"]] == pytest.approx([-2.0, 0.0, 4.0], abs=1e-10)


def test_field_flag_is_parsed_as_a_vector(capsys):
    argv = ["effective", "spectrum", "--config", "D4-2", "--two-j", "1", "--field", "0.3,0.2,0"]
    code, out, _ = _run(capsys, argv)
    assert code == EXIT_OK
    payload = json.loads(out)
    assert payload["field"] == [0.3, 0.2, 0.0]
    assert payload["verified"] is True


def test_group_decompose(capsys):
    code, out, _ = _run(capsys, ["group", "decompose", "--config", "O4", "--two-j", "1"])
    assert code == EXIT_OK
    payload = json.loads(out)
    assert payload["irreps"] == {"E1'": 1, "G'": 1}
    assert payload["dimension_check"] is True


def test_wkb_action_as_csv(capsys):
    code, out, _ = _run(capsys, ["wkb", "c-of-u", "--u", "0", "--format", "csv"])
    assert code == EXIT_OK
    header, row = out.splitlines()
    assert header == "u,c,valid,abs_error"
    assert float(row.split(",")[1]) == pytest.approx(0.5493061443340549, abs=1e-6)


def test_estimates(capsys):
    code, out, _ = _run(capsys, ["estimate", "dipolar", "--g", "2", "--two-j", "7", "--density", "1e22", "--concentration", "1"])
    assert code == EXIT_OK
    assert 1.6e10 <= json.loads(out)["rows"][0]["value"] <= 2.0e10

    argv = ["estimate", "dipolar", "--g", "2", "--two-j", "7", "--density", "1e22", "--concentration", "1", "--prefactor", "1"]
    code, out, _ = _run(capsys, argv)
    assert code == EXIT_OK
    assert json.loads(out)["rows"][0]["value"] == pytest.approx(4.0e10, rel=0.01)


@pytest.mark.parametrize(
    "argv",
    [
        ["effective", "spectrum", "--config", "Q7", "--two-j", "0"],
        ["effective", "spectrum", "--config", "O4", "--two-j", "-1"],
        ["effective", "spectrum", "--config", "O4", "--two-j", "1", "--field", "1,2"],
        ["effective", "spectrum", "--config", "O3-multipath", "--two-j", "2"],
        ["exact", "spectrum", "--two-j", "24", "--phi", "5"],
        ["wkb", "c-of-u", "--u", "0.5"],
    ],
)
def test_invalid_input_exits_with_two(capsys, argv):
    code, out, err = _run(capsys, argv)
    assert code == EXIT_INVALID
    assert out == ""
    assert err


def test_argument_errors_exit_with_two(capsys):
    assert main(["effective", "spectrum", "--config", "O4"]) == EXIT_INVALID
    assert main(["nonsense"]) == EXIT_INVALID
    assert main(["--version"]) == EXIT_OK
    capsys.readouterr()


def test_log_level_must_be_known(capsys):
    assert main(["wkb", "c-of-u", "--u", "0", "--log-level", "chatty"]) == EXIT_INVALID
    assert main(["wkb", "c-of-u", "--u", "0", "--log-level", "debug"]) == EXIT_OK
    capsys.readouterr()


def test_reruns_are_byte_identical(capsys):
    argv = ["exact", "sweep", "--two-j", "12", "--from", "-1", "--to", "1", "--steps", "5", "--format", "csv"]
    _, first, _ = _run(capsys, argv)
    _, second, _ = _run(capsys, argv)
    assert first == second
    assert len(first.splitlines()) == 6


def test_output_file_and_manifest(capsys, tmp_path):
    out = tmp_path / "decompose.json"
    manifest = tmp_path / "manifest.json"
    argv = ["group", "decompose", "--config", "Y5", "--two-j", "5", "--out", str(out), "--manifest", str(manifest)]
    code, stdout, _ = _run(capsys, argv)
    assert code == EXIT_OK
    assert stdout == ""
    assert json.loads(out.read_text())["irreps"] == {"I'": 2}

    record = json.loads(manifest.read_text())
    assert record["command"] == "group decompose"
    assert record["parameters"] == {"config": "Y5", "alpha": None, "two_j": 5}
    assert list(record["outputs"]) == [str(out)]


def test_parser_lists_every_command():
    parser = build_parser()
    for argv in (
        ["geometry", "dump", "--config", "O4"],
        ["effective", "sweep", "--config", "O4", "--parameter", "omega"],
        ["exact", "spectrum", "--two-j", "4", "--u", "0.1"],
        ["thermo", "chi", "--config", "O4", "--two-j", "0"],
        ["dynamics", "oscillate", "--config", "O4", "--two-j", "0"],
        ["estimate", "tau", "--rho", "1", "--delta", "1", "--omega", "1", "--sound-velocity", "1"],
    ):
        args = parser.parse_args(argv)
        assert args.group == argv[0]
        assert args.action == argv[1]


def test_eigensolver_failure_exits_with_three(capsys, monkeypatch):
    def fail(*args, **kwargs):
        raise LinAlgError("eigenvalues did not converge")

    monkeypatch.setattr(exact_spectrum_service, "eigvalsh", fail)
    code, out, err = _run(capsys, ["exact", "spectrum", "--two-j", "24", "--phi", "0.5"])
    assert code == EXIT_NUMERICAL
    assert out == ""
    assert "NUM_001" in err
    assert "phi=0.5" in err
