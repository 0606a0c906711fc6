"""
CLI `hkz`: saida JSON byte a byte, exit codes e modo batch.
"""

import json
import subprocess
import sys
from pathlib import Path

import pytest

from app.features.cli.cli_routes import parse_request
from app.models.reports import Decomposition
from main import main

HKZ = Path(__file__).resolve().parent / "hkz"

U_BASIC_U = '{"P":["1/2","1/2"],"N":{"E":"1/2"},"rounds":1,"diagnostics":[]}'


def _run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def _json(out):
    return json.loads(out)


# ---------------------------------------------------------------------------
# decompose / verify / classify
# ---------------------------------------------------------------------------


def test_decompose_golden_output(capsys):
    code, out, _ = _run(capsys, "decompose", "--catalog", "U-basic", "--class", "1,0")
    assert code == 0
    assert out == U_BASIC_U + "\n"


def test_output_is_deterministic(capsys):
    argv = ("decompose", "--catalog", "U-neg2-chain", "--class", "5/2,5/2,2", "--trace")
    first = _run(capsys, *argv)
    second = _run(capsys, *argv)
    assert first[:2] == second[:2]
    assert _json(first[1])["trace"][-1] == ["2", "2", "1"]


def _hkz(*argv):
    return subprocess.run(
        [sys.executable, str(HKZ), *argv], capture_output=True, text=True, check=False
    )


@pytest.mark.parametrize(
    "argv, expected",
    [
        (("decompose", "--catalog", "U-basic", "--class", "1,0"), U_BASIC_U),
        (
            ("decompose", "--catalog", "U-neg2-chain", "--class", "5/2,5/2,2"),
            '{"P":["2","2","1"],"N":{"E1":"1","E2":"1/2"},"rounds":2,"diagnostics":[]}',
        ),
    ],
)
def test_hkz_command_golden_output(argv, expected):
    first, second = _hkz(*argv), _hkz(*argv)
    assert first.returncode == second.returncode == 0
    assert first.stdout == second.stdout == expected + "\n"


def test_hkz_command_reports_exit_code():
    result = _hkz("decompose", "--catalog", "U-A1-fiber", "--class", "-3,0,1")
    assert result.returncode == 2
    assert json.loads(result.stdout)["error"] == "SupportNotNegativeDefinite"


def test_check_oracle_reports_agreement(capsys):
    code, out, _ = _run(capsys, "decompose", "--catalog", "U-basic", "--class", "1,0", "--check-oracle")
    assert code == 0
    assert _json(out)["oracle_agrees"] is True


def test_oracle_mismatch_is_exit_3(capsys, monkeypatch):
    monkeypatch.setattr(
        "app.features.cli.cli_controller.decompose_bruteforce",
        lambda model, D: Decomposition(P=D, N_coeffs={}),
    )
    code, out, _ = _run(capsys, "decompose", "--catalog", "U-basic", "--class", "1,0", "--check-oracle")
    assert code == 3
    assert _json(out)["error"] == "OracleMismatch"


def test_not_pseudo_effective_is_exit_2(capsys):
    code, out, _ = _run(capsys, "decompose", "--catalog", "U-A1-fiber", "--class", "-3,0,1")
    assert code == 2
    payload = _json(out)
    assert payload["error"] == "SupportNotNegativeDefinite"
    assert payload["detail"]


def test_operand_with_wrong_arity_is_exit_1(capsys):
    code, out, _ = _run(capsys, "decompose", "--catalog", "U-basic", "--class", "1,0,0")
    assert code == 1
    payload = _json(out)
    assert payload["error"] == "ParseError"
    assert payload["detail"].startswith("--class:")


@pytest.mark.parametrize("flag_style", ["separate", "joined"])
def test_negative_leading_coordinate(capsys, flag_style):
    operand = ["--class", "-1,2"] if flag_style == "separate" else ["--class=-1,2"]
    code, out, _ = _run(capsys, "classify", "--catalog", "U-basic", *operand)
    assert code == 0
    assert _json(out)["regime"] == "Indeterminate"


def test_negative_operands_on_both_classes():
    request = parse_request(["cone", "--catalog", "U-basic", "--class", "-1,0", "--class2", "-2,1/2"])
    assert (request.class_, request.class2) == ("-1,0", "-2,1/2")
    assert request.command == "cone"


def test_class_flag_without_value_is_usage_error(capsys):
    code, out, _ = _run(capsys, "decompose", "--catalog", "U-basic", "--class")
    assert code == 1
    assert _json(out)["error"] == "UsageError"


def test_verify_supplied_decomposition(capsys, tmp_path):
    path = tmp_path / "dec.json"
    path.write_text(json.dumps({"P": ["1/2", "1/2"], "N": {"E": "1/3"}}), encoding="utf-8")
    code, out, _ = _run(
        capsys, "verify", "--catalog", "U-basic", "--class", "1,0", "--decomposition", str(path)
    )
    assert code == 2
    report = _json(out)
    assert report["passed"] is False
    assert "sum_equals_input" in [c["name"] for c in report["checks"] if not c["passed"]]


def test_verify_own_decomposition(capsys):
    code, out, _ = _run(capsys, "verify", "--catalog", "U-neg2-chain", "--class", "5/2,5/2,2")
    assert code == 0
    assert _json(out)["passed"] is True


def test_classify(capsys):
    code, out, _ = _run(capsys, "classify", "--catalog", "U-neg2-chain", "--class", "5/2,5/2,2")
    assert code == 0
    report = _json(out)
    assert report["regime"] == "Maximal"
    assert report["qP"] == "6"


# ---------------------------------------------------------------------------
# cone / extremal
# ---------------------------------------------------------------------------


def test_cone_with_null_pair(capsys):
    code, out, _ = _run(capsys, "cone", "--catalog", "U-neg2-chain", "--class", "0,1,0", "--class2", "0,1,1")
    assert code == 0
    payload = _json(out)
    assert payload["closed_positive"]["member"] is True
    assert payload["positive"]["member"] is False
    assert payload["null_pair"] == {"kind": "NegativeSquare", "factor": None, "q_D": "-2"}


def test_extremal_over_model_primes_with_representative(capsys):
    code, out, _ = _run(capsys, "extremal", "--catalog", "U-A1-fiber", "--class", "0,1,0", "--class2", "0,0,1")
    assert code == 0
    payload = _json(out)
    assert payload["generators"] == ["E1", "E2"]
    assert payload["verdict"] == "NotExtremal"
    assert payload["witness"] == ["1", "1"]
    assert payload["null_representative"]["coefficients"] == {"E1": "1", "E2": "1"}


def test_extremal_with_generator_file(capsys, tmp_path):
    path = tmp_path / "gens.json"
    path.write_text(json.dumps([["1", "0"], ["0", "1"], ["1", "1"]]), encoding="utf-8")
    code, out, _ = _run(capsys, "extremal", "--catalog", "U-basic", "--class", "1,1", "--generators", str(path))
    assert code == 0
    assert _json(out)["witness"] == ["1", "1", "0"]


# ---------------------------------------------------------------------------
# validate / catalog
# ---------------------------------------------------------------------------


def test_validate_negative_definite_model(capsys, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text(
        json.dumps({"rank": 2, "gram": [["-2", "0"], ["0", "-2"]], "primes": {}, "kahler": ["1", "0"]}),
        encoding="utf-8",
    )
    code, out, _ = _run(capsys, "validate", "--model", str(path))
    assert code == 2
    payload = _json(out)
    assert payload["valid"] is False
    assert "SignatureViolation" in [v["kind"] for v in payload["violations"]]


def test_validate_catalog_model(capsys):
    code, out, _ = _run(capsys, "validate", "--catalog", "U-basic")
    assert code == 0
    assert _json(out) == {"valid": True, "violations": []}


def test_catalog_listing_and_model(capsys):
    code, out, _ = _run(capsys, "catalog")
    assert code == 0
    assert "U-basic" in _json(out)["models"]
    code, out, _ = _run(capsys, "catalog", "--catalog", "U-basic")
    assert _json(out)["model"]["primes"] == {"E": ["1", "-1"]}


# ---------------------------------------------------------------------------
# Erros de uso e saida
# ---------------------------------------------------------------------------


@pytest.mark.parametrize(
    "argv",
    [
        ("decompose", "--catalog", "U-basic"),
        ("explode", "--catalog", "U-basic"),
        ("decompose", "--class", "1,0"),
        ("decompose", "--catalog", "U-basic", "--model", "x.json", "--class", "1,0"),
        ("decompose", "--catalog", "U-basic", "--class", "1,x"),
    ],
)
def test_usage_and_parse_errors_are_exit_1(capsys, argv):
    code, out, _ = _run(capsys, *argv)
    assert code == 1
    assert set(_json(out)) >= {"error", "detail"}


def test_unknown_catalog_is_exit_2(capsys):
    code, out, _ = _run(capsys, "decompose", "--catalog", "nonexistent", "--class", "1,0")
    assert code == 2
    assert _json(out)["error"] == "UnknownCatalogName"


def test_output_file_and_pretty(capsys, tmp_path):
    target = tmp_path / "report.json"
    code, out, _ = _run(
        capsys, "decompose", "--catalog", "U-basic", "--class", "1,0", "--pretty", "--output", str(target)
    )
    assert code == 0
    assert out == ""
    text = target.read_text(encoding="utf-8")
    assert "\n  " in text
    assert json.loads(text) == json.loads(U_BASIC_U)


# ---------------------------------------------------------------------------
# batch
# ---------------------------------------------------------------------------


def _batch_file(tmp_path, text):
    path = tmp_path / "classes.txt"
    path.write_text(text, encoding="utf-8")
    return str(path)


def test_batch_reports_in_input_order(capsys, tmp_path):
    path = _batch_file(tmp_path, "# classes\n1,0\n\n1,-1\n")
    code, out, err = _run(capsys, "batch", "--catalog", "U-basic", "--input", path)
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == U_BASIC_U
    assert _json(lines[1]) == {"P": ["0", "0"], "N": {"E": "1"}, "rounds": 1, "diagnostics": []}
    assert "2 processed" in err


def test_batch_empty_file(capsys, tmp_path):
    code, out, err = _run(capsys, "batch", "--catalog", "U-basic", "--input", _batch_file(tmp_path, ""))
    assert code == 0
    assert out == ""
    assert "0 processed" in err


def test_batch_keeps_going_after_bad_line(capsys, tmp_path):
    path = _batch_file(tmp_path, "1,0\n1,x\n1,2\n")
    code, out, err = _run(capsys, "batch", "--catalog", "U-basic", "--input", path)
    lines = [_json(line) for line in out.splitlines()]
    assert len(lines) == 3
    assert lines[1]["error"] == "ParseError"
    assert lines[2]["P"] == ["1", "2"]
    assert code == 1
    assert "1 failed" in err


def test_batch_with_classify_command(capsys, tmp_path):
    path = _batch_file(tmp_path, "1,-1\n0,1\n1,2\n")
    code, out, _ = _run(capsys, "batch", "--catalog", "U-basic", "--input", path, "--command", "classify")
    assert code == 0
    assert [_json(line)["regime"] for line in out.splitlines()] == ["Zero", "NullCandidate", "Maximal"]
