"""Exit codes, document shapes, and byte-level determinism of the CLI."""

import json
import subprocess
import sys

import pytest

from parabolic_lab.cli import main


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr().out
    return code, out


def run_json(argv, capsys):
    code, out = run(argv, capsys)
    return code, json.loads(out)


def test_ramify_document(capsys):
    code, doc = run_json(["ramify", "--field", "GF(2)", "--series", "z + z^2",
                          "--nmax", "2", "--N", "20"], capsys)
    assert code == 0
    assert doc == {"q": 1, "N": 20, "i": [1, 3, 15], "delta": [1, 1, 1],
                   "resit": 1}


def test_ramify_resit_note_when_undefined(capsys):
    code, doc = run_json(["ramify", "--field", "GF(3)", "--series",
                          "z + z^3 mod z^20", "--nmax", "1"], capsys)
    assert code == 0
    assert doc["resit"] is None
    assert "resit_note" in doc


def test_minimal_document(capsys):
    code, doc = run_json(["minimal", "--field", "GF(3)", "--series",
                          "z + z^2 + 2*z^3 mod z^30"], capsys)
    assert code == 0
    assert doc["criterion"]["minimal"] is True
    assert doc["definitional"]["minimal"] is True
    assert doc["agree"] is True
    assert doc["mq"] == 2


def test_normalize_document(capsys):
    code, doc = run_json(["normalize", "--field", "GF(3)", "--series",
                          "2*z + z^2 + z^3", "--N", "8"], capsys)
    assert code == 0
    assert doc["q"] == 2
    assert doc["g"] == "2*z + 2*z^3 mod z^8"
    assert doc["a"] == [1, 0, 0]


def test_closed_form_three_modes(capsys):
    code, doc = run_json(["closed-form", "--mode", "chi-xi", "--p", "3",
                          "--q", "1", "--n", "1", "--coeffs", "1,0"], capsys)
    assert code == 0
    assert doc["mode"] == "chi-xi" and doc["chi"] == 1 and doc["xi"] == 2

    code, doc = run_json(["closed-form", "--mode", "iterate-q", "--p", "3",
                          "--q", "2", "--coeffs", "1,2"], capsys)
    assert code == 0
    assert doc["unit_coeffs"] == [1, 2, 1]

    code, doc = run_json(["closed-form", "--mode", "ell", "--p", "3",
                          "--n", "2", "--coeffs", "1,1"], capsys)
    assert code == 0
    assert doc["c2"] == 2 and doc["c3"] == 1


def test_verify_single_case(capsys):
    code, doc = run_json(["verify", "main-lemma", "--p", "3", "--q", "1",
                          "--n", "1", "--coeffs", "1,0", "--N", "10"], capsys)
    assert code == 0
    assert doc["ok"] is True


def test_verify_sweeps_small(capsys):
    code, doc = run_json(["verify", "main-lemma", "--p", "2", "--q", "1",
                          "--n", "1", "--seed", "3"], capsys)
    assert code == 0 and doc["ok"] and doc["cases"] == 50

    code, doc = run_json(["verify", "delta-tower", "--p", "3", "--seed", "5"],
                         capsys)
    assert code == 0 and doc["ok"] and doc["cases"] == 100

    code, doc = run_json(["verify", "semiconj", "--p", "3", "--q", "2",
                          "--seed", "7"], capsys)
    assert code == 0 and doc["ok"]

    code, doc = run_json(["verify", "quasi-invariance", "--p", "3", "--q", "1",
                          "--seed", "9"], capsys)
    assert code == 0 and doc["ok"]


def test_bounds_document(capsys):
    code, doc = run_json(["bounds", "--field", "Laurent(GF(3))", "--series",
                          "z + t*z^2 + z^3", "--n", "1"], capsys)
    assert code == 0
    assert doc["bound_valuation"] == "1/3"
    assert doc["branch"] == "p-odd"


def test_bounds_degenerate_is_not_an_error(capsys):
    code, doc = run_json(["bounds", "--field", "Laurent(GF(3))", "--series",
                          "z + z^2 + z^3", "--n", "1"], capsys)
    assert code == 0
    assert doc["bound_valuation"] == "no-information"


def test_newton_document(capsys):
    code, doc = run_json(["newton", "--field", "Laurent(GF(3))", "--poly",
                          "t*z^2 + z^3"], capsys)
    assert code == 0
    assert doc["segments"] == [{"slope": "-1/1", "length": 1}]
    assert doc["root_valuations"] == [{"valuation": "1/1", "count": 1}]


def test_cycle_valuations_document(capsys):
    code, doc = run_json(["cycle-valuations", "--field", "Laurent(GF(3))",
                          "--series", "z + t*z^2 + z^3", "--n", "0"], capsys)
    assert code == 0
    assert doc["cycle_points"] == 1 and doc["attained"] is True


def test_exit_one_on_verification_failure(capsys):
    code, doc = run_json(["cycle-valuations", "--field", "Laurent(GF(3))",
                          "--series", "z + t^-1*z^2", "--n", "0"], capsys)
    assert code == 1
    assert doc["kind"] == "NonIntegralCoefficient"


def test_exit_two_on_bad_input(capsys):
    code, doc = run_json(["ramify", "--field", "GF(2)", "--series",
                          "z + + z^2"], capsys)
    assert code == 2
    assert doc["kind"] == "ParseError"
    assert "position 4" in doc["error"]

    code, doc = run_json(["verify", "semiconj", "--p", "3", "--q", "2"],
                         capsys)
    assert code == 2

    code, doc = run_json(["minimal", "--field", "GF(3)"], capsys)
    assert code == 2


def test_json_out_writes_the_same_bytes(tmp_path, capsys):
    a = tmp_path / "a.json"
    b = tmp_path / "b.json"
    argv = ["verify", "main-lemma", "--p", "2", "--q", "1", "--n", "1",
            "--seed", "3"]
    assert main(argv + ["--json-out", str(a)]) == 0
    assert main(argv + ["--json-out", str(b)]) == 0
    capsys.readouterr()
    assert a.read_bytes() == b.read_bytes()
    assert a.read_bytes().endswith(b"\n")


def test_console_entry_point_runs():
    proc = subprocess.run(
        [sys.executable, "-m", "parabolic_lab.cli", "ramify", "--field",
         "GF(2)", "--series", "z + z^2", "--N", "20"],
        capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["i"] == [1, 3, 15]


def test_printed_series_reparse(capsys):
    # everything the CLI prints as a series literal re-parses to equality
    from parabolic_lab import parse_field, parse_series, series_to_str
    code, doc = run_json(["normalize", "--field", "GF(3)", "--series",
                          "2*z + z^2 + z^3", "--N", "8"], capsys)
    assert code == 0
    F3 = parse_field("GF(3)")
    for key in ("g", "h"):
        s = parse_series(doc[key], F3)
        assert series_to_str(s) == doc[key]
