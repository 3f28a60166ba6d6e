from __future__ import annotations

import io
import json

import pytest

from fhcalc.cli import build_parser, run


def invoke(*argv: str):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def body(out: str):
    return [line for line in out.splitlines() if not line.startswith("# ")]


def report(*argv: str):
    code, out, _ = invoke("--json", *argv)
    return code, json.loads(out)


@pytest.mark.parametrize("algebra", ["dual_numbers", "dual_numbers.alg"])
def test_hh_table(algebra):
    code, out, err = invoke("hh", "--algebra", algebra, "--maxdeg", "4")
    assert code == 0
    assert body(out) == ["0:2 1:1 2:1 3:1"]
    assert err == ""


def test_hh_json_report():
    code, doc = report("hh", "--algebra", "dual_numbers.alg", "--maxdeg", "4")
    assert code == 0
    assert doc["command"] == ["--json", "hh", "--algebra", "dual_numbers.alg", "--maxdeg", "4"]
    assert doc["status"] == "pass"
    assert doc["inputs"]["algebra"].startswith("sha256:")
    assert doc["result"]["hochschild"] == {"0": 2, "1": 1, "2": 1, "3": 1}
    assert set(doc) == {"command", "inputs", "status", "result"}


def test_human_report_echoes_command_and_inputs():
    code, out, _ = invoke("hh", "--algebra", "dual_numbers.alg", "--maxdeg", "4")
    assert code == 0
    header, algebra, table = out.splitlines()
    assert header == "# command: hh --algebra dual_numbers.alg --maxdeg 4"
    assert algebra.startswith("# algebra: sha256:")
    assert table == "0:2 1:1 2:1 3:1"
    _, out, _ = invoke("hh", "--algebra", "ground", "--maxdeg", "2")
    assert out.splitlines()[1] == "# algebra: builtin:ground"


def test_reports_are_byte_identical_across_runs():
    argv = ("--json", "cocenter", "--algebra", "s3.alg")
    assert invoke(*argv) == invoke(*argv)
    argv = ("tft", "dual", "--dim", "3", "--twist-seed", "11", "--field", "7")
    assert invoke(*argv) == invoke(*argv)


def test_cocenter_of_s3():
    code, doc = report("cocenter", "--algebra", "s3")
    assert code == 0
    assert doc["inputs"] == {"algebra": "builtin:s3"}
    assert doc["result"]["dimension"] == 3


def test_hh_graded_and_hkr():
    code, out, _ = invoke("hh-graded", "--vars", "2", "--weight", "2")
    assert (code, body(out)) == (0, ["0:3 1:4 2:1"])
    code, out, _ = invoke("hkr", "--vars", "1", "--weight", "3")
    assert code == 0
    assert out.splitlines()[-1] == "PASS"


def test_hkr_in_small_characteristic_is_an_input_error():
    code, _, err = invoke("hkr", "--vars", "1", "--weight", "3", "--field", "3")
    assert code == 2
    assert err.startswith("error: ")


@pytest.mark.parametrize(
    "argv",
    [
        ("excision", "--algebra", "upper_triangular"),
        ("connes-check", "--algebra", "dual_numbers", "--circle-weight", "3"),
        ("morita", "--algebra", "split"),
        ("eh-check", "--monoid", "z4.mon"),
        ("eh-check", "--scan", "2"),
        ("kan", "--category", "z2"),
        ("kan", "--category", "chain2", "--inner", "--unique"),
        ("tft", "zorro", "--dim", "1"),
        ("tft", "dual", "--dim", "2"),
    ],
    ids=lambda argv: "-".join(argv[:2]),
)
def test_checks_that_pass(argv):
    code, out, _ = invoke(*argv)
    assert code == 0
    assert out.splitlines()[-1] == "PASS" or argv[0] == "tft" and "PASS" in out


def test_interchange_violation_is_an_input_error():
    code, out, err = invoke("eh-check", "--monoid", "no_interchange.mon")
    assert code == 2
    assert out == ""
    assert "interchange law fails" in err


def test_eh_check_needs_an_input():
    code, _, err = invoke("eh-check")
    assert code == 2
    assert "--monoid or --scan" in err


def test_kan_needs_exactly_one_space():
    assert invoke("kan")[0] == 2
    assert invoke("kan", "--sset", "circle", "--category", "z2")[0] == 2


def test_minimal_circle_is_not_kan():
    code, doc = report("kan", "--sset", "circle", "--level", "2")
    assert code == 1
    assert doc["status"] == "fail"
    assert any(h["fillable"] < h["horns"] for h in doc["result"]["horns"])


def test_nerve_sizes():
    code, doc = report("nerve", "--category", "chain2", "--level", "3")
    assert code == 0
    assert doc["result"]["sizes"] == {"0": 3, "1": 6, "2": 10, "3": 15}
    assert doc["result"]["nondegenerate"] == {"0": 3, "1": 3, "2": 1, "3": 0}


def test_chains_of_the_torus():
    code, doc = report("chains", "--sset", "torus", "--level", "3")
    assert code == 0
    homology = doc["result"]["homology"]
    assert (homology["0"], homology["1"], homology["2"]) == (1, 2, 1)
    assert doc["result"]["euler"] == 0


def test_loday_over_the_circle_matches_hh():
    code, out, _ = invoke("loday", "--algebra", "dual_numbers", "--sset", "circle", "--maxdeg", "3")
    assert (code, body(out)) == (0, ["0:2 1:1 2:1"])


def test_torus_command():
    code, doc = report("torus", "--algebra", "split")
    assert code == 0
    assert doc["result"]["torus"] == {"0": 2, "1": 0}
    assert doc["result"]["coequalizer"] == 2
    code, out, _ = invoke("torus", "--algebra", "dual_numbers")
    assert code == 0
    lines = body(out)
    assert lines[-2].split() == ["coequalizer", "2"]
    assert lines[-1] == "PASS"


def test_tft_eval_swap():
    code, out, _ = invoke("tft", "eval", "--cobordism", "swap.cob", "--dim", "2")
    assert code == 0
    lines = body(out)
    assert lines[0].split() == ["shape", "4x4"]
    assert lines[1:] == ["  [1 0 0 0]", "  [0 0 1 0]", "  [0 1 0 0]", "  [0 0 0 1]"]


def test_tft_eval_needs_a_cobordism():
    assert invoke("tft", "eval")[0] == 2


def test_failed_duality_checks_exit_one():
    code, doc = report("tft", "dual", "--infinite")
    assert code == 1
    assert "finite sum" in doc["result"]["note"]
    code, doc = report("tft", "dual", "--dim", "2", "--zero")
    assert code == 1
    assert doc["result"]["left_residual"] == [["1", "0"], ["0", "1"]]


def test_malformed_file_reports_line_and_column(tmp_path):
    path = tmp_path / "bad.alg"
    path.write_text("field Q\ndim 2\nbasis 1 x\nunit 1 0\nmul 0 0 0 1\nmul 0 1 1 1\nmul 1 0 1 1\nmul 0 0 5 1\n")
    code, out, err = invoke("hh", "--algebra", str(path))
    assert code == 2
    assert out == ""
    assert f"{path}:8:9:" in err


def test_unknown_algebra():
    code, _, err = invoke("hh", "--algebra", "octonions")
    assert code == 2
    assert "octonions" in err


def test_budget_flag(monkeypatch):
    code, _, err = invoke("--budget", "100", "hh", "--algebra", "s3", "--maxdeg", "3")
    assert code == 2
    assert "--budget" in err
    assert invoke("--budget", "0", "hh", "--algebra", "ground")[0] == 2
    monkeypatch.setenv("FHCALC_BUDGET", "100")
    assert invoke("hh", "--algebra", "s3", "--maxdeg", "3")[0] == 2


def test_argument_errors_exit_two():
    assert invoke()[0] == 2
    assert invoke("frobnicate")[0] == 2
    assert invoke("hh")[0] == 2
    assert invoke("hh", "--algebra", "ground", "--field", "6")[0] == 2


def test_every_listed_subcommand_is_registered():
    parser = build_parser()
    choices = next(a for a in parser._actions if a.dest == "command").choices
    assert set(choices) >= {
        "hh", "hh-graded", "cocenter", "excision", "hkr", "connes-check", "kan",
        "nerve", "chains", "loday", "torus", "tft", "eh-check", "morita",
    }
