import csv
import io
import json

import pytest

from cjones.cli import EXIT_DOMAIN, EXIT_OK, EXIT_PARSE, EXIT_USAGE, exit_code_for, run
from cjones.errors import (
    BranchDegenerationError,
    ConfigError,
    NonRealValueError,
    NoRuleError,
    ParseError,
    UnsupportedEvaluationError,
)


def rows_of(text):
    return list(csv.DictReader(io.StringIO(text)))


def test_torsion_on_the_axis(capsys):
    assert run(["torsion", "--alpha", "1.5707963267948966"]) == EXIT_OK
    out = capsys.readouterr().out
    assert out.splitlines()[0] == "kind,alpha,torsion"
    assert "1.15470053837925" in out


def test_torsion_echoes_alpha_at_output_precision(capsys):
    assert run(["torsion", "--alpha", "1.57079632679489661923132"]) == EXIT_OK
    (row,) = rows_of(capsys.readouterr().out)
    assert row["alpha"] == "1.5707963267948966"


def test_torsion_zero(capsys):
    assert run(["torsion", "--zero"]) == EXIT_OK
    (row,) = rows_of(capsys.readouterr().out)
    assert row["kind"] == "trivial"
    assert abs(float(row["torsion"]) - 11.396) < 1e-3


def test_delta_connected_sum(capsys):
    assert run(["delta", "--knot", "4_1 # 3_1", "--rep", "nonabelian"]) == EXIT_OK
    (row,) = rows_of(capsys.readouterr().out)
    assert row == {"delta": "4", "h0": "0", "h1_ker": "1", "trace": "Corollary;Corollary;ConnectedSumLemma"}


def test_delta_satellite_flags(capsys):
    argv = ["delta", "--knot", "sat(whitehead, T(2,3))", "--rep", "holonomy"]
    assert run(argv + ["--satellite-hyp", "i,ii,iii,iv"]) == EXIT_OK
    assert rows_of(capsys.readouterr().out)[0]["delta"] == "4"
    assert run(argv + ["--satellite-hyp", "i,ii"]) == EXIT_DOMAIN
    assert run(argv + ["--satellite-hyp", "i,v"]) == EXIT_USAGE


def test_delta_refuses_unknot(capsys):
    assert run(["delta", "--knot", "U", "--rep", "nonabelian"]) == EXIT_DOMAIN
    captured = capsys.readouterr()
    assert captured.out == ""
    assert captured.err.startswith("error: ")


def test_alexander_pairs(capsys):
    assert run(["alexander", "--braid", "s1 s2^-1 s1 s2^-1"]) == EXIT_OK
    out = capsys.readouterr().out
    assert out == "polynomial,delta_at_1,delta_at_minus_1\n-1:-1 3:0 -1:1,1,5\n"


def test_alexander_rejects_links(capsys):
    assert run(["alexander", "--braid", "s1 s1"]) == EXIT_DOMAIN
    assert "components" in capsys.readouterr().err


def test_jones_row(capsys):
    assert run(["jones", "--knot", "4_1", "--N", "3", "--r", "1", "--reduced"]) == EXIT_OK
    (row,) = rows_of(capsys.readouterr().out)
    assert row["N"] == "3" and row["r"] == "1.0"
    assert abs(float(row["log_mag"]) - 2.5649493574615367) < 1e-12


def test_jones_echoes_r_at_output_precision(capsys):
    assert run(["jones", "--knot", "U", "--N", "7", "--r", "0.930000000000000000000000000001"]) == EXIT_OK
    (row,) = rows_of(capsys.readouterr().out)
    assert row["r"] == "0.93"
    assert run(["jones", "--knot", "U", "--N", "7", "--r", "0.93", "--json"]) == EXIT_OK
    assert json.loads(capsys.readouterr().out)["r"] == 0.93


def test_jones_unsupported_atom(capsys):
    assert run(["jones", "--knot", "T(2,3)", "--N", "10", "--r", "1"]) == EXIT_DOMAIN
    captured = capsys.readouterr()
    assert captured.out == ""
    assert "T(2,3)" in captured.err


def test_parse_error_exit_code(capsys):
    assert run(["jones", "--knot", "4_1 #", "--N", "3", "--r", "1"]) == EXIT_PARSE
    assert "error at 5" in capsys.readouterr().err


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["jones"],
        ["fit", "--r", "1", "--N-list", "a,b"],
        ["kashaev", "--N", "3", "--jobs", "0"],
        ["kashaev", "--N", "3", "--digits", "8"],
    ],
)
def test_usage_errors(argv, capsys):
    assert run(argv) == EXIT_USAGE
    assert capsys.readouterr().out == ""


def test_bad_environment(monkeypatch, capsys):
    monkeypatch.setenv("CJONES_DIGITS", "many")
    assert run(["kashaev", "--N", "3"]) == EXIT_USAGE
    assert "CJONES_DIGITS" in capsys.readouterr().err


def test_json_mode(capsys):
    assert run(["kashaev", "--N", "3", "--json"]) == EXIT_OK
    record = json.loads(capsys.readouterr().out)
    assert record["N"] == 3
    assert record["value"] == 13.0


def test_action_at_the_complete_structure(capsys):
    assert run(["action", "--digits", "40"]) == EXIT_OK
    (row,) = rows_of(capsys.readouterr().out)
    assert row["vol"].startswith("2.02988321281930")
    assert float(row["sprime_im"]) == pytest.approx(2.029883212819307 / (2 * 3.141592653589793))


def test_residual_sweep_rows(capsys):
    argv = ["residual", "--N", "10", "--r-min", "0.95", "--r-max", "1.05", "--steps", "3", "--digits", "40"]
    assert run(argv + ["--jobs", "1"]) == EXIT_OK
    first = capsys.readouterr().out
    rows = rows_of(first)
    assert [row["N"] for row in rows] == ["10", "10", "10"]
    assert all(row["error"] == "" for row in rows)
    assert run(argv + ["--jobs", "1"]) == EXIT_OK
    assert capsys.readouterr().out == first


def test_volcheck_domain(capsys):
    assert run(["volcheck", "--N-max", "50"]) == EXIT_DOMAIN


def test_exit_code_table():
    assert exit_code_for(ParseError(3, "bad")) == EXIT_PARSE
    assert exit_code_for(ConfigError("bad")) == EXIT_USAGE
    assert exit_code_for(NoRuleError("none")) == EXIT_DOMAIN
    assert exit_code_for(UnsupportedEvaluationError("3_1")) == EXIT_DOMAIN
    assert exit_code_for(BranchDegenerationError("1", "collision")) == EXIT_DOMAIN
    assert exit_code_for(NonRealValueError("phase")) == EXIT_DOMAIN
    assert exit_code_for(ValueError("bad")) == EXIT_USAGE
    with pytest.raises(KeyError):
        exit_code_for(KeyError("unexpected"))
