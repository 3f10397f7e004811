"""Command-line driver: parsing, exit codes, formats, determinism."""

import json
import subprocess
import sys

import pytest

from uqsl2.cli import main
from uqsl2.report import CheckReport


def run_main(argv, capsys):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_rejects_bad_n(capsys):
    code, out, err = run_main(["verify", "--suite", "all", "--n", "6"], capsys)
    assert code == 2
    assert "multiple of 4" in err


def test_rejects_bad_labels_and_families(capsys):
    assert run_main(["tensor", "badlabel", "simple:1,0"], capsys)[0] == 2
    assert run_main(["tensor", "simple:1", "simple:1,0"], capsys)[0] == 2
    assert run_main(["tensor", "simple:a,b", "simple:1,0"], capsys)[0] == 2
    assert run_main(["module", "W", "--i", "1", "--j", "0"], capsys)[0] == 2
    assert run_main(["module", "T", "--i", "2", "--j", "1", "--l", "1"], capsys)[0] == 2
    assert run_main(["module", "simple", "--i", "9", "--j", "0"], capsys)[0] == 2


def test_module_text_output(capsys):
    code, out, _ = run_main(["module", "simple", "--i", "8", "--j", "0"], capsys)
    assert code == 0
    assert "S(16,0): dim 1" in out
    code, out, _ = run_main(["module", "projective", "--i", "1", "--j", "0"], capsys)
    assert code == 0
    assert "P(2,0): dim 32" in out
    assert "socle: S(2,0) x1" in out


def test_module_json_output(capsys):
    code, out, _ = run_main(
        ["module", "T", "--i", "2", "--j", "1", "--l", "1", "--lambda", "1", "--format", "json"],
        capsys,
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["dim"] == 16
    assert payload["n"] == 4
    assert set(payload) >= {"label", "E", "F", "character", "top", "socle"}


def test_module_csv_lists_basis(capsys):
    code, out, _ = run_main(
        ["module", "simple", "--i", "7", "--j", "1", "--format", "csv"], capsys
    )
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[1] == "index,k_exponent,khat_exponent,grade"
    assert len(lines) == 2 + 3


def test_tensor_unit_absorption(capsys):
    code, out, _ = run_main(["tensor", "projective:1,0", "simple:8,0"], capsys)
    assert code == 0
    assert "P(2,0) x1" in out


def test_tensor_one_dimensional_product(capsys):
    code, out, _ = run_main(
        ["tensor", "simple:8,1", "simple:8,1", "--format", "json"], capsys
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["status"] == "decomposed"
    assert payload["summands"] == {"S(16,0)": 1}
    assert payload["dim"] == 1


def test_verify_failure_exit_code(capsys, monkeypatch):
    import uqsl2.cli as cli_mod

    monkeypatch.setattr(
        cli_mod, "suite_reports", lambda ctx, suite, seed, slow: [CheckReport("x", False, 1)]
    )
    code, out, _ = run_main(["verify", "--suite", "axioms"], capsys)
    assert code == 1
    assert "FAIL" in out


def test_verify_lemmas_suite(capsys):
    code, out, err = run_main(["verify", "--suite", "lemmas", "--format", "json"], capsys)
    assert code == 0
    payload = json.loads(out)
    assert payload["status"] == "pass"
    assert payload["seed"] == 0
    assert len(payload["checks"]) == 6
    assert all("wall_time" not in c for c in payload["checks"])
    assert "[time]" in err


def test_table_determinism_with_and_without_cache(tmp_path):
    def run(extra):
        return subprocess.run(
            [sys.executable, "-m", "uqsl2.cli", "table", "cg-ss", "--n", "4"] + extra,
            capture_output=True,
            text=True,
        )

    cache = tmp_path / "cache.json"
    first = run([])
    second = run(["--cache", str(cache)])
    assert cache.exists()
    third = run(["--cache", str(cache)])
    assert first.returncode == second.returncode == third.returncode == 0
    assert first.stdout == second.stdout == third.stdout
    lines = first.stdout.splitlines()
    assert lines[0].startswith("# uqsl2 ")
    assert "table=cg-ss" in lines[0] and "n=4" in lines[0] and "seed=0" in lines[0]
    assert lines[1] == "left,right,summand,multiplicity"


def test_table_output_file(tmp_path, capsys):
    out_path = tmp_path / "k0.csv"
    code, out, _ = run_main(["table", "k0", "--out", str(out_path)], capsys)
    assert code == 0
    assert out == ""
    lines = out_path.read_text().splitlines()
    assert lines[1] == "left,right,class,coefficient"
    assert len(lines) == 2 + 1200


def test_table_unwritable_path_is_io_error(capsys):
    code, _, err = run_main(
        ["table", "cg-ps", "--out", "/nonexistent-dir/t.csv"], capsys
    )
    assert code == 3
    assert "i/o error" in err


def test_table_json_shape(capsys):
    code, out, _ = run_main(["table", "cg-ps", "--format", "json"], capsys)
    assert code == 0
    payload = json.loads(out)
    assert payload["table"] == "cg-ps"
    assert payload["rows"][0]["left"] == "P(2,0)"


def test_console_script_entry():
    proc = subprocess.run(
        [sys.executable, "-m", "uqsl2.cli", "--version"], capture_output=True, text=True
    )
    assert proc.returncode == 0
    assert proc.stdout.startswith("uqsl2 ")
