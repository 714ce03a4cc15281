"""CLI contract: flags, exit codes, JSON reports, reproducibility."""

import json

import numpy as np
import pytest

from niceset import Instance
from niceset.cli import main


def run_cli(capsys, argv):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def write_csv(tmp_path, name, header, rows):
    path = tmp_path / name
    lines = [",".join(header)] + [",".join(str(x) for x in row) for row in rows]
    path.write_text("\n".join(lines) + "\n")
    return str(path)


def test_bounds_prints_reference_values(capsys, tmp_path):
    out_path = tmp_path / "bounds.json"
    code, out, _ = run_cli(capsys, ["bounds", "--m", "100", "--p", "0.5",
                                    "--gamma", "1", "--json", str(out_path)])
    assert code == 0
    assert "19.9316" in out
    assert "0.01" in out
    payload = json.loads(out_path.read_text())
    assert payload["schema"] == 1
    assert payload["upper"]["value"] == pytest.approx(19.931568569324174, rel=1e-9)
    assert payload["upper"]["failure_prob"] == pytest.approx(0.01)
    assert payload["lower"]["threshold"] >= 1


def test_json_goes_to_stdout_without_flag(capsys):
    code, out, _ = run_cli(capsys, ["bounds", "--m", "100", "--p", "0.5"])
    assert code == 0
    start = out.index("{")
    payload = json.loads(out[start:])
    assert payload["kind"] == "bounds"


def test_simulate_upper_reports(capsys, tmp_path):
    out_path = tmp_path / "up.json"
    code, out, _ = run_cli(capsys, [
        "simulate-upper", "--m", "12", "--p", "0.5", "--gamma", "1",
        "--conflict", "uniform-k", "--k", "2", "--trials", "10",
        "--seed", "5", "--json", str(out_path)])
    assert code == 0
    payload = json.loads(out_path.read_text())
    assert payload["schema"] == 1 and payload["kind"] == "simulate-upper"
    assert len(payload["empirical"]) == 10
    assert payload["threshold_upper"] >= 1


def test_simulate_lower_reports(capsys, tmp_path):
    out_path = tmp_path / "lo.json"
    code, _, _ = run_cli(capsys, [
        "simulate-lower", "--m", "12", "--p", "0.5", "--delta", "0.25",
        "--trials", "10", "--seed", "5", "--json", str(out_path)])
    assert code == 0
    payload = json.loads(out_path.read_text())
    assert payload["kind"] == "simulate-lower"
    assert payload["frac_below_lower"] == 0.0


def test_verify_lemma_exit_zero(capsys, tmp_path):
    out_path = tmp_path / "lem.json"
    code, out, _ = run_cli(capsys, ["verify-lemma", "--count", "15",
                                    "--n-max", "5", "--seed", "3",
                                    "--json", str(out_path)])
    assert code == 0
    assert "0 counterexamples" in out
    payload = json.loads(out_path.read_text())
    assert payload["counterexamples"] == []


def test_chernoff_subcommand(capsys, tmp_path):
    out_path = tmp_path / "ch.json"
    code, _, _ = run_cli(capsys, ["chernoff", "--r", "40", "--p", "0.5",
                                  "--gamma", "0.5", "--trials", "2000",
                                  "--seed", "1", "--json", str(out_path)])
    assert code == 0
    payload = json.loads(out_path.read_text())
    assert payload["within_bound"] is True
    assert payload["consistent_with_exact"] is True


def test_select_subcommand(capsys, tmp_path):
    rng = np.random.default_rng(8)
    a = rng.normal(size=40)
    c = rng.normal(size=40)
    csv_path = write_csv(tmp_path, "features.csv", ["a", "b", "c"],
                         np.column_stack([a, a + 0.01 * rng.normal(size=40), c]))
    out_path = tmp_path / "sel.json"
    inst_path = tmp_path / "inst.json"
    code, out, _ = run_cli(capsys, [
        "select", "--input", csv_path, "--lambda-c", "0.8", "--lambda-mc", "5",
        "--method", "exact", "--json", str(out_path),
        "--instance-json", str(inst_path)])
    assert code == 0
    payload = json.loads(out_path.read_text())
    assert payload["witness_checked"] is True
    assert len({"a", "b"} & set(payload["selected"])) == 1
    assert "c" in payload["selected"]
    inst = Instance.from_json(inst_path.read_text())
    assert inst.m == 3 and (1, 2) in inst.edges


def test_unknown_subcommand_exits_one(capsys):
    code, _, err = run_cli(capsys, ["frobnicate"])
    assert code == 1
    assert "usage" in err.lower()


def test_missing_subcommand_exits_one(capsys):
    code, _, err = run_cli(capsys, [])
    assert code == 1
    assert "usage" in err.lower()


def test_domain_error_exits_one(capsys):
    code, _, err = run_cli(capsys, ["simulate-upper", "--m", "10", "--p", "1.5",
                                    "--trials", "2"])
    assert code == 1
    assert "error" in err


def test_budget_error_exits_two(capsys, tmp_path):
    rng = np.random.default_rng(0)
    names = [f"c{i}" for i in range(61)]
    csv_path = write_csv(tmp_path, "wide.csv", names, rng.normal(size=(70, 61)))
    code, _, err = run_cli(capsys, ["select", "--input", csv_path,
                                    "--lambda-c", "0.9", "--lambda-mc", "10",
                                    "--method", "exact"])
    assert code == 2
    assert "greedy" in err


def test_missing_file_exits_one(capsys):
    code, _, err = run_cli(capsys, ["select", "--input", "/nonexistent.csv",
                                    "--lambda-c", "0.8", "--lambda-mc", "5"])
    assert code == 1


@pytest.mark.parametrize("argv", [
    ["bounds", "--m", "100", "--p", "0.5", "--gamma", "1"],
    ["simulate-upper", "--m", "10", "--p", "0.5", "--trials", "5", "--seed", "2"],
    ["simulate-lower", "--m", "10", "--p", "0.5", "--trials", "5", "--seed", "2"],
    ["verify-lemma", "--count", "10", "--n-max", "5", "--seed", "3"],
    ["chernoff", "--r", "20", "--p", "0.5", "--trials", "500", "--seed", "4"],
])
def test_repeat_runs_are_byte_identical(capsys, tmp_path, argv):
    first, second = tmp_path / "a.json", tmp_path / "b.json"
    code1, out1, _ = run_cli(capsys, argv + ["--json", str(first)])
    code2, out2, _ = run_cli(capsys, argv + ["--json", str(second)])
    assert code1 == code2 == 0
    assert first.read_bytes() == second.read_bytes()
    assert out1 == out2
