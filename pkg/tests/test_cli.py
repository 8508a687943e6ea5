import json
import subprocess
import sys
from pathlib import Path

import pytest

from hadwiger.cli import EXIT_INPUT, EXIT_OK, EXIT_OPEN, main

DATA = Path(__file__).parent / "data"


def run(argv, tmp_path, name="out"):
    out = tmp_path / name
    code = main(argv + ["--out", str(out)])
    return code, (out.read_text() if out.exists() else None)


def test_gen_reproduces_golden(tmp_path):
    code, text = run(["gen", "--spec", str(DATA / "spec_d2_r3_seed1.json")], tmp_path)
    assert code == EXIT_OK
    assert text == (DATA / "inst_d2_r3_seed1.json").read_text()


def test_gen_to_stdout(capsys):
    assert main(["gen", "--spec", str(DATA / "spec_transversal.json")]) == EXIT_OK
    assert capsys.readouterr().out == (DATA / "inst_transversal.json").read_text()


def test_gen_failure_is_an_input_error(tmp_path):
    spec = tmp_path / "spec.json"
    spec.write_text(json.dumps({"d": 2, "k": 1, "r": 2, "members_per_color": 1, "hard": True, "retries": 3}))
    assert main(["gen", "--spec", str(spec)]) == EXIT_INPUT
    spec.write_text(json.dumps({"d": 2, "k": 3, "r": 2}))
    assert main(["gen", "--spec", str(spec)]) == EXIT_INPUT


def test_check_transversal(tmp_path):
    code, text = run(["check-transversal", str(DATA / "inst_transversal.json")], tmp_path)
    assert code == EXIT_OK
    assert text == (DATA / "cert_transversal.json").read_text()
    code, text = run(["check-transversal", str(DATA / "inst_d2_r3_seed1.json"), "--method", "cells"],
                     tmp_path)
    assert code == EXIT_OPEN and json.loads(text)["kind"] == "open"


def test_check_consistency(tmp_path):
    code, text = run(["check-consistency", str(DATA / "inst_d2_r3_seed1.json")], tmp_path)
    assert code == EXIT_OK and json.loads(text)["kind"] == "violation"


def test_verify(tmp_path):
    code, text = run(["verify", str(DATA / "inst_d2_r3_seed1.json")], tmp_path)
    assert code == EXIT_OK
    assert text == (DATA / "verdict_d2_r3_seed1.json").read_text()
    code, text = run(["verify", str(DATA / "inst_transversal.json"), "--both"], tmp_path)
    payload = json.loads(text)
    assert code == EXIT_OK and payload["certificate"]["kind"] == "transversal"
    assert "transversal" in payload


def test_verify_open_case(tmp_path):
    # Two colors of three blocking triangles each, below the r = 3 bound.
    inst = {"d": 2, "r": 2, "sets": [
        {"id": f"a{i}", "color": 1, "vertices": [[str(x - 1), str(y - 1)], [str(x + 1), str(y - 1)], [str(x), str(y + 1)]]}
        for i, (x, y) in enumerate([(0, 0), (20, 0), (10, 17)])] + [
        {"id": f"b{i}", "color": 2, "vertices": [[str(x - 1), str(y - 1)], [str(x + 1), str(y - 1)], [str(x), str(y + 1)]]}
        for i, (x, y) in enumerate([(50, 0), (70, 0), (60, 17)])],
        "ordering": {"k": 1, "points": {m: [str(i)] for i, m in enumerate(
            ["a0", "a1", "a2", "b0", "b1", "b2"])}}}
    path = tmp_path / "open.json"
    path.write_text(json.dumps(inst))
    code, text = run(["verify", str(path)], tmp_path)
    assert code == EXIT_OPEN and json.loads(text)["certificate"]["kind"] == "open"


def test_scan_zero_cell(tmp_path):
    code, text = run(["scan-zero-cell", str(DATA / "inst_d2_r3_seed1.json"), "--variant", "convslice"],
                     tmp_path)
    assert code == EXIT_OK
    payload = json.loads(text)
    assert {"cell", "variant", "points", "weights", "radon_pair", "separator"} <= set(payload)
    code, _ = run(["scan-zero-cell", str(DATA / "inst_transversal.json"), "--variant", "join"], tmp_path)
    assert code == EXIT_INPUT


def test_complex_dump(tmp_path):
    code, text = run(["complex", str(DATA / "inst_tiny.json")], tmp_path)
    assert code == EXIT_OK and len(json.loads(text)) == 80


def test_plot(tmp_path):
    code, text = run(["plot", str(DATA / "inst_transversal.json"), str(DATA / "cert_transversal.json")],
                     tmp_path)
    assert code == EXIT_OK and text == (DATA / "plot_transversal.svg").read_text()
    code, text = run(["plot", str(DATA / "inst_d2_r3_seed1.json"), str(DATA / "verdict_d2_r3_seed1.json")],
                     tmp_path)
    assert code == EXIT_OK and text == (DATA / "plot_d2_r3_seed1.svg").read_text()


def test_probe(tmp_path):
    code, text = run(["probe-r32", "--rmin", "3", "--rmax", "3", "--seeds", "2"], tmp_path)
    assert code == EXIT_OK
    (row,) = json.loads(text)["rows"]
    assert row["r"] == 3 and row["seeds"] == 2
    assert main(["probe-r32", "--rmin", "5", "--rmax", "4"]) == EXIT_INPUT


def test_input_errors(tmp_path, capsys):
    assert main(["verify", str(tmp_path / "missing.json")]) == EXIT_INPUT
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert main(["verify", str(bad)]) == EXIT_INPUT
    bad.write_text(json.dumps({"d": 2}))
    assert main(["check-consistency", str(bad)]) == EXIT_INPUT
    assert "error" in capsys.readouterr().err


def test_usage_errors_exit_with_input_code():
    with pytest.raises(SystemExit) as exc:
        main(["scan-zero-cell", str(DATA / "inst_tiny.json"), "--variant", "bogus"])
    assert exc.value.code == EXIT_INPUT
    with pytest.raises(SystemExit) as exc:
        main([])
    assert exc.value.code == EXIT_INPUT


def test_console_entry_point():
    res = subprocess.run([sys.executable, "-m", "hadwiger.cli", "check-transversal",
                          str(DATA / "inst_transversal.json")], capture_output=True, text=True)
    assert res.returncode == EXIT_OK
    assert res.stdout == (DATA / "cert_transversal.json").read_text()
