import io
import json
import subprocess
import sys

import pytest

from fraclap.cli import CSV_HEADER, SCAN_COLUMNS, load_config, main


def run(argv):
    buf = io.StringIO()
    code = main(argv, out=buf)
    return code, buf.getvalue()


def exit_code(argv):
    try:
        return run(argv)[0]
    except SystemExit as exc:
        return exc.code


def test_spectrum_csv():
    code, text = run(["spectrum", "--dim", "2", "--s", "0.5", "--count", "6"])
    lines = text.splitlines()
    assert code == 0 and lines[0] == CSV_HEADER
    assert lines[1] == "eigenvalue,l,n,mult,conv_err"
    assert len(lines) == 8
    first = lines[2].split(",")
    assert first[1:4] == ["0", "1", "1"]


def test_spectrum_json_mirrors_csv():
    _, text = run(["spectrum", "--dim", "3", "--s", "0.3", "--count", "4", "--format", "json"])
    rows = json.loads(text)
    assert [r["l"] for r in rows][:2] == [0, 1] and rows[1]["mult"] == 3
    assert set(rows[0]) == {"eigenvalue", "l", "n", "mult", "conv_err"}


def test_usage_errors_exit_2():
    assert exit_code(["spectrum", "--dim", "2", "--s", "0.5", "--count", "0"]) == 2
    assert exit_code(["spectrum", "--dim", "2", "--s", "1.5"]) == 2
    assert exit_code(["scan", "--s", ""]) == 2
    assert exit_code(["scan", "--dims", "1..3"]) == 2
    assert exit_code(["verify", "--profile", "bogus"]) == 2
    assert exit_code(["polarize", "--mode", "support", "--a", "0.9"]) == 2
    assert exit_code(["polarize", "--a", "left"]) == 2


def test_numeric_failure_exit_3():
    # 3 radial levels per branch cannot resolve 40 entries
    assert exit_code(["spectrum", "--dim", "2", "--s", "0.5", "--count", "40", "--M", "6"]) == 3


def test_scan_single_point_and_chart(tmp_path):
    out = tmp_path / "scan.csv"
    code, _ = run(["scan", "--dims", "3", "--s", "0.5", "--output", str(out), "--jobs", "1"])
    lines = out.read_text().splitlines()
    assert code == 0
    assert lines[:2] == [CSV_HEADER, ",".join(SCAN_COLUMNS)]
    row = dict(zip(SCAN_COLUMNS, lines[2].split(",")))
    assert row["N"] == "3" and row["certified"] == "true"
    assert float(row["gap"]) == pytest.approx(float(row["lambda_circ"]) - float(row["lambda_ominus"]), rel=1e-10)
    assert (tmp_path / "gap_N3.dat").read_text().splitlines()[1].split()[0] == "0.5"


def test_scan_deterministic_across_workers(tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    args = ["scan", "--dims", "2..4", "--s", "0.3,0.7"]
    assert run(args + ["--output", str(a), "--jobs", "1"])[0] == 0
    assert run(args + ["--output", str(b), "--jobs", "3"])[0] == 0
    assert a.read_bytes() == b.read_bytes()
    ns = [line.split(",")[0] for line in a.read_text().splitlines()[2:]]
    assert ns == ["2", "2", "3", "3", "4", "4"]


def test_config_precedence(tmp_path, monkeypatch):
    cfg = tmp_path / "fraclap.cfg"
    cfg.write_text("# batch settings\nM = 30\nseed=7\nsamples = 2e4\n")
    assert load_config(cfg) == {"M": 30, "seed": 7, "samples": 20000}
    monkeypatch.setenv("FRACLAP_CONFIG", str(cfg))
    _, text = run(["scan", "--dims", "2", "--s", "0.5", "--jobs", "1"])
    assert text.splitlines()[2].split(",")[2] == "30"
    _, text = run(["scan", "--dims", "2", "--s", "0.5", "--jobs", "1", "--M", "40"])
    assert text.splitlines()[2].split(",")[2] == "40"
    monkeypatch.delenv("FRACLAP_CONFIG")
    _, text = run(["scan", "--dims", "2", "--s", "0.5", "--jobs", "1"])
    assert text.splitlines()[2].split(",")[2] == "50"
    bad = tmp_path / "bad.cfg"
    bad.write_text("colour = blue\n")
    assert exit_code(["scan", "--config", str(bad)]) == 2


def test_jobs_env_override(monkeypatch):
    monkeypatch.setenv("FRACLAP_JOBS", "zero")
    assert exit_code(["scan", "--dims", "2", "--s", "0.5"]) == 2
    monkeypatch.setenv("FRACLAP_JOBS", "1")
    assert exit_code(["scan", "--dims", "2", "--s", "0.5"]) == 0


def test_polarize_modes():
    code, text = run(["polarize", "--mode", "support", "--dim", "2", "--s", "0.5", "--a", "auto"])
    rep = json.loads(text)
    assert code == 0 and rep["status"] == "pass"
    assert rep["a"] == pytest.approx((1 - rep["nodal_radius"]) / 4)
    code, text = run(["polarize", "--mode", "lemma2", "--samples", "20000", "--seed", "7"])
    rep = json.loads(text)
    assert code == 0 and all(c["status"] == "pass" for c in rep["checks"])
    code, text = run(["polarize", "--mode", "demo", "--dim", "3"])
    assert code == 0 and json.loads(text)["status"] == "pass"


def test_polarize_output_deterministic():
    args = ["polarize", "--mode", "lemma2", "--samples", "20000", "--seed", "3"]
    assert run(args)[1] == run(args)[1]


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "fraclap", "spectrum", "--dim", "2", "--s", "0.5", "--count", "2"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.startswith(CSV_HEADER)
