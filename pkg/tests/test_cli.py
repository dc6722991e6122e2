import json
import subprocess
import sys

import pytest

from sextic_h0.cli import build_parser, main, read_config


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_field_json(capsys):
    code, out, _ = run(["field", "--p", "7", "--d", "7", "--json"], capsys)
    assert code == 0
    doc = json.loads(out)
    assert doc["delta_F"] == -16807 and len(doc["gram"]) == 6


def test_field_text(capsys):
    code, out, _ = run(["field", "--p", "9", "--d", "3"], capsys)
    assert code == 0 and "roots of unity: 18" in out


def test_global_flag_before_subcommand(capsys):
    code, out, _ = run(["--json", "units", "--p", "7"], capsys)
    assert code == 0
    doc = json.loads(out)
    assert set(doc) >= {"lambda", "regulator", "b1", "b2", "fundamental_units"}
    assert abs(doc["lambda"] - 1.44975) < 1e-4


def test_units_precision(capsys):
    code, out, _ = run(["units", "--p", "7", "--json", "--precision", "200"], capsys)
    assert code == 0
    assert abs(sum(json.loads(out)["b1"])) < 1e-12


def test_short_vectors_csv(capsys, tmp_path):
    out_file = tmp_path / "sv.csv"
    code, _, _ = run(["short-vectors", "--p", "7", "--d", "1", "--bound", "12", "--out", str(out_file)], capsys)
    assert code == 0
    lines = out_file.read_text().splitlines()
    assert lines[0] == "norm,coord1,coord2,coord3,coord4,coord5,coord6"
    assert all(int(l.split(",")[0]) <= 12 for l in lines[1:])


def test_short_vectors_subfield(capsys):
    code, out, _ = run(["short-vectors", "--p", "7", "--d", "1", "--bound", "12", "--order", "k", "--json"], capsys)
    assert code == 0
    vs = json.loads(out)["vectors"]
    assert {v["norm"] for v in vs} == {6, 12}


def test_theta_json(capsys):
    code, out, _ = run(["theta", "--p", "7", "--d", "7", "--alpha1", "0", "--alpha2", "0", "--eps", "1e-12",
                        "--json"], capsys)
    assert code == 0
    doc = json.loads(out)
    for key in ("u", "w", "k0", "tail", "h0", "sigma1", "sigma2", "sigma3", "counts"):
        assert key in doc
    assert doc["tail"] < 1e-12


def test_scan_torus(capsys, tmp_path):
    csv_path = tmp_path / "grid.csv"
    code, out, _ = run(["scan-torus", "--p", "9", "--d", "3", "--grid", "16", "--json", "--csv", str(csv_path)],
                       capsys)
    assert code == 0
    assert json.loads(out)["max_location"] == [0.0, 0.0]
    assert len(csv_path.read_text().splitlines()) == 16 * 16 + 1


def test_verify_subset(capsys, tmp_path):
    out_file = tmp_path / "report.json"
    code, _, err = run(["verify", "--only", "roots.*", "--out", str(out_file), "--reproducible"], capsys)
    assert code == 0
    doc = json.loads(out_file.read_text())
    assert [c["check_id"] for c in doc["checks"]] == ["roots.7_7", "roots.7_3", "roots.7_1"]
    assert doc["meta"]["timestamp"].startswith("1970")
    assert "3 checks, 3 passed" in err


def test_verify_failure_exit_code(capsys):
    code, out, _ = run(["verify", "--only", "tail.far_shifted", "--format", "csv"], capsys)
    assert code == 1
    assert "tail.far_shifted" in out and ",fail," in out


def test_config_file_and_override(capsys, tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# settings\njson = true\nprecision = 120\n")
    assert read_config(str(cfg)) == {"json": True, "precision": 120}
    code, out, _ = run(["--config", str(cfg), "units", "--p", "9"], capsys)
    assert code == 0 and json.loads(out)["p"] == 9
    code, _, err = run(["--config", str(cfg), "--precision", "10", "units", "--p", "9"], capsys)
    assert code == 2 and "precision" in err


@pytest.mark.parametrize("argv", [
    ["bogus"],
    ["field", "--p", "7"],
    ["field", "--p", "8", "--d", "1"],
    ["field", "--p", "7", "--d", "4"],
    ["units", "--p", "7", "--threads", "0"],
    ["short-vectors", "--p", "7", "--d", "1", "--bound", "abc"],
])
def test_usage_errors(argv, capsys):
    assert run(argv, capsys)[0] == 2


def test_bad_config(capsys, tmp_path):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("colour = blue\n")
    assert run(["--config", str(cfg), "units", "--p", "7"], capsys)[0] == 2


def test_parser_lists_commands():
    text = build_parser().format_help()
    for cmd in ("field", "units", "short-vectors", "theta", "scan-torus", "verify"):
        assert cmd in text


def test_console_script():
    res = subprocess.run([sys.executable, "-m", "sextic_h0.cli", "--version"], capture_output=True, text=True)
    assert res.returncode == 0 and "sextic-h0" in res.stdout
