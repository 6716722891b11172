import csv
import io
import json
import subprocess
import sys

import numpy as np
import pytest

from dipolewave.cli import main
from dipolewave.figures import FigureTable, SweepSpec, cmd_fig1, cmd_fig3, cmd_overlap, cmd_stats, cmd_sweep
from dipolewave.errors import DomainError


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def parse_csv(text):
    lines = [l for l in text.splitlines() if not l.startswith("#")]
    return list(csv.DictReader(io.StringIO("\n".join(lines))))


def test_overlap_quabis(capsys):
    code, out, _ = run_cli(capsys, "overlap", "--family", "quabis", "--a", "0", "--theta-deg", "90")
    assert code == 0
    row = parse_csv(out)[0]
    assert float(row["p"]) == pytest.approx(64 / 147, abs=1e-9)
    assert float(row["norm_const"]) == pytest.approx(np.pi / 2, abs=1e-12)


def test_overlap_other_families(capsys):
    code, out, _ = run_cli(capsys, "overlap", "--family", "truncated-dipole", "--pol", "longitudinal",
                           "--theta-deg", "180")
    assert code == 0 and float(parse_csv(out)[0]["p"]) == pytest.approx(1.0, abs=1e-12)
    code, out, _ = run_cli(capsys, "overlap", "--family", "sine", "--theta-deg", "90")
    assert code == 0 and float(parse_csv(out)[0]["p"]) == pytest.approx(0.426667, abs=1e-6)
    code, out, _ = run_cli(capsys, "overlap", "--family", "dipole", "--M", "1")
    assert code == 0 and float(parse_csv(out)[0]["p"]) == pytest.approx(1.0, abs=1e-10)


@pytest.mark.parametrize("argv", [
    ["overlap", "--family", "sine", "--theta-deg", "120"],
    ["overlap", "--family", "quabis", "--theta-deg", "0"],
    ["overlap", "--family", "quabis", "--a", "-1"],
    ["overlap", "--family", "nope"],
    ["sweep", "--variable", "theta"],
    ["sweep", "--variable", "a", "--range", "2", "1"],
])
def test_domain_errors_exit_2(capsys, argv):
    code, _, err = run_cli(capsys, *argv)
    assert code == 2 and "error" in err


def test_fig1_landmarks():
    t = cmd_fig1()
    assert len(t.rows) == 801
    assert t.rows[0][1:] == [0.0] * 7
    row = t.rows[100]
    assert row[0] == pytest.approx(1.0)
    assert row[1] == pytest.approx(17 / 25, abs=1e-12)
    assert all(abs(v - 1) < 0.5 for v in t.rows[-1][1:])
    assert all(np.isfinite(v) for r in t.rows for v in r)


def test_fig3_landmarks():
    t = cmd_fig3()
    theta = np.array(t.column("theta"))
    i = int(np.argmin(abs(theta - np.pi / 2)))
    assert t.column("p_trans_max")[i] == pytest.approx(0.5, abs=1e-12)
    assert t.column("p_long_max")[i] == pytest.approx(0.5, abs=1e-12)
    assert t.column("p_sine")[i] == pytest.approx(32 / 75, abs=1e-8)
    assert t.column("p_sine")[i] < 64 / 147
    j = int(np.argmin(abs(theta - np.pi / 3)))
    assert t.column("p_trans_max")[j] > t.column("p_long_max")[j]
    assert all(np.isnan(v) for v, th in zip(t.column("p_sine"), theta) if th > np.pi / 2 + 1e-9)
    assert "nan" in t.to_csv()


def test_stats_closed_and_oracle(capsys):
    code, out, _ = run_cli(capsys, "stats", "--eta", "1", "0", "--s", "1e-4", "--mode", "both", "--tau", "50")
    row = parse_csv(out)[0]
    assert float(row["g2_0_closed"]) == 9
    assert float(row["g2_0_oracle"]) == pytest.approx(9, rel=0.01)
    assert float(row["g2_tau_50"]) == pytest.approx(1, abs=1e-3)
    assert float(row["rel_dev_g2"]) < 0.01

    row = cmd_stats(4, 0, 1e-4, 0, mode="both")
    values = dict(zip(row.columns, row.rows[0]))
    assert values["F_over_F0_closed"] == 4
    assert values["F_over_F0_oracle"] == pytest.approx(4, rel=0.01)
    assert values["g2_0_oracle"] <= 1e-2

    values = dict(zip(*[(t := cmd_stats(1, 0, 1e4, 0, mode="oracle")).columns, t.rows[0]]))
    assert values["g2_0_oracle"] == pytest.approx(1, abs=0.05)


def test_stats_tokens():
    t = cmd_stats(2, 0, 1e-4, 0, mode="closed", taus=[1.0])
    csv_text = t.to_csv()
    assert ",inf," in csv_text and csv_text.strip().endswith("nan")
    t = cmd_stats(2, 0, 0.0, 0, mode="oracle")
    assert "undefined" in t.to_csv()


def test_json_mirror(capsys):
    code, out, _ = run_cli(capsys, "stats", "--eta", "2", "0", "--mode", "closed", "--format", "json")
    doc = json.loads(out)
    assert code == 0
    assert doc["columns"][5] == "g2_0_closed" and doc["rows"][0][5] == "inf"
    assert doc["meta"]["command"] == "stats"


def test_reruns_are_byte_identical(tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    assert main(["fig2", "--steps", "19", "--out", str(a)]) == 0
    assert main(["fig2", "--steps", "19", "--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()
    assert "input_hash" in a.read_text()


def test_config_file_and_flag_override(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"family": "sine", "theta_deg": 60, "format": "json"}))
    code, out, _ = run_cli(capsys, "overlap", "--config", str(cfg))
    doc = json.loads(out)
    assert doc["rows"][0][0] == "sine" and doc["rows"][0][2] == pytest.approx(np.pi / 3)
    code, out, _ = run_cli(capsys, "overlap", "--config", str(cfg), "--theta-deg", "90", "--format", "csv")
    row = parse_csv(out)[0]
    assert float(row["p"]) == pytest.approx(32 / 75, abs=1e-9)


def test_sweeps(capsys):
    code, out, _ = run_cli(capsys, "sweep", "--variable", "theta", "--range", "10", "180", "--steps", "18",
                           "--fixed", "a=1")
    rows = parse_csv(out)
    assert code == 0 and len(rows) == 18
    assert all(float(r["p_quabis"]) <= float(r["p_long_max"]) for r in rows)
    code, out, _ = run_cli(capsys, "sweep", "--variable", "abs_eta", "--range", "0", "8", "--steps", "9",
                           "--fixed", "eta_phase=0", "--fixed", "s=1e-4")
    rows = parse_csv(out)
    assert rows[2]["g2_0_closed"] == "inf"
    t = cmd_sweep(SweepSpec("s", 1e-4, 1e4, 5, {"abs_eta": 1.0, "mode": "oracle"}))
    assert t.columns[0] == "s" and len(t.rows) == 5
    t = cmd_sweep(SweepSpec("delta", -2, 2, 3, {}))
    assert len(t.rows) == 3
    with pytest.raises(DomainError):
        SweepSpec("gamma", 0, 1, 3)


def test_table_shape_guard():
    t = FigureTable(["a", "b"])
    with pytest.raises(ValueError):
        t.add_row([1])


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "dipolewave", "overlap", "--theta-deg", "200"],
                         capture_output=True, text=True)
    assert res.returncode == 2


def test_overlap_table_meta():
    t = cmd_overlap("quabis", 1.0, 1.0)
    assert t.meta["grid"] == {"n_alpha": 128, "n_beta": 256}


def test_numeric_failure_exit_3(monkeypatch, capsys):
    from dipolewave import figures
    from dipolewave.errors import NumericalError

    def boom(*a, **k):
        raise NumericalError("synthetic")

    monkeypatch.setattr(figures, "cmd_fig1", boom)
    code, _, err = run_cli(capsys, "fig1")
    assert code == 3 and "numerical failure" in err
