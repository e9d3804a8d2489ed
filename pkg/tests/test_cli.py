import csv
import io
import json

import pytest

from stripdep.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_simulate_json(capsys):
    code, out, err = run_cli(capsys, "simulate", "--K", "30", "--runs", "500",
                             "--seed", "3", "--stat", "roots")
    assert code == 0
    payload = json.loads(out)
    assert payload["seed"] == 3
    assert payload["config"]["runs"] == 500
    assert abs(payload["statistics"]["roots"]["mean"] - 10) < 1.0
    assert "simulated 500 runs" in err


def test_simulate_rejects_small_width(capsys):
    code, _, err = run_cli(capsys, "simulate", "--K", "2")
    assert code == 2
    assert ">= 3" in err


def test_simulate_gap_statistics_need_lengths(capsys):
    code, _, err = run_cli(capsys, "simulate", "--K", "30", "--stat", "gaps")
    assert code == 2


def test_simulate_outputs_are_deterministic(capsys):
    argv = ("simulate", "--K", "40", "--runs", "400", "--seed", "1",
            "--stat", "gaps", "--i", "1", "--i", "2")
    code1, out1, _ = run_cli(capsys, *argv)
    code2, out2, _ = run_cli(capsys, *argv)
    assert code1 == code2 == 0
    assert out1 == out2


def test_simulate_csv_histograms(capsys):
    code, out, _ = run_cli(capsys, "simulate", "--K", "20", "--runs", "300",
                           "--seed", "2", "--stat", "roots", "--format", "csv")
    assert code == 0
    lines = [l for l in out.splitlines() if not l.startswith("#")]
    rows = list(csv.reader(io.StringIO("\n".join(lines))))
    assert rows[0] == ["statistic", "bin", "count"]
    body = [r for r in rows[1:] if r]
    assert sum(int(r[2]) for r in body) == 300
    assert all(r[0] == "roots" for r in body)
    # config is embedded as comments
    assert any(l.startswith("# K=20") for l in out.splitlines())


def test_simulate_gnuplot_files(tmp_path, capsys):
    prefix = str(tmp_path / "hist_")
    code, _, err = run_cli(capsys, "simulate", "--K", "15", "--runs", "200",
                           "--seed", "5", "--stat", "roots", "--gnuplot", prefix)
    assert code == 0
    data = (tmp_path / "hist_roots.dat").read_text()
    lines = [l for l in data.splitlines() if not l.startswith("#")]
    assert sum(int(l.split()[1]) for l in lines) == 200


def test_exact_roots_json(capsys):
    code, out, _ = run_cli(capsys, "exact-roots", "--K", "5")
    assert code == 0
    payload = json.loads(out)
    row = payload["results"][0]
    assert row["mean"] == "5/3"
    assert row["variance"] == "2/9"
    assert row["coefficients"] == ["0/1", "1/3", "2/3"]


def test_exact_roots_range_csv(capsys):
    code, out, _ = run_cli(capsys, "exact-roots", "--kmax", "6", "--format", "csv")
    assert code == 0
    body = [l for l in out.splitlines() if l and not l.startswith("#")]
    assert body[0] == "K,mean,variance,coefficients"
    assert len(body) == 1 + 4


def test_exact_gaps_json(capsys):
    code, out, _ = run_cli(capsys, "exact-gaps", "--K", "4", "--i", "1")
    assert code == 0
    row = json.loads(out)["results"][0]
    assert row["coefficients"] == ["2/3", "0/1", "1/3"]
    assert row["mean"] == "2/3"


def test_exact_gaps_out_of_range(capsys):
    code, _, err = run_cli(capsys, "exact-gaps", "--K", "4", "--i", "9")
    assert code == 2


def test_oracle_json(capsys):
    code, out, _ = run_cli(capsys, "oracle", "--K", "4")
    assert code == 0
    payload = json.loads(out)
    assert payload["results"][0]["support"] == {"1": "2/3", "2": "1/3"}


def test_oracle_resource_guard(capsys):
    code, _, err = run_cli(capsys, "oracle", "--K", "12")
    assert code == 3
    assert "capped" in err


def test_verify_roots_suite(capsys):
    code, out, _ = run_cli(capsys, "verify", "--suite", "roots", "--kmax", "12")
    assert code == 0
    assert "PASS: [roots] root-count mean K/3" in out
    assert out.strip().endswith("OK: all checks passed")


def test_verify_oracle_guard(capsys):
    code, _, err = run_cli(capsys, "verify", "--suite", "oracle", "--kmax", "11")
    assert code == 3


def test_unknown_flag_exits_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["simulate", "--bogus"])
    assert exc.value.code == 2


def test_config_file_defaults_and_flag_override(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("K=5\nformat=json\n")
    code, out, _ = run_cli(capsys, "--config", str(cfg), "exact-roots")
    assert code == 0
    assert json.loads(out)["results"][0]["K"] == 5
    code, out, _ = run_cli(capsys, "--config", str(cfg), "exact-roots", "--K", "7")
    assert code == 0
    assert json.loads(out)["results"][0]["K"] == 7


def test_config_file_rejects_unknown_key(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("bogus=1\n")
    code, _, err = run_cli(capsys, "--config", str(cfg), "exact-roots", "--K", "5")
    assert code == 2
    assert "unknown config key" in err


def test_out_writes_file(tmp_path, capsys):
    path = tmp_path / "roots.json"
    code, out, _ = run_cli(capsys, "exact-roots", "--K", "4", "--out", str(path))
    assert code == 0
    assert out == ""
    assert json.loads(path.read_text())["results"][0]["K"] == 4
