"""CLI tests: exit codes, output schemas, round-trips, determinism."""

import json
import subprocess
import sys
from pathlib import Path

import pytest

CSV_HEADER = "p,K,K_route,L,L_route,S,G,paper_K,paper_L,dev_K,dev_L"


def run_cli(*args: str) -> subprocess.CompletedProcess:
    cmd = [sys.executable, "-m", "rosenthal", *args]
    return subprocess.run(cmd, capture_output=True, text=True)


def test_help():
    cp = run_cli("--help")
    assert cp.returncode == 0
    for sub in ("eval", "table", "extrema", "bounds", "mc"):
        assert sub in cp.stdout


def test_eval_even_integer_is_exact():
    cp = run_cli("eval", "--p", "6")
    assert cp.returncode == 0, cp.stderr
    assert "K = 31 (combinatorial, exact)" in cp.stdout
    assert "L = 41 (combinatorial, exact)" in cp.stdout
    assert "1.772" in cp.stdout  # 31^(1/6)
    assert "1.856" in cp.stdout  # 41^(1/6)


def test_eval_p2_all_ones():
    cp = run_cli("eval", "--p", "2")
    assert cp.returncode == 0
    assert "K = 1" in cp.stdout and "L = 1" in cp.stdout


def test_eval_below_domain_is_usage_error():
    cp = run_cli("eval", "--p", "1.5")
    assert cp.returncode == 2


def test_table_row_count_and_schema(tmp_path: Path):
    out = tmp_path / "table.csv"
    cp = run_cli("table", "--p-min", "2", "--p-max", "21", "--step", "0.5",
                 "--format", "csv", "--out", str(out))
    assert cp.returncode == 0, cp.stderr
    lines = out.read_text().strip().splitlines()
    assert lines[0] == CSV_HEADER
    assert len(lines) == 1 + 39


def test_table_exact_row():
    cp = run_cli("table", "--p-min", "8", "--p-max", "9", "--step", "1",
                 "--format", "csv")
    assert cp.returncode == 0
    row = cp.stdout.strip().splitlines()[1].split(",")
    header = CSV_HEADER.split(",")
    rec = dict(zip(header, row))
    assert rec["K"] == "379" and rec["L"] == "715"
    assert rec["K_route"] == rec["L_route"] == "combinatorial"
    assert float(rec["dev_K"]) == 0.0 and float(rec["dev_L"]) == 0.0


def test_table_row_13_matches_printed():
    cp = run_cli("table", "--p-min", "13", "--p-max", "14", "--step", "1",
                 "--format", "csv")
    rec = dict(zip(CSV_HEADER.split(","),
                   cp.stdout.strip().splitlines()[1].split(",")))
    assert abs(float(rec["dev_K"])) <= 5e-4
    assert abs(float(rec["dev_L"])) <= 5e-4
    assert abs(float(rec["K"]) / 788891.0 - 1.0) <= 5e-4
    assert abs(float(rec["L"]) / 3.63328e6 - 1.0) <= 5e-4


def test_table_errata_file(tmp_path: Path):
    out = tmp_path / "t.csv"
    cp = run_cli("table", "--p-min", "8.5", "--p-max", "9.5", "--step", "0.5",
                 "--format", "csv", "--out", str(out))
    assert cp.returncode == 0
    errata = (tmp_path / "t.csv.errata.txt").read_text()
    assert "p=9 quantity=K paper=1126.5" in errata
    assert "computed=1516.482" in errata
    # standing findings are carried as comment lines
    assert "# p=4 quantity=dK/dp(4-0)" in errata


def test_errata_lines_are_machine_parseable(tmp_path: Path):
    import re

    out = tmp_path / "full.csv"
    run_cli("table", "--p-min", "2", "--p-max", "21", "--step", "0.5",
            "--format", "csv", "--out", str(out))
    pattern = re.compile(
        r"^p=\S+ quantity=[KL] paper=\S+ computed=\S+ rel_dev=[+-]\S+$")
    lines = (tmp_path / "full.csv.errata.txt").read_text().splitlines()
    findings = [l for l in lines if not l.startswith("#")]
    assert findings, "the known table defects must be reported"
    for line in findings:
        assert pattern.match(line), line
        fields = dict(kv.split("=") for kv in line.split())
        assert float(fields["computed"]) > 0


def test_table_json_round_trip():
    cp = run_cli("table", "--p-min", "2", "--p-max", "6", "--step", "0.5",
                 "--format", "json")
    assert cp.returncode == 0
    parsed = json.loads(cp.stdout)
    re_rendered = json.dumps(parsed, indent=2, sort_keys=True) + "\n"
    assert re_rendered == cp.stdout


def test_table_unwritable_path_is_io_error(tmp_path: Path):
    cp = run_cli("table", "--p-min", "2", "--p-max", "3", "--step", "1",
                 "--out", str(tmp_path / "no" / "such" / "dir" / "t.csv"))
    assert cp.returncode == 3


def test_table_bad_range_is_usage_error():
    cp = run_cli("table", "--p-min", "5", "--p-max", "4", "--step", "0.5")
    assert cp.returncode == 2


def test_table_threads_match_serial():
    a = run_cli("table", "--p-min", "2", "--p-max", "9", "--step", "0.5",
                "--format", "csv")
    b = run_cli("table", "--p-min", "2", "--p-max", "9", "--step", "0.5",
                "--format", "csv", "--threads", "4")
    assert a.stdout == b.stdout


def test_extrema_full_run():
    cp = run_cli("extrema")
    assert cp.returncode == 0, cp.stdout + cp.stderr
    assert "C3" in cp.stdout and "1.7763" in cp.stdout
    assert "C9" in cp.stdout and "22.3" in cp.stdout
    assert "DEVIATES" not in cp.stdout


def test_extrema_even_only():
    cp = run_cli("extrema", "--even")
    assert cp.returncode == 0
    assert "C_even_h" in cp.stdout and "72.0" in cp.stdout
    assert "C3" not in cp.stdout


def test_bounds_at_threshold_holds():
    cp = run_cli("bounds", "--p", "700")
    assert cp.returncode == 0, cp.stderr
    assert "sandwich L: holds" in cp.stdout


def test_bounds_below_threshold_not_asserted():
    cp = run_cli("bounds", "--p", "100")
    assert cp.returncode == 0
    assert "not asserted (below P_0)" in cp.stdout
    assert "not asserted (below P_1)" in cp.stdout


def test_bounds_large_p_ratio_decreases():
    def ratio(p: str) -> float:
        cp = run_cli("bounds", "--p", p, "--format", "json")
        return json.loads(cp.stdout)["G_over_g"]

    assert ratio("10000") < ratio("1000")


def test_mc_determinism():
    args = ("mc", "--kind", "L", "--p", "4", "--n", "100000", "--seed", "7")
    a, b = run_cli(*args), run_cli(*args)
    assert a.returncode == 0
    assert a.stdout == b.stdout


def test_mc_z_score_sane():
    cp = run_cli("mc", "--kind", "K", "--p", "6", "--n", "200000",
                 "--seed", "5", "--format", "json")
    assert cp.returncode == 0, cp.stderr
    obj = json.loads(cp.stdout)
    assert obj["series_value"] == pytest.approx(31.0, rel=1e-9)
    assert abs(obj["z_score"]) <= 4.0


def test_mc_p_cap_is_usage_error():
    cp = run_cli("mc", "--kind", "L", "--p", "13", "--n", "100000")
    assert cp.returncode == 2


def test_eval_json_round_trip():
    cp = run_cli("eval", "--p", "5.5", "--format", "json")
    assert cp.returncode == 0
    parsed = json.loads(cp.stdout)
    assert json.dumps(parsed, indent=2, sort_keys=True) + "\n" == cp.stdout


def test_extrema_exit_one_on_deviation(monkeypatch, capsys):
    # in-process: an impossible tolerance must flip the exit code to 1
    from rosenthal import cli

    monkeypatch.setitem(cli.EXTREMA_TOLERANCES, "C3", 1e-12)
    code = cli.main(["extrema"])
    out = capsys.readouterr().out
    assert code == 1
    assert "DEVIATES" in out
