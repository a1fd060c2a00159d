"""Command-line interface: argument parsing, file formats, exit codes."""
import json
import subprocess
import sys

import numpy as np
import pytest

from xyquench import ModelParams, SweepSpec, sweep_grid, time_series
from xyquench.cli import (main, parse_int_list, parse_measures, parse_range,
                          parse_window)


def read_csv(path):
    """(meta dict, header list, rows of string cells) from our CSV dialect."""
    meta, header, rows = {}, None, []
    for line in path.read_text().splitlines():
        if line.startswith("#"):
            if " = " in line:
                key, _, value = line[1:].partition(" = ")
                meta[key.strip()] = value.strip()
            continue
        if header is None:
            header = line.split(",")
        else:
            rows.append(line.split(","))
    return meta, header, rows


class TestParseRange:
    def test_count_form(self):
        grid = parse_range("0:2:41")
        assert grid.size == 41
        assert grid[0] == 0.0 and grid[-1] == 2.0

    def test_step_form(self):
        grid = parse_range("0:30:0.1")
        assert grid.size == 301
        assert grid[-1] == pytest.approx(30.0, abs=1e-9)

    def test_single_point(self):
        assert parse_range("5:5:1").tolist() == [5.0]

    def test_step_not_dividing_span(self):
        assert parse_range("0:1:0.3") == pytest.approx([0.0, 0.3, 0.6, 0.9])

    @pytest.mark.parametrize("bad", ["0:2:1", "1:0:5", "a:b:c", "0:1:-0.5",
                                     "0:1:0", "0:1", "1:nan:5"])
    def test_rejects(self, bad):
        with pytest.raises(ValueError):
            parse_range(bad)


class TestSmallParsers:
    def test_window(self):
        assert parse_window("0.05:0.15") == (0.05, 0.15)
        for bad in ("0.3:0.1", "-0.1:0.4", "0.1", "a:b"):
            with pytest.raises(ValueError):
                parse_window(bad)

    def test_int_list(self):
        assert parse_int_list("100, 200,300") == [100, 200, 300]
        for bad in ("", "a,b", "1.5,2"):
            with pytest.raises(ValueError):
                parse_int_list(bad)

    def test_measures_canonical_order(self):
        assert parse_measures("mrq,c_l1,mrq") == ("c_l1", "mrq")
        with pytest.raises(ValueError):
            parse_measures("c_l1,entropy")


class TestSweepCommand:
    def test_csv_structure_and_values(self, tmp_path):
        out = tmp_path / "sweep.csv"
        code = main(["sweep", "--n", "8", "--h1", "1.0", "--t-range", "0:2:5",
                     "--output", str(out)])
        assert code == 0
        meta, header, rows = read_csv(out)
        assert out.read_text().startswith("# xyquench ")
        assert header == ["t", "h1", "c_l1", "c_re", "mrq"]
        assert meta["n"] == "8" and meta["points"] == "5"
        records = time_series(ModelParams(8, 1.0, 1.0, 0.7, 1.0),
                              np.linspace(0.0, 2.0, 5))
        assert len(rows) == len(records)
        for cells, rec in zip(rows, records):
            got = [float(c) for c in cells]
            want = [rec.t, rec.h1, rec.c_l1, rec.c_re, rec.mrq]
            assert got == pytest.approx(want, rel=1e-11, abs=1e-15)

    def test_json_matches_csv_values(self, tmp_path):
        args = ["sweep", "--n", "8", "--h1-range", "0:2:3", "--t-range", "0:1:3"]
        csv_path, json_path = tmp_path / "a.csv", tmp_path / "a.json"
        assert main(args + ["--output", str(csv_path)]) == 0
        assert main(args + ["--output", str(json_path), "--format", "json"]) == 0
        _, _, rows = read_csv(csv_path)
        payload = json.loads(json_path.read_text())
        assert payload["meta"]["tool"] == "xyquench"
        assert len(payload["records"]) == len(rows) == 9
        for cells, rec in zip(rows, payload["records"]):
            assert [float(c) for c in cells] == [rec[k] for k in
                                                 ("t", "h1", "c_l1", "c_re", "mrq")]

    def test_output_independent_of_threads(self, tmp_path):
        texts = []
        for threads in ("1", "4"):
            out = tmp_path / f"t{threads}.csv"
            assert main(["sweep", "--n", "8", "--h1-range", "0:2:5",
                         "--t-range", "0:3:7", "--threads", threads,
                         "--output", str(out)]) == 0
            texts.append(out.read_bytes())
        assert texts[0] == texts[1]

    def test_stdout_by_default(self, capsys):
        assert main(["sweep", "--n", "8", "--h1", "1.0", "--t-range", "0:1:2"]) == 0
        lines = capsys.readouterr().out.splitlines()
        assert "t,h1,c_l1,c_re,mrq" in lines
        assert len([l for l in lines if not l.startswith("#")]) == 3

    def test_h1_flags_are_exclusive(self, capsys):
        assert main(["sweep", "--n", "8", "--t-range", "0:1:2"]) == 2
        assert main(["sweep", "--n", "8", "--h1", "1.0", "--h1-range", "0:2:3",
                     "--t-range", "0:1:2"]) == 2
        assert "exactly one" in capsys.readouterr().err

    def test_missing_t_range(self, capsys):
        assert main(["sweep", "--n", "8", "--h1", "1.0"]) == 2
        assert "--t-range" in capsys.readouterr().err

    def test_unwritable_output(self, capsys):
        code = main(["sweep", "--n", "8", "--h1", "1.0", "--t-range", "0:1:2",
                     "--output", "/nonexistent-dir/x.csv"])
        assert code == 2
        assert "error:" in capsys.readouterr().err


class TestConfigFile:
    def test_flags_override_config(self, tmp_path):
        cfg = tmp_path / "run.cfg"
        cfg.write_text("h1 = 2.0\nt-range = 0:1:2\nn = 8\n")
        out = tmp_path / "out.csv"
        assert main(["sweep", "--config", str(cfg), "--h1", "1.0",
                     "--output", str(out)]) == 0
        _, _, rows = read_csv(out)
        assert {cells[1] for cells in rows} == {"1"}

    def test_config_supplies_defaults(self, tmp_path):
        cfg = tmp_path / "run.cfg"
        cfg.write_text("# comment line\nh1 = 2.0\nt_range = 0:1:2\nn = 8\n")
        out = tmp_path / "out.csv"
        assert main(["sweep", "--config", str(cfg), "--output", str(out)]) == 0
        _, _, rows = read_csv(out)
        assert {cells[1] for cells in rows} == {"2"}

    def test_unknown_key_rejected(self, tmp_path, capsys):
        cfg = tmp_path / "run.cfg"
        cfg.write_text("temperature = 3\n")
        assert main(["sweep", "--config", str(cfg), "--h1", "1.0",
                     "--t-range", "0:1:2"]) == 2
        assert "temperature" in capsys.readouterr().err

    def test_missing_file_rejected(self, capsys):
        assert main(["sweep", "--config", "/no/such/file.cfg", "--h1", "1.0",
                     "--t-range", "0:1:2"]) == 2
        assert "error:" in capsys.readouterr().err


class TestRevivalCommand:
    def test_fit_summary_and_csv(self, tmp_path, capsys):
        out = tmp_path / "rev.csv"
        code = main(["revival", "--sizes", "40,60,80", "--dt", "0.25",
                     "--measures", "c_l1", "--output", str(out)])
        assert code == 0
        stdout = capsys.readouterr().out
        assert stdout.startswith("c_l1: slope=")
        assert "points=3" in stdout
        meta, header, rows = read_csv(out)
        assert header == ["measure", "n", "t_r"]
        assert [cells[1] for cells in rows] == ["40", "60", "80"]
        assert {"slope_c_l1", "intercept_c_l1", "r_squared_c_l1"} <= meta.keys()
        assert 0.15 <= float(meta["slope_c_l1"]) <= 0.35

    def test_no_revival_exit_code(self, capsys):
        code = main(["revival", "--sizes", "40,60,80", "--dt", "0.5", "--h1", "0.7"])
        assert code == 1
        assert "no revival detected" in capsys.readouterr().err

    def test_too_few_sizes(self, capsys):
        assert main(["revival", "--sizes", "100,200"]) == 2
        assert "at least 3" in capsys.readouterr().err


class TestValidateCommand:
    def test_all_checks_pass(self, capsys):
        code = main(["validate", "--ed-sizes", "8", "--states", "20"])
        out = capsys.readouterr().out
        assert code == 0
        lines = [l for l in out.splitlines() if l]
        assert lines[-1] == "all checks passed"
        assert len(lines) == 7
        assert all(l.startswith("PASS ") for l in lines[:-1])


class TestTopLevel:
    def test_version(self, capsys):
        assert main(["--version"]) == 0
        assert "xyquench" in capsys.readouterr().out

    def test_unknown_command(self):
        assert main(["explode"]) == 2

    def test_console_script_smoke(self, tmp_path):
        out = tmp_path / "smoke.csv"
        proc = subprocess.run(
            [sys.executable, "-m", "xyquench.cli", "sweep", "--n", "8",
             "--h1", "1.0", "--t-range", "0:1:3", "--output", str(out)],
            capture_output=True, text=True, timeout=120)
        assert proc.returncode == 0, proc.stderr
        assert out.read_text().count("\n") >= 4


class TestRoundTripAgainstLibrary:
    def test_grid_rows_match_sweep_grid(self, tmp_path):
        out = tmp_path / "grid.csv"
        assert main(["sweep", "--n", "8", "--h1-range", "0.5:1.5:3",
                     "--t-range", "0:2:5", "--output", str(out)]) == 0
        _, _, rows = read_csv(out)
        spec = SweepSpec(n=8, j=1.0, gamma=1.0, h0=0.7,
                         h1_values=(0.5, 1.0, 1.5),
                         times=tuple(np.linspace(0.0, 2.0, 5)))
        recs = sweep_grid(spec)
        assert len(rows) == len(recs)
        for cells, rec in zip(rows, recs):
            assert float(cells[0]) == pytest.approx(rec.t, abs=1e-15)
            assert float(cells[1]) == pytest.approx(rec.h1, rel=1e-11)
            assert float(cells[2]) == pytest.approx(rec.c_l1, rel=1e-11, abs=1e-15)
            assert float(cells[3]) == pytest.approx(rec.c_re, rel=1e-11, abs=1e-15)
            assert float(cells[4]) == pytest.approx(rec.mrq, rel=1e-11)
