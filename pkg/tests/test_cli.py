"""Command line contract: flags, config files, formats, exit codes."""

import math
import re
import xml.etree.ElementTree as ET

import pytest

from gricsim.cli import CSV_HEADER, SEED_ENV_VAR, main, parse_densities
from gricsim.worldgen import parse_world_text

FLOAT_4DP = r"-?\d+\.\d{4}"
ROW_RE = re.compile(
    rf"^[a-z+-]+,[a-z0-9]+,{FLOAT_4DP},\d+,{FLOAT_4DP},"
    rf"({FLOAT_4DP}|nan),({FLOAT_4DP}|nan),\d+,\d+,\d+$"
)


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestParseDensities:
    def test_single_value(self):
        assert parse_densities("4") == (4.0,)

    def test_comma_list(self):
        assert parse_densities("2,3.5,5") == (2.0, 3.5, 5.0)

    def test_range_inclusive(self):
        assert parse_densities("1:2:0.5") == (1.0, 1.5, 2.0)

    def test_range_point_count(self):
        got = parse_densities("1:10:0.5")
        assert len(got) == 19
        assert got[0] == 1.0 and got[-1] == pytest.approx(10.0)

    @pytest.mark.parametrize(
        "text", ["", "1:2", "1:2:0", "5:1:0.5", "1:2:-0.5", "a,b", "1;2"]
    )
    def test_rejects_malformed(self, text):
        with pytest.raises(ValueError):
            parse_densities(text)


class TestSweep:
    def test_header_and_rows(self, capsys):
        code, out, _ = run(
            capsys, "sweep", "--algo", "greedy", "--densities", "2,2.5",
            "--trials", "3",
        )
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0] == CSV_HEADER
        assert len(lines) == 3
        for row in lines[1:]:
            assert ROW_RE.match(row), row

    def test_all_runs_every_router_in_order(self, capsys):
        code, out, _ = run(
            capsys, "sweep", "--algo", "all", "--densities", "2",
            "--trials", "2",
        )
        assert code == 0
        names = [ln.split(",")[0] for ln in out.strip().splitlines()[1:]]
        assert names == ["greedy", "inertia", "gric-", "gric+", "ltp", "face"]

    def test_deterministic_output(self, capsys):
        argv = (
            "sweep", "--algo", "gric+", "--densities", "2", "--trials", "4",
            "--seed", "5",
        )
        _, first, _ = run(capsys, *argv)
        _, second, _ = run(capsys, *argv)
        assert first == second

    def test_seed_changes_results(self, capsys):
        base = ("sweep", "--algo", "ltp", "--densities", "2", "--trials", "5")
        _, a, _ = run(capsys, *base, "--seed", "0")
        _, b, _ = run(capsys, *base, "--seed", "1")
        assert a != b

    def test_writes_file(self, capsys, tmp_path):
        out_path = tmp_path / "rows.csv"
        code, _, _ = run(
            capsys, "sweep", "--algo", "greedy", "--densities", "2",
            "--trials", "2", "--out", str(out_path),
        )
        assert code == 0
        text = out_path.read_text()
        assert text.startswith(CSV_HEADER + "\n")

    def test_workers_flag_matches_serial(self, capsys):
        base = (
            "sweep", "--algo", "inertia", "--densities", "2,2.5",
            "--trials", "4",
        )
        _, serial, _ = run(capsys, *base, "--workers", "1")
        _, parallel, _ = run(capsys, *base, "--workers", "2")
        assert serial == parallel

    def test_missing_algo_is_usage_error(self, capsys):
        code, _, err = run(capsys, "sweep", "--densities", "2")
        assert code == 2
        assert "algo" in err

    def test_unknown_algo_rejected(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["sweep", "--algo", "dijkstra"])
        assert exc.value.code == 2

    def test_malformed_densities_rejected(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["sweep", "--algo", "greedy", "--densities", "5:1:0.5"])
        assert exc.value.code == 2

    def test_unwritable_out_is_runtime_error(self, capsys):
        code, _, _ = run(
            capsys, "sweep", "--algo", "greedy", "--densities", "2",
            "--trials", "1", "--out", "/no/such/dir/rows.csv",
        )
        assert code == 1


class TestTrace:
    def test_svg_structure(self, capsys):
        code, out, err = run(
            capsys, "trace", "--algo", "gric-", "--density", "5",
            "--seed", "1",
        )
        assert code == 0
        root = ET.fromstring(out)
        assert root.tag.endswith("svg")
        paths = [e for e in root.iter() if e.tag.endswith("path")]
        assert len(paths) == 1
        circles = [e for e in root.iter() if e.tag.endswith("circle")]
        assert len(circles) > 100
        assert "gric-" in err

    def test_svg_walls_drawn(self, capsys):
        _, out, _ = run(
            capsys, "trace", "--algo", "gric+", "--obstacle", "ushape",
            "--density", "5", "--seed", "1",
        )
        root = ET.fromstring(out)
        lines = [e for e in root.iter() if e.tag.endswith("line")]
        assert len(lines) == 3

    def test_csv_format(self, capsys):
        code, out, _ = run(
            capsys, "trace", "--algo", "greedy", "--density", "5",
            "--format", "csv", "--seed", "1",
        )
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0] == "step,x,y"
        for ln in lines[1:]:
            step, x, y = ln.split(",")
            int(step)
            float(x)
            float(y)

    def test_deterministic(self, capsys):
        argv = ("trace", "--algo", "gric+", "--density", "4", "--seed", "3")
        _, a, _ = run(capsys, *argv)
        _, b, _ = run(capsys, *argv)
        assert a == b

    def test_unknown_obstacle_rejected(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["trace", "--algo", "greedy", "--obstacle", "maze"])
        assert exc.value.code == 2


class TestGraphcheck:
    def test_report_fields(self, capsys):
        code, out, _ = run(capsys, "graphcheck", "--density", "3",
                           "--seed", "2")
        assert code == 0
        assert re.search(r"^nodes: \d+$", out, re.M)
        assert re.search(r"^links: \d+$", out, re.M)
        assert re.search(r"^mean degree: \d+\.\d{4}$", out, re.M)
        assert re.search(
            r"^interior mean degree: \d+\.\d{4} \(pi\*density = \d+\.\d{4}\)$",
            out, re.M,
        )
        assert re.search(r"^gabriel edges: \d+$", out, re.M)
        assert re.search(r"^planarity: PASS$", out, re.M)
        assert re.search(r"^connectivity: (CONNECTED|DISCONNECTED)$", out, re.M)

    def test_interior_degree_near_pi_density(self, capsys):
        _, out, _ = run(capsys, "graphcheck", "--density", "4.5",
                        "--seed", "0")
        m = re.search(r"interior mean degree: (\d+\.\d{4})", out)
        got = float(m.group(1))
        assert abs(got - math.pi * 4.5) / (math.pi * 4.5) < 0.05

    def test_dump_round_trips(self, capsys, tmp_path):
        dump = tmp_path / "w.txt"
        code, out, _ = run(
            capsys, "graphcheck", "--density", "2", "--seed", "1",
            "--dump", str(dump),
        )
        assert code == 0
        assert f"world dumped to {dump}" in out
        positions, edges = parse_world_text(dump.read_text())
        m = re.search(r"^nodes: (\d+)$", out, re.M)
        assert len(positions) == int(m.group(1))
        m = re.search(r"^links: (\d+)$", out, re.M)
        assert len(edges) == int(m.group(1))


class TestConfigAndEnvironment:
    def test_config_supplies_defaults(self, capsys, tmp_path):
        cfg = tmp_path / "exp.cfg"
        cfg.write_text(
            "# experiment setup\nalgo = greedy\ndensities = 2\ntrials = 2\n"
        )
        code, out, _ = run(capsys, "sweep", "--config", str(cfg))
        assert code == 0
        assert out.startswith(CSV_HEADER)
        assert len(out.strip().splitlines()) == 2

    def test_flags_beat_config(self, capsys, tmp_path):
        cfg = tmp_path / "exp.cfg"
        cfg.write_text("algo = greedy\ndensities = 2\ntrials = 2\nseed = 5\n")
        _, with_flag, _ = run(
            capsys, "sweep", "--config", str(cfg), "--seed", "9"
        )
        _, pure_flag, _ = run(
            capsys, "sweep", "--algo", "greedy", "--densities", "2",
            "--trials", "2", "--seed", "9",
        )
        assert with_flag == pure_flag

    def test_environment_beats_flag(self, capsys, monkeypatch, tmp_path):
        monkeypatch.setenv(SEED_ENV_VAR, "11")
        _, via_env, _ = run(
            capsys, "sweep", "--algo", "greedy", "--densities", "2",
            "--trials", "2", "--seed", "3",
        )
        monkeypatch.delenv(SEED_ENV_VAR)
        _, direct, _ = run(
            capsys, "sweep", "--algo", "greedy", "--densities", "2",
            "--trials", "2", "--seed", "11",
        )
        assert via_env == direct

    def test_bad_environment_seed(self, capsys, monkeypatch):
        monkeypatch.setenv(SEED_ENV_VAR, "not-a-seed")
        code, _, err = run(
            capsys, "sweep", "--algo", "greedy", "--densities", "2",
            "--trials", "1",
        )
        assert code == 2
        assert SEED_ENV_VAR in err

    def test_unknown_config_key(self, capsys, tmp_path):
        cfg = tmp_path / "exp.cfg"
        cfg.write_text("algo = greedy\nteleport = yes\n")
        code, _, err = run(capsys, "sweep", "--config", str(cfg))
        assert code == 2
        assert "teleport" in err

    def test_missing_config_file(self, capsys, tmp_path):
        code, _, _ = run(
            capsys, "sweep", "--config", str(tmp_path / "nope.cfg")
        )
        assert code == 2

    def test_garbage_config_line(self, capsys, tmp_path):
        cfg = tmp_path / "exp.cfg"
        cfg.write_text("algo greedy\n")
        code, _, _ = run(capsys, "sweep", "--config", str(cfg))
        assert code == 2

    def test_no_subcommand_is_usage_error(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main([])
        assert exc.value.code == 2
