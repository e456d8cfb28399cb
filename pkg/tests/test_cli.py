import csv
import math
import shlex

import pytest

from conftest import complete_graph, cycle_graph, petersen_graph
from expander_growth import __version__
from expander_growth.bounds import cube4_beta
from expander_growth.errors import ConstructionError
from expander_growth.generators import polygon_flip_graph

def read_rows(path) -> list[dict]:
    with open(path, encoding="utf-8") as handle:
        lines = [line for line in handle if not line.startswith("#")]
    return list(csv.DictReader(lines))

def read_header(path) -> list[str]:
    with open(path, encoding="utf-8") as handle:
        return [line.rstrip("\n") for line in handle if line.startswith("#")]

class TestGen:
    def test_polygon(self, cli, runner, tmp_path) -> None:
        out = tmp_path / "hexagon.txt"
        result = runner.invoke(cli, ["gen", "polygon", "-k", "6", "--out", str(out)])
        assert result.exit_code == 0, result.output
        assert "n=14 m=21 d_bar=3" in result.output
        body = [line for line in out.read_text().splitlines() if not line.startswith("#")]
        assert body[0] == "14 21"
        assert len(body) == 22

    def test_header_records_seed_and_version(self, cli, runner, tmp_path) -> None:
        out = tmp_path / "g.txt"
        runner.invoke(cli, ["gen", "gnm", "-n", "20", "-m", "30", "--out", str(out)])
        header = read_header(out)
        assert header[0].startswith("# command: ")
        assert "-m 30" in header[0]
        assert "# seed: 7" in header
        assert f"# version: {__version__}" in header

    def test_header_command_reruns(self, cli, runner, tmp_path) -> None:
        out = tmp_path / "g.txt"
        runner.invoke(cli, ["gen", "gnm", "-n", "20", "-m", "30", "--out", str(out)])
        first = out.read_text()
        words = shlex.split(read_header(out)[0].removeprefix("# command: "))
        assert words[1:3] == ["gen", "gnm"]
        out.unlink()
        result = runner.invoke(cli, words[1:])
        assert result.exit_code == 0, result.output
        assert out.read_text() == first

    def test_complete_gnp(self, cli, runner, tmp_path) -> None:
        out = tmp_path / "k10.txt"
        result = runner.invoke(cli, ["gen", "gnp", "-n", "10", "-p", "1", "--out", str(out)])
        assert result.exit_code == 0, result.output
        assert "10 45" in out.read_text().splitlines()

    def test_triangulation_table(self, cli, runner, tmp_path) -> None:
        out, table = tmp_path / "g.txt", tmp_path / "table.txt"
        runner.invoke(cli, ["gen", "polygon", "-k", "5", "--out", str(out), "--table-out", str(table)])
        lines = table.read_text().splitlines()
        assert len(lines) == 5
        assert lines[0] == "0: (0,2)(0,3)"

    def test_quotient_orbit_sizes(self, cli, runner, tmp_path) -> None:
        out, table = tmp_path / "g.txt", tmp_path / "orbits.txt"
        result = runner.invoke(
            cli, ["gen", "polygon-quotient", "-k", "6", "--group", "dihedral", "--out", str(out), "--table-out", str(table)]
        )
        assert result.exit_code == 0, result.output
        assert sorted(int(line.split(": ")[1]) for line in table.read_text().splitlines()) == [2, 6, 6]

    def test_missing_parameter_is_usage_error(self, cli, runner, tmp_path) -> None:
        result = runner.invoke(cli, ["gen", "lps", "-p", "13", "--out", str(tmp_path / "g.txt")])
        assert result.exit_code == 1

    def test_invalid_lps_parameters(self, cli, runner, tmp_path) -> None:
        result = runner.invoke(cli, ["gen", "lps", "-p", "7", "-q", "13", "--out", str(tmp_path / "g.txt")])
        assert result.exit_code == 2

    def test_construction_failure(self, cli, runner, tmp_path, monkeypatch) -> None:
        def broken(p, q):
            raise ConstructionError("generator set produces a self-loop")

        monkeypatch.setattr("expander_growth.commands.gen.lps_graph", broken)
        result = runner.invoke(cli, ["gen", "lps", "-p", "5", "-q", "13", "--out", str(tmp_path / "g.txt")])
        assert result.exit_code == 4
        assert "self-loop" in result.output

    @pytest.mark.slow
    def test_lps_13_61(self, cli, runner, tmp_path) -> None:
        out = tmp_path / "lps.txt"
        result = runner.invoke(cli, ["gen", "lps", "-p", "13", "-q", "61", "--out", str(out)])
        assert result.exit_code == 0, result.output
        assert "113460 794220" in out.read_text().splitlines()

class TestSpectral:
    def test_complete_graph(self, cli, runner, edge_file, tmp_path) -> None:
        out = tmp_path / "spectral.csv"
        result = runner.invoke(cli, ["spectral", edge_file(complete_graph(5)), "--out", str(out)])
        assert result.exit_code == 0, result.output
        row = read_rows(out)[0]
        assert float(row["lambda"]) == pytest.approx(1.0, abs=1e-9)
        assert row["is_ramanujan"] == "true"
        assert int(row["n"]) == 5 and int(row["m"]) == 10

    @pytest.mark.parametrize("k,expected,ramanujan", [(7, 3.2320, "true"), (10, 6.5650, "false")])
    def test_flip_graphs(self, cli, runner, edge_file, tmp_path, k, expected, ramanujan) -> None:
        out = tmp_path / "spectral.csv"
        g, _ = polygon_flip_graph(k)
        runner.invoke(cli, ["spectral", edge_file(g), "--out", str(out)])
        row = read_rows(out)[0]
        assert float(row["lambda"]) == pytest.approx(expected, abs=1e-3)
        assert row["is_ramanujan"] == ramanujan

    def test_malformed_input(self, cli, runner, tmp_path) -> None:
        path = tmp_path / "bad.txt"
        path.write_text("3 2\n0 1\n1 two\n")
        result = runner.invoke(cli, ["spectral", str(path)])
        assert result.exit_code == 2
        assert "line 3" in result.output

    def test_missing_file_is_usage_error(self, cli, runner, tmp_path) -> None:
        result = runner.invoke(cli, ["spectral", str(tmp_path / "absent.txt")])
        assert result.exit_code == 1

    def test_non_convergence(self, cli, runner, edge_file) -> None:
        g, _ = polygon_flip_graph(9)
        result = runner.invoke(cli, ["spectral", edge_file(g), "--method", "power", "--max-iter", "1"])
        assert result.exit_code == 3

class TestGrow:
    def test_trajectory_and_estimates(self, cli, runner, edge_file, tmp_path) -> None:
        out = tmp_path / "run.csv"
        result = runner.invoke(
            cli,
            ["grow", edge_file(petersen_graph()), "--start", "0", "--estimate-every", "2", "--lambda", "auto", "--census", "--out", str(out)],
        )
        assert result.exit_code == 0, result.output
        trajectory = read_rows(out)
        assert list(trajectory[0]) == ["t", "processed", "queued", "unvisited", "pi", "kappa", "upsilon"]
        assert len(trajectory) == 11
        assert trajectory[-1]["pi"] == "1"
        estimates = read_rows(tmp_path / "run.estimates.csv")
        assert [int(row["t"]) for row in estimates] == [2, 4, 6, 8, 10]
        last = estimates[-1]
        assert float(last["eUW"]) == 0.0
        assert float(last["lower"]) == float(last["upper"]) == 10
        for row in estimates:
            if row["upper"] != "inf":
                assert float(row["lower"]) <= 10 <= float(row["upper"])
        assert any(line.startswith("# lambda_policy: auto") for line in read_header(out))

    def test_stdout_carries_both_blocks(self, cli, runner, edge_file) -> None:
        result = runner.invoke(
            cli, ["grow", edge_file(petersen_graph()), "--start", "0", "--estimate-every", "2", "--census"]
        )
        assert result.exit_code == 0, result.output
        lines = result.output.splitlines()
        trajectory_at = lines.index("t,processed,queued,unvisited,pi,kappa,upsilon")
        estimates_at = lines.index("t,W,eUW,lower,upper")
        assert trajectory_at < estimates_at
        assert sum(line.startswith("# command: ") for line in lines) == 2
        estimates = list(csv.DictReader(lines[estimates_at:]))
        assert [int(row["t"]) for row in estimates] == [2, 4, 6, 8, 10]

    def test_header_command_reruns(self, cli, runner, edge_file, tmp_path) -> None:
        out = tmp_path / "run.csv"
        estimates = tmp_path / "run.estimates.csv"
        args = ["grow", edge_file(petersen_graph()), "--start", "0", "--census", "--out", str(out)]
        assert runner.invoke(cli, args).exit_code == 0
        first = out.read_text(), estimates.read_text()
        command = read_header(out)[0].removeprefix("# command: ")
        words = shlex.split(command)
        assert words[1:3] == args[:2]
        assert "--census" in words and "=True" not in command
        result = runner.invoke(cli, words[1:])
        assert result.exit_code == 0, result.output
        assert (out.read_text(), estimates.read_text()) == first

    def test_estimate_interval_larger_than_run(self, cli, runner, edge_file, tmp_path) -> None:
        out = tmp_path / "run.csv"
        result = runner.invoke(cli, ["grow", edge_file(petersen_graph()), "--estimate-every", "1000", "--out", str(out)])
        assert result.exit_code == 0, result.output
        assert out.exists()
        assert not (tmp_path / "run.estimates.csv").exists()

    def test_padded_run_on_disconnected_graph(self, cli, runner, tmp_path) -> None:
        path = tmp_path / "two.txt"
        path.write_text("6 6\n0 1\n1 2\n0 2\n3 4\n4 5\n3 5\n")
        out = tmp_path / "run.csv"
        result = runner.invoke(
            cli, ["grow", str(path), "--start", "0", "--padded", "--lambda", "1.0", "--out", str(out)]
        )
        assert result.exit_code == 0, result.output
        rows = read_rows(out)
        assert rows[-1]["t"] == "6" and rows[-1]["processed"] == "3"
        assert rows[-1]["pi"] == "0.5"
        assert "# columns: pi=processed/n kappa=queued/n upsilon=unvisited/n" in read_header(out)

    def test_ramanujan_policy_needs_spectral_gap(self, cli, runner, edge_file, tmp_path) -> None:
        result = runner.invoke(cli, ["grow", edge_file(cycle_graph(8)), "--out", str(tmp_path / "run.csv")])
        assert result.exit_code == 2

    def test_bad_start(self, cli, runner, edge_file) -> None:
        result = runner.invoke(cli, ["grow", edge_file(petersen_graph()), "--start", "middle"])
        assert result.exit_code == 1

class TestBounds:
    def test_beta_curve(self, cli, runner, tmp_path) -> None:
        out = tmp_path / "beta.csv"
        result = runner.invoke(cli, ["bounds", "beta", "-d", "14", "--out", str(out)])
        assert result.exit_code == 0, result.output
        rows = read_rows(out)
        assert len(rows) == 11
        assert float(rows[0]["value"]) == 0.0
        assert float(rows[-1]["pi"]) == 1.0
        assert any("lambda=7.211102551" in line for line in read_header(out))

    def test_delta0(self, cli, runner, tmp_path) -> None:
        out = tmp_path / "delta0.csv"
        runner.invoke(cli, ["bounds", "delta0", "-d", "2", "--out", str(out)])
        rows = read_rows(out)
        assert len(rows) == 1
        assert float(rows[0]["value"]) == pytest.approx(0.7968, abs=1e-4)

    @pytest.mark.parametrize("curve", ["prop1", "er", "cube4", "unvisited"])
    def test_every_curve_has_grid_rows(self, cli, runner, tmp_path, curve: str) -> None:
        out = tmp_path / "curve.csv"
        args = ["bounds", curve, "--grid", "21", "--out", str(out)]
        if curve != "cube4":
            args += ["-d", "4"]
        result = runner.invoke(cli, args)
        assert result.exit_code == 0, result.output
        rows = read_rows(out)
        assert len(rows) == 21
        assert all(math.isfinite(float(row["value"])) for row in rows)

    def test_cube4_curve_matches_library(self, cli, runner, tmp_path) -> None:
        out = tmp_path / "cube4.csv"
        runner.invoke(cli, ["bounds", "cube4", "--grid", "5", "--out", str(out)])
        rows = read_rows(out)
        assert len(rows) == 5
        for row in rows:
            assert float(row["value"]) == pytest.approx(cube4_beta(float(row["pi"])), abs=1e-9)

    def test_missing_degree(self, cli, runner) -> None:
        assert runner.invoke(cli, ["bounds", "prop1"]).exit_code == 1

    def test_subcritical_degree(self, cli, runner) -> None:
        assert runner.invoke(cli, ["bounds", "er", "-d", "0.5"]).exit_code == 2

class TestHallKnuth:
    def test_probe_log(self, cli, runner, tmp_path) -> None:
        out = tmp_path / "probes.csv"
        result = runner.invoke(cli, ["hallknuth", "-k", "6", "--probes", "5", "--out", str(out)])
        assert result.exit_code == 0, result.output
        rows = read_rows(out)
        assert [int(row["probe_index"]) for row in rows] == [0, 1, 2, 3, 4]
        assert [int(row["seed"]) for row in rows] == [7, 8, 9, 10, 11]
        footer = read_header(out)[-1]
        assert footer.startswith("# mean=") and footer.endswith(",probes=5")

    def test_zero_probes_is_usage_error(self, cli, runner) -> None:
        assert runner.invoke(cli, ["hallknuth", "-k", "6", "--probes", "0"]).exit_code == 1

class TestErNumeric:
    def test_runs_and_average(self, cli, runner, tmp_path) -> None:
        out, runs_out = tmp_path / "mean.csv", tmp_path / "runs.csv"
        result = runner.invoke(
            cli, ["ernumeric", "-n", "100", "-d", "2", "--runs", "3", "--out", str(out), "--runs-out", str(runs_out)]
        )
        assert result.exit_code == 0, result.output
        mean = read_rows(out)
        assert len(mean) == 101
        assert float(mean[0]["u"]) == 100.0
        assert len(read_rows(runs_out)) == 3 * 101

    def test_single_run_is_raw(self, cli, runner, tmp_path) -> None:
        out = tmp_path / "mean.csv"
        runner.invoke(cli, ["ernumeric", "-n", "50", "-d", "3", "--out", str(out)])
        rows = read_rows(out)
        assert all(float(row["u"]).is_integer() for row in rows)

    def test_degree_at_least_n(self, cli, runner) -> None:
        assert runner.invoke(cli, ["ernumeric", "-n", "10", "-d", "10"]).exit_code == 1

class TestGroup:
    def test_version(self, cli, runner) -> None:
        result = runner.invoke(cli, ["--version"])
        assert result.exit_code == 0
        assert __version__ in result.output

    def test_unknown_command(self, cli, runner) -> None:
        assert runner.invoke(cli, ["plot"]).exit_code == 1
