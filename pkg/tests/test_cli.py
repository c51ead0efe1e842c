import subprocess
import sys

import pytest

from ellchain import construct, parse_series, serialize_series, theorem_threshold
from ellchain.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestConstruct:
    def test_writes_file_and_reports(self, capsys, tmp_path):
        out = tmp_path / "s.txt"
        code, stdout, _ = run_cli(capsys, "construct", "--g", "9", "--k", "4", "--out", str(out))
        assert code == 0
        assert "all checks passed" in stdout
        series = parse_series(out.read_text())
        assert series == construct(9, 4)

    def test_below_threshold_exit_3(self, capsys, tmp_path):
        code, _, stderr = run_cli(
            capsys, "construct", "--g", "4", "--k", "4", "--out", str(tmp_path / "x.txt")
        )
        assert code == 3
        assert "requires g >= 5" in stderr

    def test_genus3_k3_succeeds_with_note(self, capsys, tmp_path):
        out = tmp_path / "s33.txt"
        code, stdout, _ = run_cli(capsys, "construct", "--g", "3", "--k", "3", "--out", str(out))
        assert code == 0
        assert "external-construction" in stdout
        assert "all checks passed" in stdout

    def test_force_generates_below_threshold(self, capsys, tmp_path):
        out = tmp_path / "forced.txt"
        code, stdout, _ = run_cli(
            capsys, "construct", "--g", "4", "--k", "4", "--force", "--out", str(out)
        )
        assert code == 0
        assert "all checks passed" in stdout

    def test_text_format(self, capsys, tmp_path):
        out = tmp_path / "t.txt"
        code, _, _ = run_cli(
            capsys, "construct", "--g", "5", "--k", "4", "--out", str(out), "--format", "text"
        )
        assert code == 0
        text = out.read_text()
        assert "component 1" in text and "free parameters" in text


class TestVerifyAndDim:
    @pytest.fixture
    def series_file(self, tmp_path):
        path = tmp_path / "s54.txt"
        path.write_text(serialize_series(construct(5, 4)))
        return path

    def test_verify_passes(self, capsys, series_file):
        code, stdout, _ = run_cli(capsys, "verify", str(series_file))
        assert code == 0
        assert "PASS  node-condition" in stdout

    def test_verify_corrupted_exit_2_names_condition(self, capsys, series_file):
        text = series_file.read_text().replace("  row 0 4\n  row 0 3", "  row 0 4\n  row 0 2", 1)
        series_file.write_text(text)
        code, stdout, _ = run_cli(capsys, "verify", str(series_file))
        assert code == 2
        assert "FAIL" in stdout

    def test_verify_malformed_exit_4_with_line(self, capsys, series_file):
        series_file.write_text(series_file.read_text().replace("split", "splot", 1))
        code, _, stderr = run_cli(capsys, "verify", str(series_file))
        assert code == 4
        assert "line 3" in stderr

    def test_dim_matches_rho(self, capsys, series_file):
        code, stdout, _ = run_cli(capsys, "dim", str(series_file))
        assert code == 0
        assert "total 2 = rho 2" in stdout
        assert "gluing" in stdout and "stability" in stdout

    def test_round_trip_grid(self, capsys, tmp_path):
        for k in range(2, 9):
            g = theorem_threshold(k) + 1
            path = tmp_path / f"rt{g}_{k}.txt"
            code, _, _ = run_cli(
                capsys, "construct", "--g", str(g), "--k", str(k), "--out", str(path)
            )
            assert code == 0
            code, _, _ = run_cli(capsys, "verify", str(path))
            assert code == 0


class TestSearch:
    def test_search_report(self, capsys):
        code, stdout, _ = run_cli(capsys, "search", "--g", "5", "--k", "4")
        assert code == 0
        assert "combinatorial solutions: 65" in stdout

    def test_search_cap_refused(self, capsys):
        code, _, stderr = run_cli(capsys, "search", "--g", "9", "--k", "2")
        assert code == 1
        assert "ELLCHAIN_SEARCH_CAP" in stderr

    def test_search_cap_env_override(self, capsys, monkeypatch):
        monkeypatch.setenv("ELLCHAIN_SEARCH_CAP", "3")
        code, _, stderr = run_cli(capsys, "search", "--g", "4", "--k", "2")
        assert code == 1
        monkeypatch.setenv("ELLCHAIN_SEARCH_CAP", "4")
        code, stdout, _ = run_cli(capsys, "search", "--g", "4", "--k", "2")
        assert code == 0

    def test_search_prefix(self, capsys):
        code, stdout, _ = run_cli(
            capsys, "search", "--g", "7", "--k", "3", "--prefix", "2"
        )
        assert code == 0
        assert "prefix" in stdout


class TestSweep:
    def test_grid_row_count_and_invariant(self, capsys, tmp_path):
        out = tmp_path / "sweep.csv"
        code, _, _ = run_cli(
            capsys,
            "sweep",
            "--g-min", "3", "--g-max", "12", "--k-min", "2", "--k-max", "6",
            "--out", str(out),
        )
        assert code == 0
        lines = out.read_text().splitlines()
        assert lines[0].startswith("g,k,rho_K")
        rows = lines[1:]
        assert len(rows) == 40
        for row in rows:
            fields = row.split(",")
            if fields[6] == "true":  # validated
                assert fields[8] == "true"  # ledger matches rho

    def test_byte_stability(self, capsys, tmp_path):
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        for path in (a, b):
            code, _, _ = run_cli(
                capsys,
                "sweep",
                "--g-min", "3", "--g-max", "8", "--k-min", "2", "--k-max", "5",
                "--out", str(path),
            )
            assert code == 0
        assert a.read_bytes() == b.read_bytes()

    def test_usage_error_exit_1(self, capsys, tmp_path):
        code, _, _ = run_cli(
            capsys,
            "sweep",
            "--g-min", "5", "--g-max", "3", "--k-min", "2", "--k-max", "4",
            "--out", str(tmp_path / "x.csv"),
        )
        assert code == 1


class TestEntryPoint:
    def test_usage_error_exit_code(self):
        proc = subprocess.run(
            [sys.executable, "-m", "ellchain.cli", "bogus"],
            capture_output=True,
            text=True,
        )
        assert proc.returncode == 1

    def test_console_script_runs(self):
        proc = subprocess.run(
            [sys.executable, "-m", "ellchain.cli", "construct", "--g", "3", "--k", "2"],
            capture_output=True,
            text=True,
        )
        assert proc.returncode == 0
        assert "ellchain-series v1" in proc.stdout
