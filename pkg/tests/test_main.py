"""Tests for the CLI entry point (main.py)."""

import json
from fractions import Fraction
from unittest.mock import patch

import pytest

from main import _run_command, main, parse_args
from scripts.utils.errors import PrecisionExhausted


def _last_error(capsys) -> dict:
    err = capsys.readouterr().err.strip().splitlines()
    return json.loads(err[-1])


class TestParseArgs:
    """Tests for CLI argument parsing."""

    def test_subcommand_required(self):
        with pytest.raises(SystemExit):
            parse_args([])

    def test_tree_defaults(self):
        args = parse_args(["tree", "golden:1,1"])
        assert args.depth == 4
        assert args.format == "dot"
        assert not args.rhythm
        assert args.out is None and not args.meta

    def test_rows_defaults(self):
        args = parse_args(["rows", "3/2"])
        assert (args.depth, args.format, args.check) == (10, "csv", False)

    def test_negative_depth_rejected(self):
        with pytest.raises(SystemExit):
            parse_args(["tree", "3", "--depth", "-1"])

    def test_sweep_requires_bounds(self):
        with pytest.raises(SystemExit):
            parse_args(["sweep", "--kmin", "1.1"])

    def test_sweep_defaults(self):
        args = parse_args(["sweep", "--kmin", "1.1", "--kmax", "9"])
        assert args.points == 1000
        assert args.iters is None

    def test_josephus_eps_are_fractions(self):
        args = parse_args(["josephus", "--q", "2", "--eps", "1e-3", "1/1000000"])
        assert args.eps == [Fraction(1, 1000), Fraction(1, 10**6)]
        assert args.iters == 200

    def test_josephus_bad_eps(self):
        with pytest.raises(SystemExit):
            parse_args(["josephus", "--q", "2", "--eps", "tiny"])

    def test_indicators_defaults(self):
        args = parse_args(["indicators", "golden:5,3"])
        assert (args.mode, args.n_max, args.resolution) == ("lines", 500, None)

    def test_kvalues_defaults(self):
        args = parse_args(["kvalues"])
        assert (args.a_min, args.a_max, args.b_min, args.b_max) == (-1, 7, -6, 8)

    def test_verbose_and_quiet_exclusive(self):
        with pytest.raises(SystemExit):
            parse_args(["-v", "-q", "kvalues"])


class TestMainDispatch:
    """Tests for dispatch logic in main()."""

    @patch("main.cmd_tree", return_value=0)
    def test_tree(self, mock_cmd):
        assert main(["tree", "3"]) == 0
        mock_cmd.assert_called_once()
        assert mock_cmd.call_args.args[0].k == "3"

    @patch("main.cmd_sweep", return_value=0)
    def test_sweep(self, mock_cmd):
        main(["sweep", "--kmin", "1.1", "--kmax", "2"])
        mock_cmd.assert_called_once()

    @patch("main.cmd_verify", return_value=1)
    def test_exit_code_passed_through(self, mock_cmd):
        assert main(["verify", "--a", "1", "--b", "1"]) == 1


class TestRunCommand:
    """Tests for _run_command error mapping."""

    def test_success(self):
        assert _run_command("ok", lambda: 0) == 0

    def test_domain_error_maps_exit_code(self, capsys):
        def exhausted():
            raise PrecisionExhausted("no luck", digits=4096)

        assert _run_command("rho", exhausted) == 4
        assert _last_error(capsys) == {
            "error": "PrecisionExhausted",
            "message": "no luck",
            "exit_code": 4,
        }

    def test_crash_maps_to_one(self, capsys):
        def exploding():
            raise RuntimeError("boom")

        assert _run_command("rows", exploding) == 1
        assert _last_error(capsys)["error"] == "RuntimeError"


class TestExitCodes:
    """Tests for exit codes and JSON error lines."""

    def test_sweep_empty_range_is_usage_error(self, capsys):
        assert main(["sweep", "--kmin", "2", "--kmax", "2"]) == 2
        assert _last_error(capsys)["error"] == "UsageError"

    def test_bad_k_spec(self, capsys):
        assert main(["tree", "banana"]) == 2
        assert _last_error(capsys)["error"] == "KSpecError"

    def test_k_not_above_one(self, capsys):
        assert main(["rows", "1/2"]) == 2

    def test_verify_outside_recurrence_range(self, capsys):
        assert main(["verify", "--a", "1", "--b", "2"]) == 3
        error = _last_error(capsys)
        assert error["error"] == "InvalidParams"
        assert "k = 2" in error["message"]

    def test_indicators_lines_need_golden(self, capsys):
        assert main(["indicators", "3/2", "--mode", "lines"]) == 2

    def test_rhythm_of_irrational(self, capsys):
        assert main(["tree", "golden:1,1", "--rhythm"]) == 3

    def test_precision_exhausted(self, capsys):
        with patch("scripts.rho.enclose_c", side_effect=PrecisionExhausted("stuck")):
            assert main(["rho", "golden:1,1"]) == 4

    def test_size_limit(self, capsys, config_yaml_file):
        assert main(["--config", str(config_yaml_file), "tree", "3", "--depth", "10"]) == 5
        assert _last_error(capsys)["error"] == "SizeLimit"

    def test_missing_config(self, capsys, tmp_path):
        assert main(["--config", str(tmp_path / "nope.yaml"), "kvalues"]) == 2
        assert _last_error(capsys)["error"] == "ConfigError"

    def test_rho_without_k(self, capsys):
        assert main(["rho"]) == 2

    def test_missing_option_reports_usage_error(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["sweep", "--kmin", "2"])
        assert exc.value.code == 2
        error = _last_error(capsys)
        assert error["error"] == "UsageError"
        assert error["exit_code"] == 2
        assert "--kmax" in error["message"]

    def test_unknown_format_reports_usage_error(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["rows", "3", "--format", "dot"])
        assert exc.value.code == 2
        assert _last_error(capsys)["error"] == "UsageError"

    def test_verify_depth_below_two(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["verify", "--a", "1", "--b", "1", "--depth", "1"])
        assert exc.value.code == 2
        error = _last_error(capsys)
        assert error["error"] == "UsageError"
        assert "must be >= 2" in error["message"]


class TestOutputs:
    """Tests for subcommand output on stdout."""

    def test_rows_fibonacci(self, capsys):
        assert main(["-q", "rows", "golden:1,1", "--depth", "5"]) == 0
        assert capsys.readouterr().out == (
            "d,f_d,r_d\n0,1,1\n1,2,1\n2,4,2\n3,7,3\n4,12,5\n5,20,8\n"
        )

    def test_rows_check(self, capsys):
        assert main(["-q", "rows", "3/2", "--depth", "12", "--check"]) == 0

    def test_rows_json(self, capsys):
        assert main(["-q", "rows", "3", "--depth", "3", "--format", "json"]) == 0
        data = json.loads(capsys.readouterr().out)
        assert data == {"k": "3", "f": [1, 3, 9, 27], "r": [1, 2, 6, 18]}

    def test_tree_text(self, capsys):
        assert main(["-q", "tree", "golden:1,1", "--depth", "2", "--format", "text"]) == 0
        assert capsys.readouterr().out == "0 (h=2)\n  1 (h=2)\n    2 (h=1)\n    3 (h=2)\n"

    def test_tree_dot(self, capsys):
        assert main(["-q", "tree", "3", "--depth", "1"]) == 0
        out = capsys.readouterr().out
        assert "digraph ktree {" in out
        assert "  1 -> 0;" in out and "  2 -> 0;" in out
        assert "0 -> 0" not in out

    def test_tree_rhythm(self, capsys):
        assert main(["-q", "tree", "3/2", "--rhythm"]) == 0
        assert json.loads(capsys.readouterr().out)["counts"] == [2, 1]

    def test_rho_json(self, capsys):
        assert main(["-q", "rho", "golden:1,1", "--iters", "50", "--digits", "6"]) == 0
        data = json.loads(capsys.readouterr().out)
        assert data["n_iters"] == 50
        assert data["decimal"]["rho_lo"] <= "0.723607" <= data["decimal"]["rho_hi"]

    def test_closed_points(self, capsys):
        assert main(["-q", "rho", "--closed-points", "--digits", "4"]) == 0
        lines = capsys.readouterr().out.splitlines()
        assert lines[0] == "a,b,k,rho,rho_exact"
        assert lines[1].startswith("1,1,1.6180,0.7236,")

    def test_sweep_csv(self, capsys):
        args = ["-q", "sweep", "--kmin", "1.4", "--kmax", "1.7", "--points", "3", "--iters", "20"]
        assert main(args) == 0
        lines = capsys.readouterr().out.splitlines()
        assert lines[0] == "k_num,k_den,n_iters,c_lo,c_hi,rho_lo,rho_hi,error"
        assert [line.split(",")[:3] for line in lines[1:]] == [
            ["7", "5", "20"], ["31", "20", "20"], ["17", "10", "20"],
        ]

    def test_verify_passes(self, capsys):
        assert main(["-q", "verify", "--a", "5", "--b", "3", "--depth", "20"]) == 0
        report = json.loads(capsys.readouterr().out)
        assert report["passed"]
        assert {c["name"] for c in report["checks"]} >= {
            "recurrence", "closed_form", "enumeration", "rho_enclosure", "grandparent",
        }

    def test_verify_grid(self, capsys):
        assert main(["-q", "verify", "--grid", "2", "--depth", "15"]) == 0
        reports = json.loads(capsys.readouterr().out)
        assert [(r["a"], r["b"]) for r in reports] == [(1, 1), (2, 0), (2, 1), (2, 2)]

    def test_grandparent_mode(self, capsys):
        assert main(["-q", "indicators", "golden:3,-1", "--mode", "grandparent"]) == 0
        summary = json.loads(capsys.readouterr().out)
        assert summary["verdict"] is True
        assert summary["distinct_counts"] == [1]

    def test_scatter_mode(self, capsys):
        assert main(["-q", "indicators", "3/2", "--mode", "scatter", "--n-max", "4"]) == 0
        lines = capsys.readouterr().out.splitlines()
        assert lines[0] == "n,x,i,f_i(x),range_class"
        assert len(lines) == 5

    def test_kvalues(self, capsys):
        argv = ["-q", "kvalues", "--a-min", "1", "--a-max", "1", "--b-min", "1", "--b-max", "1"]
        assert main(argv + ["--digits", "3"]) == 0
        assert capsys.readouterr().out.splitlines() == [
            "a,b,discriminant,k,valid_k,recurrence_range,rho",
            "1,1,5,1.618,true,true,0.724",
        ]

    def test_josephus(self, capsys):
        assert main(["-q", "josephus", "--q", "2", "--eps", "1/1000", "--iters", "60"]) == 0
        report = json.loads(capsys.readouterr().out)
        assert report["q"] == 2
        assert [s["side"] for s in report["samples"]] == ["left", "right"]


class TestFiles:
    """Tests for --out and --meta."""

    def test_out_writes_atomically(self, tmp_path):
        target = tmp_path / "nested" / "rows.csv"
        assert main(["-q", "rows", "3", "--depth", "2", "--out", str(target)]) == 0
        assert target.read_text(encoding="utf-8") == "d,f_d,r_d\n0,1,1\n1,3,2\n2,9,6\n"
        assert not list(target.parent.glob("*.tmp"))

    def test_reruns_are_byte_identical(self, tmp_path):
        first, second = tmp_path / "a.dot", tmp_path / "b.dot"
        for path in (first, second):
            argv = ["-q", "tree", "golden:5,3", "--depth", "3", "--meta", "--out", str(path)]
            assert main(argv) == 0
        assert first.read_bytes() == second.read_bytes()

    def test_meta_header_csv(self, tmp_path):
        target = tmp_path / "kv.csv"
        main(["-q", "kvalues", "--a-max", "1", "--meta", "--out", str(target)])
        lines = target.read_text(encoding="utf-8").splitlines()
        assert lines[0].startswith("# ktree ")
        assert lines[1] == "# command: kvalues"
        assert lines[2] == "# a_max: 1"

    def test_meta_header_dot(self, tmp_path):
        target = tmp_path / "t.dot"
        main(["-q", "tree", "3", "--depth", "1", "--meta", "--out", str(target)])
        assert target.read_text(encoding="utf-8").startswith("// ktree ")

    def test_meta_wraps_json(self, tmp_path):
        target = tmp_path / "rows.json"
        main(["-q", "rows", "3", "--depth", "1", "--format", "json", "--meta", "--out", str(target)])
        data = json.loads(target.read_text(encoding="utf-8"))
        assert data["meta"]["command"] == "rows"
        assert data["meta"]["options"]["depth"] == "1"
        assert data["data"]["r"] == [1, 2]
