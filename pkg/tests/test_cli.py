import json
import logging

import pytest

import blowup_cli


@pytest.fixture(autouse=True)
def drop_cli_log_handlers():
    root = logging.getLogger()
    before = set(root.handlers)
    yield
    for handler in [h for h in root.handlers if h not in before]:
        root.removeHandler(handler)
        handler.close()


@pytest.fixture
def run_cli(tmp_path):
    """Run the CLI with the log file and report inside tmp_path; return (code, report)."""

    def run(*argv):
        output = tmp_path / "report.json"
        if output.exists():
            output.unlink()
        code = blowup_cli.run([*argv, "--log-file", str(tmp_path / "cli.log"), "--output", str(output)])
        report = json.loads(output.read_text()) if output.exists() else None
        return code, report

    return run


def test_compute_yk_rank_two(run_cli):
    code, report = run_cli("compute-yk", "--rank", "2", "--k", "1", "--order", "4")
    assert code == 0
    assert report["terms"]["q^1"] == "1 + y"
    assert report["y_mode"] == "symbolic"
    assert report["schema_version"] == "1.0"


def test_compute_yk_hol_form(run_cli):
    code, report = run_cli("compute-yk", "--rank", "2", "--k", "1", "--order", "6", "--form", "hol")
    assert code == 0
    assert report["stated"] == 0
    assert report["computed_at_y0"] == {"q^1": "1"}
    assert report["agrees"] is False


def test_verify_rank1(run_cli):
    code, report = run_cli("verify-rank1", "--order", "8", "--seeds", "3")
    assert code == 0
    assert report["outcome"] == "pass"
    assert report["parameters"]["seeds"] == [11, 23, 37]


def test_verify_blowup_passes(run_cli):
    code, report = run_cli("verify-blowup", "--rank", "2", "--k", "1", "--order", "5", "--seeds", "11,23")
    assert code == 0
    assert report["outcome"] == "pass"
    assert report["parameters"]["seeds"] == [11, 23]


def test_seed_count_with_base(run_cli):
    code, report = run_cli("verify-blowup", "--order", "4", "--seeds", "2", "--seed-base", "100")
    assert code == 0
    assert report["parameters"]["seeds"] == [100, 101]


@pytest.mark.parametrize(
    "argv",
    [
        ["verify-blowup", "--rank", "5", "--k", "5"],
        ["verify-blowup", "--seeds", "eleven"],
        ["verify-blowup", "--seeds", "0"],
        ["verify-blowup", "--seeds", ","],
        ["verify-rank1", "--seeds", " , "],
        ["compute-z", "--seeds", ","],
        ["verify-all", "--order", "4"],
        ["compute-z", "--y-mode", "numeric"],
        ["compute-z", "--y-mode", "numeric", "--y-value", "1/0"],
        ["compute-yk", "--threads", "0"],
        ["compute-yk", "--order", "-1"],
        ["no-such-command"],
    ],
)
def test_invalid_arguments_exit_with_usage_error(run_cli, argv):
    code, report = run_cli(*argv)
    assert code == 2
    assert report is None


def test_compute_z_at_y_one_gives_counts(run_cli):
    code, report = run_cli(
        "compute-z", "--rank", "2", "--order", "8", "--y-mode", "numeric", "--y-value", "1"
    )
    assert code == 0
    assert report["terms"] == {"q^0": "1", "q^4": "2", "q^8": "5"}
    assert report["fixed_point_counts"] == {"q^0": 1, "q^4": 2, "q^8": 5}


def test_reports_are_byte_identical(tmp_path):
    argv = ["verify-blowup", "--rank", "2", "--k", "1", "--order", "5", "--seeds", "2"]
    log = ["--log-file", str(tmp_path / "cli.log")]
    first, second = tmp_path / "first.json", tmp_path / "second.json"
    assert blowup_cli.run(argv + log + ["--output", str(first)]) == 0
    assert blowup_cli.run(argv + log + ["--threads", "3", "--output", str(second)]) == 0
    assert first.read_bytes() == second.read_bytes()


def test_cache_dir_from_environment(run_cli, tmp_path, monkeypatch):
    cache_dir = tmp_path / "cache"
    cache_dir.mkdir()
    monkeypatch.setenv("BLOWUP_CACHE_DIR", str(cache_dir))
    code, _ = run_cli("compute-zhat", "--rank", "2", "--k", "1", "--order", "5")
    assert code == 0
    assert any(cache_dir.iterdir())


def test_compute_w(run_cli):
    code, report = run_cli("compute-w", "--order", "3", "--substitution", "t2/t1")
    assert code == 0
    assert report["parameters"] == {"order": 3, "substitution": "t2/t1"}
    assert report["specialization"]["seed"] == 11
    assert report["terms"]["q^0"] == "1"


def test_log_file_written(run_cli, tmp_path):
    run_cli("compute-yk", "--rank", "1", "--order", "2")
    assert "Running compute-yk" in (tmp_path / "cli.log").read_text()
