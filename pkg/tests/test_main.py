import asyncio
import json

from main import build_parser, main
from verdict_strategy import ExitStatus


def run(*argv: str) -> int:
    return asyncio.run(main(list(argv)))


def test_clifford_run_passes_and_writes_reports(tmp_path, capsys):
    status = run("--suite", "clifford", "--samples", "5", "--out", str(tmp_path))
    assert status == ExitStatus.OK
    assert (tmp_path / "report.json").is_file()
    assert (tmp_path / "report.md").is_file()
    assert "clifford: PASS" in capsys.readouterr().out
    document = json.loads((tmp_path / "report.json").read_text())
    assert document["config"]["suites"] == ["clifford"]
    assert document["reports"][0]["suite"] == "clifford"


def test_same_seed_gives_identical_json(tmp_path):
    args = ("--suite", "cpt", "--suite", "irreps", "--samples", "4", "--seed", "9", "--format", "json")
    run(*args, "--out", str(tmp_path))
    first = (tmp_path / "report.json").read_bytes()
    run(*args, "--out", str(tmp_path))
    assert (tmp_path / "report.json").read_bytes() == first
    assert not (tmp_path / "report.md").exists()


def test_unknown_suite_is_a_configuration_error(tmp_path, capsys):
    status = run("--suite", "magnetism", "--out", str(tmp_path))
    assert status == ExitStatus.CONFIGURATION
    assert "configuration error" in capsys.readouterr().err
    assert not any(tmp_path.iterdir())


def test_impossible_tolerance_fails_the_run(tmp_path):
    status = run("--suite", "clifford", "--samples", "50", "--tol-exact", "1e-30", "--out", str(tmp_path))
    assert status == ExitStatus.UNEXPECTED


def test_parser_collects_repeated_suites():
    args = build_parser().parse_args(["--suite", "so4", "--suite", "cpt", "--tol-fd", "1e-5"])
    assert args.suites == ["so4", "cpt"]
    assert args.tol_fd == 1e-5
    assert args.output_format is None


def test_unwritable_output_is_reported(tmp_path, capsys):
    blocker = tmp_path / "file"
    blocker.write_text("not a directory")
    status = run("--suite", "clifford", "--samples", "2", "--out", str(blocker))
    assert status == ExitStatus.OUTPUT
    err = capsys.readouterr().err
    assert "report error" in err
    assert "Cannot write report" in err
