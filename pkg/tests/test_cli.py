"""Command-line interface: exit codes, output contracts, file artifacts."""

import json
import shutil
import subprocess

import pytest

from wordlab.cli import main
from wordlab.evaluation import EvaluationReport
from wordlab.game import parse_config_file

WORDS3 = ["abc", "acb", "bac", "bca", "cab", "cba", "aab", "abb", "bcc"]


@pytest.fixture(scope="module")
def cfg_path(tmp_path_factory):
    root = tmp_path_factory.mktemp("cli-lists")
    (root / "answers.txt").write_text("\n".join(WORDS3) + "\n")
    path = root / "game.cfg"
    path.write_text("alphabet = abc\nword_length = 3\nanswers = answers.txt\n")
    return str(path)


@pytest.fixture(scope="module")
def tiny_digest(cfg_path):
    return parse_config_file(cfg_path).digest


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# ---------------------------------------------------------------- exit codes


def test_help_exits_zero_and_lists_presets(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["--help"])
    assert exc.value.code == 0
    out = capsys.readouterr().out
    for name in ("hard-mode", "colloc-un-max-nr", "colloc-kld", "search-kld"):
        assert name in out


def test_no_arguments_is_usage_error(capsys):
    assert run(capsys, *[])[0] == 1


def test_unknown_subcommand_is_usage_error(capsys):
    assert run(capsys, "frobnicate")[0] == 1


def test_unknown_flag_is_usage_error(capsys):
    assert run(capsys, "evaluate", "--strategy", "hard-mode", "--bogus")[0] == 1


def test_allowed_without_answers_is_usage_error(capsys, cfg_path):
    code, _, err = run(capsys, "evaluate", "--strategy", "hard-mode",
                       "--allowed", cfg_path)
    assert code == 1
    assert "--answers" in err


def test_config_flag_excludes_answers_flag(capsys, cfg_path):
    code, _, _ = run(capsys, "evaluate", "--strategy", "hard-mode",
                     "--config", cfg_path, "--answers", cfg_path)
    assert code == 1


def test_unknown_strategy_is_data_error(capsys, cfg_path):
    code, _, err = run(capsys, "evaluate", "--strategy", "nope",
                       "--config", cfg_path)
    assert code == 2
    assert "nope" in err


def test_missing_answers_file_is_data_error(capsys):
    code, _, _ = run(capsys, "evaluate", "--strategy", "hard-mode",
                     "--answers", "/nonexistent/answers.txt")
    assert code == 2


# ------------------------------------------------------------------ evaluate


def test_evaluate_prints_digest_then_markdown_table(capsys, cfg_path, tiny_digest):
    code, out, _ = run(capsys, "evaluate", "--strategy", "search-entropy",
                       "--config", cfg_path)
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == f"config digest: {tiny_digest}"
    assert lines[1].startswith("| strategy | games |")
    assert f"| search-entropy | {len(WORDS3)} |" in lines[3]


def test_evaluate_runs_multiplies_games(capsys, cfg_path):
    code, out, _ = run(capsys, "evaluate", "--strategy", "hard-mode",
                       "--config", cfg_path, "--runs", "3", "--seed", "5")
    assert code == 0
    assert f"| hard-mode | {3 * len(WORDS3)} |" in out


def test_evaluate_stdout_is_deterministic(capsys, cfg_path):
    args = ("evaluate", "--strategy", "hard-mode", "--config", cfg_path,
            "--runs", "2", "--seed", "11")
    first = run(capsys, *args)
    second = run(capsys, *args)
    assert first == second


def test_evaluate_jobs_does_not_change_output(capsys, cfg_path):
    base = ("evaluate", "--strategy", "colloc-un-max", "--config", cfg_path,
            "--seed", "3")
    serial = run(capsys, *base, "--jobs", "1")
    parallel = run(capsys, *base, "--jobs", "2")
    assert serial == parallel


def test_evaluate_writes_json_report(capsys, cfg_path, tiny_digest, tmp_path):
    out_file = tmp_path / "r.json"
    code, _, _ = run(capsys, "evaluate", "--strategy", "search-kld",
                     "--config", cfg_path, "--out", str(out_file))
    assert code == 0
    report = EvaluationReport.from_json(out_file.read_text())
    assert report.strategy == "search-kld"
    assert report.config_digest == tiny_digest
    assert report.games == len(WORDS3)


def test_evaluate_writes_csv_report(capsys, cfg_path, tmp_path):
    out_file = tmp_path / "r.csv"
    code, _, _ = run(capsys, "evaluate", "--strategy", "hard-mode",
                     "--config", cfg_path, "--out", str(out_file),
                     "--format", "csv")
    assert code == 0
    header = out_file.read_text().splitlines()[0]
    assert header.startswith("strategy,runs,games,seed,config_digest,")


# --------------------------------------------------------------------- solve


def test_solve_prints_shrinking_candidates_and_solves(capsys, cfg_path):
    code, out, _ = run(capsys, "solve", "--strategy", "search-entropy",
                       "--config", cfg_path, "--answer", "bca")
    assert code == 0
    lines = out.splitlines()
    assert lines[0].startswith("config digest: ")
    assert "solved in" in lines[-1]
    counts = [int(line.rsplit(" ", 1)[1]) for line in lines[1:-1]]
    assert counts == sorted(counts, reverse=True)
    assert all(a > b for a, b in zip(counts, counts[1:]))


def test_solve_trace_shows_top_scores(capsys, cfg_path):
    # opener for this preset on WORDS3 is "abb", so "cba" needs several turns
    code, out, _ = run(capsys, "solve", "--strategy", "colloc-un-max",
                       "--config", cfg_path, "--answer", "cba", "--trace")
    assert code == 0
    solved_line = [l for l in out.splitlines() if "solved in" in l]
    assert len(solved_line) == 1
    trace_lines = [l for l in out.splitlines() if l.startswith("    top: ")]
    assert trace_lines, out
    assert "=" in trace_lines[0]


def test_solve_rejects_word_outside_answer_list(capsys, cfg_path):
    code, _, err = run(capsys, "solve", "--strategy", "hard-mode",
                       "--config", cfg_path, "--answer", "zzz")
    assert code == 2
    assert "zzz" in err


# ------------------------------------------------------------ report/compare


def test_report_markdown_matches_evaluate_stdout_bytes(capsys, cfg_path, tmp_path):
    out_file = tmp_path / "r.json"
    _, eval_out, _ = run(capsys, "evaluate", "--strategy", "search-kld",
                         "--config", cfg_path, "--out", str(out_file))
    code, report_out, _ = run(capsys, "report", "--in", str(out_file),
                              "--format", "markdown")
    assert code == 0
    assert report_out == eval_out


def test_report_json_keeps_stdout_parseable(capsys, cfg_path, tiny_digest, tmp_path):
    out_file = tmp_path / "r.json"
    run(capsys, "evaluate", "--strategy", "hard-mode", "--config", cfg_path,
        "--out", str(out_file))
    code, out, err = run(capsys, "report", "--in", str(out_file),
                         "--format", "json")
    assert code == 0
    assert json.loads(out)["config_digest"] == tiny_digest
    assert f"config digest: {tiny_digest}" in err


def test_report_missing_file_is_data_error(capsys):
    assert run(capsys, "report", "--in", "/nonexistent/r.json")[0] == 2


def test_report_unparseable_file_is_data_error(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{\"strategy\": \"x\"}")
    assert run(capsys, "report", "--in", str(bad))[0] == 2


def test_report_rejects_tampered_statistics(capsys, cfg_path, tmp_path):
    out_file = tmp_path / "r.json"
    run(capsys, "evaluate", "--strategy", "hard-mode", "--config", cfg_path,
        "--out", str(out_file))
    payload = json.loads(out_file.read_text())
    payload["stats"]["mean"] += 0.5
    out_file.write_text(json.dumps(payload))
    code, _, err = run(capsys, "report", "--in", str(out_file))
    assert code == 2
    assert "self-check" in err


def test_compare_two_reports_sorted_by_mean(capsys, cfg_path, tmp_path):
    for name in ("search-entropy", "search-max-entropy-by-pattern"):
        run(capsys, "evaluate", "--strategy", name, "--config", cfg_path,
            "--out", str(tmp_path / f"{name}.json"))
    code, out, _ = run(capsys, "compare", "--reports", str(tmp_path / "*.json"),
                       "--format", "markdown")
    assert code == 0
    rows = [l for l in out.splitlines() if l.startswith("| search")]
    assert len(rows) == 2
    assert rows[0].startswith("| search-entropy |")


def test_compare_csv_stdout_has_no_digest_line(capsys, cfg_path, tmp_path):
    run(capsys, "evaluate", "--strategy", "hard-mode", "--config", cfg_path,
        "--out", str(tmp_path / "r.json"))
    code, out, err = run(capsys, "compare", "--reports", str(tmp_path / "*.json"),
                         "--format", "csv")
    assert code == 0
    assert out.splitlines()[0].startswith("strategy,")
    assert "config digest" in err


def test_compare_empty_glob_is_data_error(capsys, tmp_path):
    assert run(capsys, "compare", "--reports", str(tmp_path / "*.json"))[0] == 2


# ---------------------------------------------------------------------- grid


def test_grid_emits_all_reports_and_tables(capsys, cfg_path, tmp_path):
    out_dir = tmp_path / "grid"
    code, out, _ = run(capsys, "grid", "--config", cfg_path,
                       "--out", str(out_dir), "--seed", "2")
    assert code == 0
    reports = sorted(out_dir.glob("*.json"))
    assert len(reports) == 17
    assert (out_dir / "hard-mode.json").exists()
    assert (out_dir / "comparison.md").exists()
    plot = (out_dir / "histogram_percentages.csv").read_text().splitlines()
    assert plot[0] == "strategy,guess_count,percent"
    assert out.count("done: ") == 17


def test_grid_family_filter_keeps_baseline(capsys, cfg_path, tmp_path):
    out_dir = tmp_path / "grid-colloc"
    code, _, _ = run(capsys, "grid", "--config", cfg_path, "--family", "colloc",
                     "--out", str(out_dir))
    assert code == 0
    names = {p.stem for p in out_dir.glob("*.json")}
    assert "hard-mode" in names
    assert len(names) == 9
    assert all(n == "hard-mode" or n.startswith("colloc-") for n in names)


# ------------------------------------------------------------ installed tool


def test_console_script_is_installed():
    exe = shutil.which("wordlab")
    assert exe is not None
    proc = subprocess.run([exe, "--help"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert "evaluate" in proc.stdout
