"""Command-line entry point.

Subcommands: evaluate (benchmark one strategy), solve (watch one game),
compare / report (re-render saved reports), grid (the full strategy
comparison), serve (the interactive assistant service).

Exit codes: 0 success, 1 usage error, 2 data error (unreadable or
inconsistent inputs), 3 internal invariant violation.
"""

from __future__ import annotations

import argparse
import glob
import sys
from pathlib import Path

from wordlab.evaluation import (
    EvaluationError,
    EvaluationReport,
    compare_strategies,
    evaluate_strategy,
    export_histogram_plot_data,
    export_report,
    render_comparison,
    verify_report_closure,
)
from wordlab.game import (
    ContradictionError,
    GameConfig,
    WordListError,
    default_config,
    filter_candidates,
    load_config,
    parse_config_file,
)
from wordlab.partition import partition_entropy
from wordlab.scoring import compute_collocation_stats, score_words
from wordlab.strategies import (
    StrategySpec,
    grid_preset_names,
    play_game,
    preset_names,
    resolve_preset,
)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_INTERNAL = 3


class _Parser(argparse.ArgumentParser):
    """argparse exits 2 on bad flags; the contract here is exit 1."""

    def error(self, message: str) -> None:  # type: ignore[override]
        self.print_usage(sys.stderr)
        raise _UsageError(message)


class _UsageError(Exception):
    pass


class _DataError(Exception):
    pass


def _add_config_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", help="key = value game description file")
    parser.add_argument("--answers", help="answer list file (default: packaged list)")
    parser.add_argument("--allowed", help="permitted-guess list file")


def _build_config(args: argparse.Namespace) -> GameConfig:
    if args.config and (args.answers or args.allowed):
        raise _UsageError("--config cannot be combined with --answers/--allowed")
    try:
        if args.config:
            return parse_config_file(args.config)
        if args.answers:
            return load_config(args.answers, args.allowed)
        if args.allowed:
            raise _UsageError("--allowed requires --answers")
        return default_config()
    except (OSError, WordListError) as exc:
        raise _DataError(str(exc)) from exc


def _resolve(name: str, seed: int | None = None) -> StrategySpec:
    try:
        return resolve_preset(name, seed=seed)
    except ValueError as exc:
        raise _DataError(str(exc)) from exc


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="wordlab",
        description=__doc__.split("\n\n")[1],
        epilog="strategy presets: " + ", ".join(preset_names()),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser(
        "evaluate",
        help="benchmark a strategy over every answer",
        epilog="presets: " + ", ".join(preset_names()),
    )
    p.add_argument("--strategy", required=True)
    _add_config_flags(p)
    p.add_argument("--runs", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--out", help="write the report to this file")
    p.add_argument(
        "--format", default="json", choices=["json", "csv", "markdown"],
        help="format of the --out file",
    )

    p = sub.add_parser("solve", help="play one game against a known answer")
    p.add_argument("--strategy", required=True)
    p.add_argument("--answer", required=True)
    _add_config_flags(p)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trace", action="store_true", help="show per-turn top-5 candidates")

    p = sub.add_parser("report", help="re-render a saved json report")
    p.add_argument("--in", dest="path", required=True)
    p.add_argument("--format", default="markdown", choices=["json", "csv", "markdown"])

    p = sub.add_parser("compare", help="tabulate several saved reports")
    p.add_argument("--reports", required=True, help="glob of report json files")
    p.add_argument("--format", default="text", choices=["text", "csv", "markdown"])

    p = sub.add_parser("grid", help="run the benchmark grid and compare")
    p.add_argument("--family", default="all", choices=["all", "colloc", "search"])
    _add_config_flags(p)
    p.add_argument("--runs", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--out", required=True, help="directory for reports and tables")

    p = sub.add_parser("serve", help="start the interactive assistant service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8572)
    _add_config_flags(p)
    p.add_argument("--journal", help="append-only session journal for replay")
    return parser


def _digest_line(digest: str) -> str:
    return f"config digest: {digest}"


def _summary_stdout(report: EvaluationReport) -> str:
    return _digest_line(report.config_digest) + "\n" + export_report(report, "markdown")


def _cmd_evaluate(args: argparse.Namespace) -> int:
    config = _build_config(args)
    spec = _resolve(args.strategy, seed=args.seed)
    report = evaluate_strategy(
        spec, config, runs=args.runs, master_seed=args.seed, jobs=args.jobs
    )
    verify_report_closure(report)
    if args.out:
        Path(args.out).write_text(export_report(report, args.format))
    sys.stdout.write(_summary_stdout(report))
    return EXIT_OK


def _trace_lines(spec: StrategySpec, words, config: GameConfig) -> str:
    sample = list(words)[:500]
    if spec.family == "collocation":
        stats = compute_collocation_stats(sample, config, spec.renormalize)
        scores = score_words(sample, stats, spec.scorer)
        reverse = spec.scorer.direction == "argmax"
        ranked = sorted(zip(sample, scores), key=lambda p: p[1], reverse=reverse)
    elif spec.family == "partition-search":
        pairs = [(w, partition_entropy(sample, w, spec.mode)) for w in sample[:100]]
        reverse = spec.objective in ("min-entropy", "max-kld")
        ranked = sorted(pairs, key=lambda p: p[1], reverse=reverse)
    else:
        ranked = [(w, float("nan")) for w in sample]
    top = ", ".join(f"{w}={s + 0.0:.3f}" for w, s in ranked[:5])
    return f"    top: {top}\n"


def _cmd_solve(args: argparse.Namespace) -> int:
    config = _build_config(args)
    spec = _resolve(args.strategy, seed=args.seed)
    if args.answer not in config.answers:
        raise _DataError(f"{args.answer!r} is not in the answer list")
    sys.stdout.write(_digest_line(config.digest) + "\n")
    record = play_game(spec, args.answer, config)
    remaining = config.candidate_set()
    for i, (guess, response) in enumerate(record.turns, start=1):
        if response.is_perfect:
            sys.stdout.write(
                f"{i:2d}. guess {guess}  response {response}  solved in {i} guesses\n"
            )
            break
        remaining = filter_candidates(remaining, guess, response)
        sys.stdout.write(
            f"{i:2d}. guess {guess}  response {response}  candidates {len(remaining)}\n"
        )
        if args.trace:
            sys.stdout.write(_trace_lines(spec, remaining, config))
    return EXIT_OK


def _load_report(path: str) -> EvaluationReport:
    try:
        report = EvaluationReport.from_json(Path(path).read_text())
    except (OSError, ValueError, KeyError) as exc:
        raise _DataError(f"cannot read report {path}: {exc}") from exc
    try:
        verify_report_closure(report)
    except ValueError as exc:
        raise _DataError(f"report {path} fails self-check: {exc}") from exc
    return report


def _cmd_report(args: argparse.Namespace) -> int:
    report = _load_report(args.path)
    if args.format == "markdown":
        sys.stdout.write(_summary_stdout(report))
    else:
        # Keep stdout parseable as csv/json; the digest still gets printed.
        print(_digest_line(report.config_digest), file=sys.stderr)
        sys.stdout.write(export_report(report, args.format))
    return EXIT_OK


def _cmd_compare(args: argparse.Namespace) -> int:
    paths = sorted(glob.glob(args.reports))
    if not paths:
        raise _DataError(f"no report files match {args.reports!r}")
    reports = [_load_report(p) for p in paths]
    digest = ", ".join(sorted({r.config_digest for r in reports}))
    stream = sys.stderr if args.format == "csv" else sys.stdout
    print(_digest_line(digest), file=stream)
    sys.stdout.write(render_comparison(compare_strategies(reports), args.format))
    return EXIT_OK


def _grid_names(family: str) -> list[str]:
    names = list(grid_preset_names())
    if family == "colloc":
        return [n for n in names if n == "hard-mode" or n.startswith("colloc-")]
    if family == "search":
        return [n for n in names if n == "hard-mode" or n.startswith("search-")]
    return names


def _cmd_grid(args: argparse.Namespace) -> int:
    config = _build_config(args)
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    sys.stdout.write(_digest_line(config.digest) + "\n")
    reports = []
    for name in _grid_names(args.family):
        spec = _resolve(name, seed=args.seed)
        report = evaluate_strategy(
            spec, config, runs=args.runs, master_seed=args.seed, jobs=args.jobs
        )
        verify_report_closure(report)
        (out_dir / f"{name}.json").write_text(export_report(report, "json"))
        sys.stdout.write(f"done: {name} (mean {report.stats.mean:.3f})\n")
        reports.append(report)
    rows = compare_strategies(reports)
    (out_dir / "comparison.md").write_text(render_comparison(rows, "markdown"))
    (out_dir / "histogram_percentages.csv").write_text(
        export_histogram_plot_data(reports)
    )
    sys.stdout.write(render_comparison(rows, "text"))
    return EXIT_OK


def _cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from wordlab.service import create_app

    config = _build_config(args)
    sys.stdout.write(_digest_line(config.digest) + "\n")
    static_dir = Path(__file__).parents[2] / "frontend" / "dist"
    try:
        app = create_app(config, journal_path=args.journal, static_dir=static_dir)
    except ValueError as exc:  # corrupt journal
        raise _DataError(str(exc)) from exc
    uvicorn.run(app, host=args.host, port=args.port, log_level="info")
    return EXIT_OK


_COMMANDS = {
    "evaluate": _cmd_evaluate,
    "solve": _cmd_solve,
    "report": _cmd_report,
    "compare": _cmd_compare,
    "grid": _cmd_grid,
    "serve": _cmd_serve,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return _COMMANDS[args.command](args)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except _DataError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except (EvaluationError, ContradictionError, RuntimeError, ValueError) as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
