"""Tests for the benchmark harness and report plumbing."""

from unittest import mock

import pytest

from wordlab.evaluation import (
    EvaluationError,
    EvaluationReport,
    SummaryStats,
    compare_strategies,
    evaluate_strategy,
    export_histogram_plot_data,
    export_report,
    render_comparison,
    summarize,
    verify_report_closure,
)
from wordlab.game import GameConfig, Response
from wordlab.strategies import GameRecord, resolve_preset

# Published two-run baseline histogram used as a cross-check for the
# summary arithmetic (4630 games, mean 4.11, failure 1.75%).
BASELINE_HISTOGRAM = {1: 3, 2: 182, 3: 1099, 4: 1830, 5: 1154, 6: 281, 7: 60, 8: 20, 9: 1}


def records_from_histogram(histogram):
    records = []
    for count, n in histogram.items():
        turns = tuple(
            ("amble", Response.from_string("00000")) for _ in range(count - 1)
        ) + (("amble", Response.from_string("11111")),)
        records.extend(GameRecord(answer="amble", turns=turns) for _ in range(n))
    return records


def report_from_histogram(histogram, strategy="synthetic"):
    records = records_from_histogram(histogram)
    stats = summarize(records)
    games = len(records)
    excellent = sum(n for k, n in histogram.items() if k <= 2) / games
    failure = sum(n for k, n in histogram.items() if k > 6) / games
    return EvaluationReport(
        strategy=strategy,
        runs=1,
        games=games,
        seed=0,
        config_digest="0" * 12,
        stats=stats,
        excellent_rate=excellent,
        failure_rate=failure,
        histogram=dict(histogram),
        wall_time_ms=12.5,
    )


@pytest.fixture(scope="module")
def small_config(official):
    return GameConfig(answers=official.answers[:150])


class TestSummarize:
    def test_single_record(self):
        stats = summarize(records_from_histogram({4: 1}))
        assert stats == SummaryStats(min=4, median=4, mean=4.0, max=4)

    def test_even_count_uses_lower_middle_median(self):
        stats = summarize(records_from_histogram({1: 1, 2: 1, 3: 1, 4: 1}))
        assert stats.median == 2
        assert stats.mean == pytest.approx(2.5)

    def test_published_baseline_histogram(self):
        stats = summarize(records_from_histogram(BASELINE_HISTOGRAM))
        assert stats.mean == pytest.approx(4.11, abs=0.005)
        assert stats.median == 4
        assert stats.min == 1
        assert stats.max == 9

    def test_empty_records_rejected(self):
        with pytest.raises(ValueError):
            summarize([])


class TestEvaluateStrategy:
    def test_runs_multiply_games(self, small_config):
        report = evaluate_strategy(
            resolve_preset("hard-mode"), small_config, runs=2, master_seed=7
        )
        assert report.games == 300
        assert sum(report.histogram.values()) == 300
        assert report.strategy == "hard-mode"
        assert report.config_digest == small_config.digest

    def test_deterministic_given_seed(self, small_config):
        spec = resolve_preset("hard-mode")
        a = evaluate_strategy(spec, small_config, runs=1, master_seed=3)
        b = evaluate_strategy(spec, small_config, runs=1, master_seed=3)
        assert a.core_payload() == b.core_payload()

    def test_seed_changes_outcomes(self, small_config):
        spec = resolve_preset("hard-mode")
        a = evaluate_strategy(spec, small_config, runs=1, master_seed=3)
        b = evaluate_strategy(spec, small_config, runs=1, master_seed=4)
        assert a.histogram != b.histogram

    def test_deterministic_strategy_duplicates_runs_exactly(self, small_config):
        spec = resolve_preset("colloc-un-max-nr")
        report = evaluate_strategy(spec, small_config, runs=2, master_seed=0)
        assert all(v % 2 == 0 for v in report.histogram.values())
        single = evaluate_strategy(spec, small_config, runs=1, master_seed=0)
        assert {k: 2 * v for k, v in single.histogram.items()} == report.histogram

    def test_parallel_equals_serial(self, small_config):
        spec = resolve_preset("hard-mode")
        serial = evaluate_strategy(spec, small_config, runs=2, master_seed=11, jobs=1)
        parallel = evaluate_strategy(spec, small_config, runs=2, master_seed=11, jobs=4)
        assert serial.core_payload() == parallel.core_payload()

    def test_report_passes_closure_check(self, small_config):
        report = evaluate_strategy(
            resolve_preset("search-kld"), small_config, master_seed=1
        )
        verify_report_closure(report)

    def test_invalid_runs(self, small_config):
        with pytest.raises(ValueError):
            evaluate_strategy(resolve_preset("hard-mode"), small_config, runs=0)

    def test_game_failure_names_answer(self, small_config):
        with mock.patch(
            "wordlab.evaluation.play_game", side_effect=RuntimeError("boom")
        ):
            with pytest.raises(EvaluationError, match=small_config.answers[0]):
                evaluate_strategy(resolve_preset("hard-mode"), small_config)


class TestReportClosure:
    def test_detects_game_count_drift(self):
        report = report_from_histogram({3: 5, 4: 5})
        broken = EvaluationReport(**{**report.__dict__, "games": 11})
        with pytest.raises(ValueError, match="games"):
            verify_report_closure(broken)

    def test_detects_stat_drift(self):
        report = report_from_histogram({3: 5, 4: 5})
        broken = EvaluationReport(
            **{
                **report.__dict__,
                "stats": SummaryStats(min=1, median=3, mean=3.5, max=4),
            }
        )
        with pytest.raises(ValueError, match="stats"):
            verify_report_closure(broken)

    def test_detects_rate_drift(self):
        report = report_from_histogram({2: 4, 7: 4})
        broken = EvaluationReport(**{**report.__dict__, "failure_rate": 0.0})
        with pytest.raises(ValueError, match="rates"):
            verify_report_closure(broken)


class TestExportReport:
    def test_json_round_trip_is_lossless(self):
        report = report_from_histogram(BASELINE_HISTOGRAM)
        again = EvaluationReport.from_json(export_report(report, "json"))
        assert again == report

    def test_csv_histogram_columns_sum_to_games(self):
        report = report_from_histogram(BASELINE_HISTOGRAM)
        text = export_report(report, "csv")
        header, row = text.strip().splitlines()
        columns = dict(zip(header.split(","), row.split(",")))
        total = sum(
            int(v) for k, v in columns.items() if k.startswith("guesses_")
        )
        assert total == report.games == int(columns["games"])

    def test_csv_covers_gaps_in_histogram(self):
        report = report_from_histogram({1: 2, 4: 2})
        text = export_report(report, "csv")
        header = text.splitlines()[0].split(",")
        assert [c for c in header if c.startswith("guesses_")] == [
            "guesses_1",
            "guesses_2",
            "guesses_3",
            "guesses_4",
        ]

    def test_markdown_layout(self):
        report = report_from_histogram(BASELINE_HISTOGRAM, strategy="hard-mode")
        text = export_report(report, "markdown")
        lines = text.strip().splitlines()
        assert lines[0] == "| strategy | games | min | median | mean | max | excellent | failure |"
        assert "| hard-mode | 4630 | 1 | 4 | 4.110 | 9 | 4.00% | 1.75% |" in lines

    def test_unknown_format(self):
        with pytest.raises(ValueError):
            export_report(report_from_histogram({3: 1}), "yaml")


class TestCompareStrategies:
    def test_single_report_single_row(self):
        rows = compare_strategies([report_from_histogram({3: 4})])
        assert len(rows) == 1

    def test_sorted_by_mean_ascending(self):
        fast = report_from_histogram({3: 10}, strategy="fast")
        slow = report_from_histogram({5: 10}, strategy="slow")
        rows = compare_strategies([slow, fast])
        assert [r["strategy"] for r in rows] == ["fast", "slow"]

    def test_renders_in_all_formats(self):
        rows = compare_strategies(
            [report_from_histogram({3: 4}, "a"), report_from_histogram({4: 4}, "b")]
        )
        text = render_comparison(rows, "text")
        assert text.splitlines()[0].startswith("strategy")
        md = render_comparison(rows, "markdown")
        assert md.startswith("| strategy |")
        csv_text = render_comparison(rows, "csv")
        assert csv_text.splitlines()[0] == "strategy,games,min,median,mean,max,excellent,failure"

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            compare_strategies([])


class TestHistogramPlotData:
    def test_single_peak(self):
        text = export_histogram_plot_data([report_from_histogram({3: 7}, "only")])
        assert text.splitlines() == ["strategy,guess_count,percent", "only,3,100.0000"]

    def test_percentages_sum_to_hundred(self):
        text = export_histogram_plot_data(
            [report_from_histogram(BASELINE_HISTOGRAM, "base")]
        )
        total = sum(float(line.split(",")[2]) for line in text.splitlines()[1:])
        assert abs(total - 100.0) < 0.01

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            export_histogram_plot_data([])
