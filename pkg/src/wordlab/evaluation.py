"""Benchmark harness: replay a strategy over every answer and report.

A report is fully determined by (strategy, config, runs, master seed):
each game gets its own random stream derived from the master seed, the
run index, and the answer's position, so results do not depend on play
order and a multi-process run aggregates to exactly the same report as
a serial one.  All derived statistics are recomputable from the
histogram, which makes exported reports self-checking.
"""

from __future__ import annotations

import csv
import io
import json
import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from multiprocessing import get_context
from typing import Iterable, Sequence

import numpy as np

from wordlab.game import GameConfig, get_response_table
from wordlab.strategies import GameRecord, StrategySpec, play_game


class EvaluationError(RuntimeError):
    """A game inside an evaluation sweep failed; names the answer."""


@dataclass(frozen=True)
class SummaryStats:
    """Guess-count summary; median is the lower-middle element so it
    stays an integer on even game counts."""

    min: int
    median: int
    mean: float
    max: int

    def to_dict(self) -> dict:
        return {"min": self.min, "median": self.median, "mean": self.mean, "max": self.max}

    @classmethod
    def from_dict(cls, data: dict) -> "SummaryStats":
        return cls(
            min=int(data["min"]),
            median=int(data["median"]),
            mean=float(data["mean"]),
            max=int(data["max"]),
        )


@dataclass(frozen=True)
class EvaluationReport:
    strategy: str
    runs: int
    games: int
    seed: int
    config_digest: str
    stats: SummaryStats
    excellent_rate: float
    failure_rate: float
    histogram: dict[int, int]
    wall_time_ms: float

    def core_payload(self) -> dict:
        """Everything except wall time, the one field runs can't share."""
        return {
            "strategy": self.strategy,
            "runs": self.runs,
            "games": self.games,
            "seed": self.seed,
            "config_digest": self.config_digest,
            "stats": self.stats.to_dict(),
            "excellent_rate": self.excellent_rate,
            "failure_rate": self.failure_rate,
            "histogram": {str(k): v for k, v in sorted(self.histogram.items())},
        }

    def to_json(self) -> str:
        payload = self.core_payload()
        payload["wall_time_ms"] = self.wall_time_ms
        return json.dumps(payload, indent=2)

    @classmethod
    def from_json(cls, text: str) -> "EvaluationReport":
        data = json.loads(text)
        return cls(
            strategy=data["strategy"],
            runs=int(data["runs"]),
            games=int(data["games"]),
            seed=int(data["seed"]),
            config_digest=data["config_digest"],
            stats=SummaryStats.from_dict(data["stats"]),
            excellent_rate=float(data["excellent_rate"]),
            failure_rate=float(data["failure_rate"]),
            histogram={int(k): int(v) for k, v in data["histogram"].items()},
            wall_time_ms=float(data["wall_time_ms"]),
        )


def _stats_from_histogram(histogram: dict[int, int]) -> SummaryStats:
    games = sum(histogram.values())
    if games == 0:
        raise ValueError("no games to summarize")
    counts = sorted(histogram)
    total = sum(k * n for k, n in histogram.items())
    lower_middle_rank = (games - 1) // 2
    seen = 0
    median = counts[-1]
    for k in counts:
        seen += histogram[k]
        if seen > lower_middle_rank:
            median = k
            break
    return SummaryStats(min=counts[0], median=median, mean=total / games, max=counts[-1])


def _rates_from_histogram(histogram: dict[int, int]) -> tuple[float, float]:
    games = sum(histogram.values())
    excellent = sum(n for k, n in histogram.items() if k <= 2)
    failure = sum(n for k, n in histogram.items() if k > 6)
    return excellent / games, failure / games


def summarize(records: Sequence[GameRecord]) -> SummaryStats:
    """Min/median/mean/max of the records' guess counts."""
    histogram = Counter(r.guess_count for r in records)
    return _stats_from_histogram(dict(histogram))


def _play_span(
    spec: StrategySpec,
    config: GameConfig,
    master_seed: int,
    pairs: Sequence[tuple[int, int]],
) -> Counter:
    """Play the given (run, answer index) pairs and count guess totals."""
    counts: Counter = Counter()
    for run, j in pairs:
        answer = config.answers[j]
        rng = np.random.default_rng([master_seed, run, j])
        try:
            record = play_game(spec, answer, config, rng)
        except Exception as exc:
            raise EvaluationError(
                f"game against answer {answer!r} (run {run}) failed: {exc}"
            ) from exc
        counts[record.guess_count] += 1
    return counts


def evaluate_strategy(
    spec: StrategySpec,
    config: GameConfig,
    runs: int = 1,
    master_seed: int = 0,
    jobs: int = 1,
) -> EvaluationReport:
    """Play every answer `runs` times and aggregate into a report."""
    if runs < 1:
        raise ValueError("runs must be at least 1")
    start = time.perf_counter()
    get_response_table(config)  # built before any fork so workers share it
    pairs = [(run, j) for run in range(runs) for j in range(len(config.answers))]
    if jobs > 1 and len(pairs) > 1:
        workers = min(jobs, len(pairs))
        spans = [pairs[w::workers] for w in range(workers)]
        histogram: Counter = Counter()
        with ProcessPoolExecutor(
            max_workers=workers, mp_context=get_context("fork")
        ) as pool:
            futures = [
                pool.submit(_play_span, spec, config, master_seed, span)
                for span in spans
            ]
            for future in futures:
                histogram.update(future.result())
    else:
        histogram = _play_span(spec, config, master_seed, pairs)
    wall_ms = (time.perf_counter() - start) * 1000.0
    hist = {int(k): int(v) for k, v in sorted(histogram.items())}
    excellent_rate, failure_rate = _rates_from_histogram(hist)
    return EvaluationReport(
        strategy=spec.label,
        runs=runs,
        games=len(pairs),
        seed=master_seed,
        config_digest=config.digest,
        stats=_stats_from_histogram(hist),
        excellent_rate=excellent_rate,
        failure_rate=failure_rate,
        histogram=hist,
        wall_time_ms=wall_ms,
    )


def verify_report_closure(report: EvaluationReport) -> None:
    """Check every derived statistic against the histogram; raise on drift."""
    games = sum(report.histogram.values())
    if games != report.games:
        raise ValueError(f"histogram totals {games} games, report says {report.games}")
    stats = _stats_from_histogram(report.histogram)
    if stats != report.stats:
        raise ValueError(f"stats {report.stats} do not match histogram ({stats})")
    excellent, failure = _rates_from_histogram(report.histogram)
    if excellent != report.excellent_rate or failure != report.failure_rate:
        raise ValueError("outcome rates do not match histogram")


_COLUMNS = ("strategy", "games", "min", "median", "mean", "max", "excellent", "failure")


def _table_row(report: EvaluationReport) -> dict[str, str]:
    return {
        "strategy": report.strategy,
        "games": str(report.games),
        "min": str(report.stats.min),
        "median": str(report.stats.median),
        "mean": f"{report.stats.mean:.3f}",
        "max": str(report.stats.max),
        "excellent": f"{report.excellent_rate * 100:.2f}%",
        "failure": f"{report.failure_rate * 100:.2f}%",
    }


def compare_strategies(reports: Sequence[EvaluationReport]) -> list[dict[str, str]]:
    """One rendered row per report, sorted by mean guess count ascending."""
    if not reports:
        raise ValueError("no reports to compare")
    ordered = sorted(reports, key=lambda r: (r.stats.mean, r.strategy))
    return [_table_row(r) for r in ordered]


def render_comparison(rows: Sequence[dict[str, str]], fmt: str = "text") -> str:
    if fmt == "markdown":
        lines = [
            "| " + " | ".join(_COLUMNS) + " |",
            "|" + "|".join("---" for _ in _COLUMNS) + "|",
        ]
        lines += ["| " + " | ".join(row[c] for c in _COLUMNS) + " |" for row in rows]
        return "\n".join(lines) + "\n"
    if fmt == "csv":
        sink = io.StringIO()
        writer = csv.DictWriter(sink, fieldnames=_COLUMNS)
        writer.writeheader()
        writer.writerows(rows)
        return sink.getvalue()
    if fmt == "text":
        widths = {c: max(len(c), *(len(row[c]) for row in rows)) for c in _COLUMNS}
        lines = ["  ".join(c.ljust(widths[c]) for c in _COLUMNS)]
        lines += ["  ".join(row[c].ljust(widths[c]) for c in _COLUMNS) for row in rows]
        return "\n".join(lines) + "\n"
    raise ValueError(f"unknown format {fmt!r}")


def export_report(report: EvaluationReport, fmt: str = "json") -> str:
    """Render one report: lossless json, flat csv, or a markdown table."""
    if fmt == "json":
        return report.to_json() + "\n"
    if fmt == "markdown":
        return render_comparison([_table_row(report)], "markdown")
    if fmt == "csv":
        top = max(report.histogram) if report.histogram else 0
        fields = [
            "strategy",
            "runs",
            "games",
            "seed",
            "config_digest",
            "min",
            "median",
            "mean",
            "max",
            "excellent_rate",
            "failure_rate",
        ] + [f"guesses_{k}" for k in range(1, top + 1)]
        row = {
            "strategy": report.strategy,
            "runs": report.runs,
            "games": report.games,
            "seed": report.seed,
            "config_digest": report.config_digest,
            "min": report.stats.min,
            "median": report.stats.median,
            "mean": repr(report.stats.mean),
            "max": report.stats.max,
            "excellent_rate": repr(report.excellent_rate),
            "failure_rate": repr(report.failure_rate),
        }
        for k in range(1, top + 1):
            row[f"guesses_{k}"] = report.histogram.get(k, 0)
        sink = io.StringIO()
        writer = csv.DictWriter(sink, fieldnames=fields)
        writer.writeheader()
        writer.writerow(row)
        return sink.getvalue()
    raise ValueError(f"unknown format {fmt!r}")


def export_histogram_plot_data(reports: Iterable[EvaluationReport]) -> str:
    """Per-strategy percentage of games at each guess count (csv)."""
    sink = io.StringIO()
    writer = csv.writer(sink)
    writer.writerow(["strategy", "guess_count", "percent"])
    wrote = False
    for report in reports:
        for k in sorted(report.histogram):
            percent = 100.0 * report.histogram[k] / report.games
            writer.writerow([report.strategy, k, f"{percent:.4f}"])
            wrote = True
    if not wrote:
        raise ValueError("no reports to export")
    return sink.getvalue()
