"""Collocation statistics and symbol-based guess scoring.

Over a candidate set we track, for every alphabet symbol, the probability
that a word includes it and, conditioned on a symbol being present, the
probability of seeing each other symbol in the same word.  A symbol's
usefulness as (part of) a guess is summarized either by the entropy of
that conditional collection or by its divergence from a uniform spread.
Word scores add the per-position symbol scores, optionally weighted by
the symbols' inclusion probabilities.

The conditional values are used exactly as defined, without forcing them
to sum to one (inclusion events overlap, so the column total can exceed
1); pass ``renormalize=True`` to experiment with proper distributions.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from wordlab.game import CandidateSet, GameConfig, has_repeated_symbols

SCORER_KINDS = ("entropy", "kld")
WEIGHTINGS = ("unweighted", "weighted")
DIRECTIONS = ("argmax", "argmin")

_WEIGHT_ABBREV = {"unweighted": "un", "weighted": "wht"}
_DIRECTION_ABBREV = {"argmax": "max", "argmin": "min"}


class UndefinedSymbolError(ValueError):
    """The symbol occurs in no candidate word, so its stats are undefined."""


@dataclass(frozen=True)
class ScorerSpec:
    """One point in the scorer grid: kind x weighting x direction."""

    kind: str = "entropy"
    weighting: str = "unweighted"
    direction: str = "argmax"

    def __post_init__(self) -> None:
        if self.kind not in SCORER_KINDS:
            raise ValueError(f"kind must be one of {SCORER_KINDS}")
        if self.weighting not in WEIGHTINGS:
            raise ValueError(f"weighting must be one of {WEIGHTINGS}")
        if self.direction not in DIRECTIONS:
            raise ValueError(f"direction must be one of {DIRECTIONS}")

    @property
    def canonical_name(self) -> str:
        """Stable wire name: "un-max", "wht-min", "un-max-kld", ..."""
        name = f"{_WEIGHT_ABBREV[self.weighting]}-{_DIRECTION_ABBREV[self.direction]}"
        if self.kind == "kld":
            name += "-kld"
        return name

    @classmethod
    def parse(cls, name: str) -> "ScorerSpec":
        parts = name.split("-")
        kind = "entropy"
        if parts and parts[-1] == "kld":
            kind = "kld"
            parts = parts[:-1]
        if len(parts) != 2:
            raise ValueError(f"unrecognized scorer name {name!r}")
        weight_map = {v: k for k, v in _WEIGHT_ABBREV.items()}
        dir_map = {v: k for k, v in _DIRECTION_ABBREV.items()}
        if parts[0] not in weight_map or parts[1] not in dir_map:
            raise ValueError(f"unrecognized scorer name {name!r}")
        return cls(kind=kind, weighting=weight_map[parts[0]], direction=dir_map[parts[1]])


@dataclass(frozen=True)
class CollocationStats:
    """Immutable symbol statistics snapshot for one candidate set.

    ``cond[x, s]`` is the probability of symbol x appearing in a word
    given that s does; the diagonal holds the probability of s appearing
    at least twice.  Columns for symbols present in no word are NaN and
    reported through ``defined``.
    """

    config: GameConfig
    size: int
    uncond: np.ndarray
    joint: np.ndarray
    cond: np.ndarray
    defined: np.ndarray
    entropy: np.ndarray
    kld: np.ndarray
    renormalized: bool


class _SymbolCounts:
    """Per-word symbol occurrence counts for a config's answer list."""

    def __init__(self, config: GameConfig):
        n = len(config.alphabet)
        sym = config.symbol_index()
        counts = np.zeros((len(config.answers), n), dtype=np.int8)
        for i, word in enumerate(config.answers):
            for ch in word:
                counts[i, sym[ch]] += 1
        counts.setflags(write=False)
        self.counts = counts
        self.word_index = {w: i for i, w in enumerate(config.answers)}


_COUNTS_CACHE: dict[str, _SymbolCounts] = {}


def _symbol_counts(config: GameConfig) -> _SymbolCounts:
    key = config.digest
    if key not in _COUNTS_CACHE:
        _COUNTS_CACHE[key] = _SymbolCounts(config)
    return _COUNTS_CACHE[key]


def _candidate_indices(candidates: Iterable[str], config: GameConfig) -> np.ndarray:
    index = _symbol_counts(config).word_index
    return np.fromiter((index[w] for w in candidates), dtype=np.int64)


def stats_from_indices(
    config: GameConfig, indices: np.ndarray, renormalize: bool = False
) -> CollocationStats:
    """Collocation statistics for the answers selected by `indices`."""
    if len(indices) == 0:
        raise ValueError("candidate set is empty")
    counts = _symbol_counts(config).counts[indices]
    size = len(indices)
    contains = counts >= 1
    uncond = contains.mean(axis=0)
    joint = (contains.T.astype(np.float64) @ contains.astype(np.float64)) / size
    np.fill_diagonal(joint, (counts >= 2).mean(axis=0))
    defined = uncond > 0
    with np.errstate(invalid="ignore", divide="ignore"):
        cond = joint / uncond[np.newaxis, :]
    cond[:, ~defined] = np.nan
    if renormalize:
        colsum = np.nansum(cond, axis=0)
        scale = np.where(colsum > 0, colsum, 1.0)
        cond = cond / scale[np.newaxis, :]
        cond[:, ~defined] = np.nan
    n = len(config.alphabet)
    with np.errstate(invalid="ignore", divide="ignore"):
        log_cond = np.log2(cond)
        positive = np.nan_to_num(cond) > 0
        plogp = np.where(positive, cond * log_cond, 0.0)
        kld_terms = np.where(positive, cond * (np.log2(n) + log_cond), 0.0)
    entropy = np.where(defined, -plogp.sum(axis=0), np.nan)
    kld = np.where(defined, kld_terms.sum(axis=0), np.nan)
    return CollocationStats(
        config=config,
        size=size,
        uncond=uncond,
        joint=joint,
        cond=cond,
        defined=defined,
        entropy=entropy,
        kld=kld,
        renormalized=renormalize,
    )


def compute_collocation_stats(
    candidates: CandidateSet | Sequence[str], config: GameConfig, renormalize: bool = False
) -> CollocationStats:
    return stats_from_indices(config, _candidate_indices(candidates, config), renormalize)


def unconditional_probs(
    candidates: CandidateSet | Sequence[str], config: GameConfig
) -> dict[str, float]:
    """Per-symbol inclusion probability over the candidate set."""
    stats = compute_collocation_stats(candidates, config)
    return {s: float(stats.uncond[i]) for i, s in enumerate(config.alphabet)}


def conditional_probs(
    candidates: CandidateSet | Sequence[str], config: GameConfig
) -> np.ndarray:
    """The full conditional matrix; NaN columns mark absent symbols."""
    return compute_collocation_stats(candidates, config).cond


def _symbol_pos(stats: CollocationStats, symbol: str) -> int:
    try:
        i = stats.config.alphabet.index(symbol)
    except ValueError:
        raise UndefinedSymbolError(f"{symbol!r} is not in the alphabet") from None
    if not stats.defined[i]:
        raise UndefinedSymbolError(f"{symbol!r} occurs in no candidate word")
    return i


def symbol_entropy(stats: CollocationStats, symbol: str) -> float:
    """Entropy of the symbol's conditional collocation values (base 2)."""
    return float(stats.entropy[_symbol_pos(stats, symbol)])


def symbol_kld_uniform(stats: CollocationStats, symbol: str) -> float:
    """Divergence of the conditional values from a uniform 1/n spread."""
    return float(stats.kld[_symbol_pos(stats, symbol)])


def _symbol_values(stats: CollocationStats, spec: ScorerSpec) -> np.ndarray:
    values = stats.entropy if spec.kind == "entropy" else stats.kld
    # Absent symbols contribute nothing instead of erroring, so scoring
    # stays total over pool words outside the candidate set.
    return np.where(stats.defined, values, 0.0)


def _encode(words: Sequence[str], config: GameConfig) -> np.ndarray:
    sym = config.symbol_index()
    return np.array([[sym[ch] for ch in w] for w in words], dtype=np.int64)


def score_words(
    words: Sequence[str], stats: CollocationStats, spec: ScorerSpec
) -> np.ndarray:
    """Scores for many words at once (order preserved)."""
    codes = _encode(words, stats.config)
    values = _symbol_values(stats, spec)[codes]
    if spec.weighting == "unweighted":
        return values.sum(axis=1)
    weights = np.where(stats.defined, stats.uncond, 0.0)[codes]
    norm = weights.sum(axis=1)
    safe = np.where(norm > 0, norm, 1.0)
    return np.where(norm > 0, (weights * values).sum(axis=1) / safe, 0.0)


def word_score(word: str, stats: CollocationStats, spec: ScorerSpec) -> float:
    """Score one word; a zero normalizer yields a flagged zero score."""
    return float(score_words([word], stats, spec)[0])


def select_guess(
    pool: CandidateSet | Sequence[str],
    stats: CollocationStats,
    spec: ScorerSpec,
    first_guess_no_repeat: bool = False,
) -> str:
    """The pool word optimizing the scorer; ties go to the earliest word.

    With `first_guess_no_repeat` the pool is first restricted to words
    without repeated symbols, falling back to the whole pool when nothing
    qualifies (late-game pools may hold only repeat-letter words).
    """
    words = list(pool)
    if not words:
        raise ValueError("guess pool is empty")
    if first_guess_no_repeat:
        restricted = [w for w in words if not has_repeated_symbols(w)]
        if restricted:
            words = restricted
    scores = score_words(words, stats, spec)
    pick = int(np.argmax(scores) if spec.direction == "argmax" else np.argmin(scores))
    return words[pick]
