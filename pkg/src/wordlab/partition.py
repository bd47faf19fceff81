"""Partitioning a candidate set by the responses a guess can produce.

Each candidate answer maps the guess to some response, so a guess chops
the candidate set into disjoint groups — one per distinct response
(by-pattern mode) or per (green count, yellow count) aggregate (by-count
mode).  The shape of that partition is what makes a guess informative:
many small groups mean the next response will discard most candidates.

Group sizes give a probability vector over responses.  Its Shannon
entropy, and its divergence from a uniform spread over all feasible
keys, are the two scalar summaries used by the search strategies.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import log2
from typing import Iterable, Mapping, Sequence

import numpy as np

from wordlab.game import (
    CandidateSet,
    GameConfig,
    Response,
    compute_response,
    feasible_count_keys,
    feasible_response_patterns,
    get_response_table,
    response_id,
)

MODES = ("by-pattern", "by-count")

# The productive objectives and their mirror images.  "min-entropy"
# wants the guess whose response will leave the least expected
# uncertainty about the answer; expected remaining entropy over the
# groups is log2(x) - H(p), so minimizing it means maximizing the
# partition entropy H(p).  "max-kld" wants the largest expected
# divergence of the post-response candidate distribution from the
# current one, and that expectation works out to exactly H(p) again —
# the two names select the same word.  The anti-objectives invert the
# choice and exist only to measure how badly the mirror image plays.
OBJECTIVES = ("min-entropy", "max-kld", "max-entropy", "min-kld")
_FRAGMENTING = frozenset({"min-entropy", "max-kld"})

PartitionKey = Response | tuple[int, int]


@dataclass(frozen=True)
class Partition:
    """Disjoint response groups of one candidate set under one guess."""

    groups: Mapping[PartitionKey, CandidateSet]
    total: int

    def sizes(self) -> dict[PartitionKey, int]:
        return {key: len(group) for key, group in self.groups.items()}


def _check_mode(mode: str) -> None:
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}")


def feasible_key_count(word_length: int, mode: str) -> int:
    """Number of achievable partition keys for the mode (238/20 at length 5)."""
    _check_mode(mode)
    if mode == "by-pattern":
        return len(feasible_response_patterns(word_length))
    return len(feasible_count_keys(word_length))


def partition_set(
    candidates: CandidateSet | Sequence[str], guess: str, mode: str = "by-pattern"
) -> Partition:
    """Group candidates by their response (or response aggregate) to `guess`."""
    _check_mode(mode)
    words = list(candidates)
    if not words:
        raise ValueError("candidate set is empty")
    buckets: dict[PartitionKey, list[str]] = {}
    for word in words:
        response = compute_response(guess, word)
        key: PartitionKey = response if mode == "by-pattern" else response.count_key()
        buckets.setdefault(key, []).append(word)
    groups = {key: CandidateSet(tuple(members)) for key, members in buckets.items()}
    return Partition(groups=groups, total=len(words))


def _key_order(key: PartitionKey) -> tuple[int, ...]:
    return key.squares if isinstance(key, Response) else key


def partition_distribution(partition: Partition) -> np.ndarray:
    """Group probabilities in ascending key order; sums to one."""
    if partition.total <= 0:
        raise ValueError("partition is empty")
    keys = sorted(partition.groups, key=_key_order)
    sizes = np.array([len(partition.groups[k]) for k in keys], dtype=np.float64)
    return sizes / partition.total


def _dense_key_counts(
    candidates: Iterable[str], guess: str, mode: str
) -> np.ndarray:
    """Group sizes as a bincount over dense key ids (shared by both the
    plain path and the table-backed path, so their float entropies agree
    bit for bit)."""
    length = len(guess)
    ids = []
    for word in candidates:
        response = compute_response(guess, word)
        if mode == "by-pattern":
            ids.append(response_id(response))
        else:
            greens, yellows = response.count_key()
            ids.append(greens * (length + 1) + yellows)
    return np.bincount(np.array(ids, dtype=np.int64))


def _entropy_of_counts(counts: np.ndarray) -> float:
    total = counts.sum()
    positive = counts[counts > 0].astype(np.float64)
    p = positive / total
    return float(-(p * np.log2(p)).sum())


def partition_entropy(
    candidates: CandidateSet | Sequence[str], guess: str, mode: str = "by-pattern"
) -> float:
    """Shannon entropy (base 2) of the guess's group-size distribution."""
    _check_mode(mode)
    words = list(candidates)
    if not words:
        raise ValueError("candidate set is empty")
    return _entropy_of_counts(_dense_key_counts(words, guess, mode))


def partition_kld_uniform(
    candidates: CandidateSet | Sequence[str], guess: str, mode: str = "by-pattern"
) -> float:
    """Divergence of the group distribution from uniform over all feasible
    keys of the mode; with that fixed reference it equals log2(b) - H."""
    _check_mode(mode)
    words = list(candidates)
    if not words:
        raise ValueError("candidate set is empty")
    b = feasible_key_count(len(guess), mode)
    return log2(b) - _entropy_of_counts(_dense_key_counts(words, guess, mode))


def _entropies_via_table(
    pool: Sequence[str], candidates: Sequence[str], mode: str, config: GameConfig
) -> np.ndarray | None:
    """Partition entropy of every pool word at once, via the memoized
    response table; None when some word falls outside the table."""
    table = get_response_table(config)
    try:
        pool_rows = np.array([table.pool_index[w] for w in pool], dtype=np.int64)
        cand_cols = np.array([table.answer_index[w] for w in candidates], dtype=np.int64)
    except KeyError:
        return None
    ids = table.ids[pool_rows][:, cand_cols].astype(np.int64)
    if mode == "by-count":
        ids = table.count_key_of_id()[ids]
    span = int(ids.max()) + 1
    out = np.empty(len(pool), dtype=np.float64)
    for i in range(len(pool)):
        out[i] = _entropy_of_counts(np.bincount(ids[i], minlength=span))
    return out


def partition_entropies(
    pool: CandidateSet | Sequence[str],
    candidates: CandidateSet | Sequence[str],
    mode: str = "by-pattern",
    config: GameConfig | None = None,
) -> np.ndarray:
    """Partition entropy of every pool word over the candidate set.

    Passing the game config routes the scan through the shared response
    table, which matters when the pool is the full word list.
    """
    _check_mode(mode)
    pool_words = list(pool)
    if not pool_words:
        raise ValueError("guess pool is empty")
    cand_words = list(candidates)
    if not cand_words:
        raise ValueError("candidate set is empty")
    if config is not None:
        via_table = _entropies_via_table(pool_words, cand_words, mode, config)
        if via_table is not None:
            return via_table
    return np.array(
        [_entropy_of_counts(_dense_key_counts(cand_words, g, mode)) for g in pool_words]
    )


def select_guess_partition(
    pool: CandidateSet | Sequence[str],
    candidates: CandidateSet | Sequence[str],
    objective: str,
    mode: str = "by-pattern",
    config: GameConfig | None = None,
) -> str:
    """The pool word optimizing the partition objective over `candidates`.

    Ties go to the earliest pool word.
    """
    if objective not in OBJECTIVES:
        raise ValueError(f"objective must be one of {OBJECTIVES}")
    pool_words = list(pool)
    entropies = partition_entropies(pool_words, candidates, mode, config)
    if objective in _FRAGMENTING:
        pick = int(np.argmax(entropies))
    else:
        pick = int(np.argmin(entropies))
    return pool_words[pick]
