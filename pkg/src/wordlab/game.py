"""Core types and rules for generalized Wordle-style word games.

A game is described by an alphabet, a word length, an answer list C and a
permitted-guess pool P (with C a subset of P).  After each guess the game
answers with a per-position pattern of green / yellow / gray squares,
written canonically as a digit string such as ``"10011"`` (1 = green,
2 = yellow, 0 = gray).

Duplicate letters follow the deployed game's rules: greens are marked
first, then the remaining answer letters are handed out as yellows
scanning the guess left to right, each answer letter flagging at most one
guess letter.
"""

from __future__ import annotations

import hashlib
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import IO, Iterable, Iterator

import numpy as np

GREEN = 1
YELLOW = 2
GRAY = 0

ASCII_LOWERCASE = "abcdefghijklmnopqrstuvwxyz"

DEFAULT_GUESS_POOL_MODE = "answers-only"
GUESS_POOL_MODES = ("answers-only", "full-pool")


class WordListError(ValueError):
    """A word list or word failed validation."""


class ContradictionError(RuntimeError):
    """Filtering left no candidate: the observed feedback is inconsistent."""


@dataclass(frozen=True)
class Response:
    """Per-position feedback pattern for one guess."""

    squares: tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.squares:
            raise ValueError("response must have at least one square")
        if any(s not in (GREEN, YELLOW, GRAY) for s in self.squares):
            raise ValueError(f"invalid square values in {self.squares!r}")

    @classmethod
    def from_string(cls, text: str) -> "Response":
        """Parse the canonical digit form, e.g. ``"10011"``."""
        try:
            squares = tuple(int(ch) for ch in text)
        except ValueError:
            raise ValueError(f"response string {text!r} must be digits 0/1/2") from None
        return cls(squares)

    def __str__(self) -> str:
        return "".join(str(s) for s in self.squares)

    def __len__(self) -> int:
        return len(self.squares)

    @property
    def is_perfect(self) -> bool:
        return all(s == GREEN for s in self.squares)

    @property
    def green_count(self) -> int:
        return sum(1 for s in self.squares if s == GREEN)

    @property
    def yellow_count(self) -> int:
        return sum(1 for s in self.squares if s == YELLOW)

    def count_key(self) -> tuple[int, int]:
        """Aggregate (greens, yellows) key, ignoring positions."""
        return (self.green_count, self.yellow_count)


def perfect_response(word_length: int) -> Response:
    return Response((GREEN,) * word_length)


def compute_response(guess: str, answer: str) -> Response:
    """Feedback for `guess` against `answer`, with exact duplicate handling.

    Pass 1 marks greens and collects the answer's remaining letters.
    Pass 2 walks the non-green guess positions left to right, marking a
    yellow whenever the letter is still available and consuming one
    occurrence, so an answer letter never flags two guess letters.
    """
    if len(guess) != len(answer):
        raise ValueError(f"guess {guess!r} and answer {answer!r} differ in length")
    squares = [GRAY] * len(guess)
    available: Counter[str] = Counter()
    for i, (g, a) in enumerate(zip(guess, answer)):
        if g == a:
            squares[i] = GREEN
        else:
            available[a] += 1
    for i, g in enumerate(guess):
        if squares[i] != GREEN and available[g] > 0:
            squares[i] = YELLOW
            available[g] -= 1
    return Response(tuple(squares))


def is_consistent(candidate: str, guess: str, observed: Response) -> bool:
    """Would `candidate`, as the answer, have produced `observed`?"""
    return compute_response(guess, candidate) == observed


@dataclass(frozen=True)
class CandidateSet:
    """Ordered subset of the answer list; order drives tie-breaking."""

    words: tuple[str, ...]

    def __post_init__(self) -> None:
        if len(set(self.words)) != len(self.words):
            raise ValueError("candidate set contains duplicates")

    def __len__(self) -> int:
        return len(self.words)

    def __iter__(self) -> Iterator[str]:
        return iter(self.words)

    def __contains__(self, word: object) -> bool:
        return word in self.words

    def __getitem__(self, index: int) -> str:
        return self.words[index]


def filter_candidates(candidates: CandidateSet, guess: str, observed: Response) -> CandidateSet:
    """Keep the members that are consistent with (guess, observed).

    Raises ContradictionError when nothing survives; in self-play that is
    a bug, via external feedback it means the reported colors are wrong.
    """
    kept = tuple(w for w in candidates if is_consistent(w, guess, observed))
    if not kept:
        raise ContradictionError(
            f"no candidate consistent with guess {guess!r} and response {observed}"
        )
    return CandidateSet(kept)


def has_repeated_symbols(word: str) -> bool:
    return len(set(word)) != len(word)


# ---------------------------------------------------------------------------
# Response pattern enumeration


def _pattern_is_feasible(squares: tuple[int, ...]) -> bool:
    # Exactly one non-green square, and it is yellow: the yellow letter's only
    # possible home is its own position, which would have made it green.
    greens = sum(1 for s in squares if s == GREEN)
    yellows = sum(1 for s in squares if s == YELLOW)
    return not (greens == len(squares) - 1 and yellows == 1)


def is_feasible_response(response: Response) -> bool:
    """True unless the pattern is the impossible all-green-but-one-yellow."""
    return _pattern_is_feasible(response.squares)


@lru_cache(maxsize=None)
def feasible_response_patterns(word_length: int) -> tuple[Response, ...]:
    """All realizable patterns of the given length, in pattern-id order."""
    if word_length < 1:
        raise ValueError("word_length must be >= 1")
    patterns = []
    for pid in range(3**word_length):
        squares = _decode_pattern_id(pid, word_length)
        if _pattern_is_feasible(squares):
            patterns.append(Response(squares))
    return tuple(patterns)


@lru_cache(maxsize=None)
def feasible_count_keys(word_length: int) -> tuple[tuple[int, int], ...]:
    """All realizable (greens, yellows) aggregates, most greens first."""
    keys = []
    for g in range(word_length, -1, -1):
        for y in range(word_length - g + 1):
            if not (g == word_length - 1 and y == 1):
                keys.append((g, y))
    return tuple(keys)


def response_id(response: Response) -> int:
    """Base-3 encoding of the digit string, most significant digit first."""
    pid = 0
    for s in response.squares:
        pid = pid * 3 + s
    return pid


def _decode_pattern_id(pid: int, word_length: int) -> tuple[int, ...]:
    squares = [0] * word_length
    for i in range(word_length - 1, -1, -1):
        squares[i] = pid % 3
        pid //= 3
    return tuple(squares)


def response_from_id(pid: int, word_length: int) -> Response:
    if not 0 <= pid < 3**word_length:
        raise ValueError(f"pattern id {pid} out of range for length {word_length}")
    return Response(_decode_pattern_id(pid, word_length))


# ---------------------------------------------------------------------------
# Configuration


def load_word_list(source: Iterable[str] | IO[str], *, alphabet: str, word_length: int) -> list[str]:
    """Read one word per line, lowercase it, and validate.

    Rejects (naming the offending line) words of the wrong length, words
    using symbols outside the alphabet, and duplicates.  File order is
    preserved.
    """
    symbols = set(alphabet)
    words: list[str] = []
    seen: set[str] = set()
    for lineno, raw in enumerate(source, start=1):
        word = raw.strip().lower()
        if not word:
            continue
        if len(word) != word_length:
            raise WordListError(
                f"line {lineno}: {word!r} has length {len(word)}, expected {word_length}"
            )
        bad = next((ch for ch in word if ch not in symbols), None)
        if bad is not None:
            raise WordListError(f"line {lineno}: {word!r} uses symbol {bad!r} outside the alphabet")
        if word in seen:
            raise WordListError(f"line {lineno}: duplicate word {word!r}")
        seen.add(word)
        words.append(word)
    return words


@dataclass(frozen=True)
class GameConfig:
    """A word game: alphabet, word length, answer list and guess pool."""

    answers: tuple[str, ...]
    allowed: tuple[str, ...] = ()
    alphabet: str = ASCII_LOWERCASE
    word_length: int = 5
    guess_pool_mode: str = DEFAULT_GUESS_POOL_MODE

    def __post_init__(self) -> None:
        if len(set(self.alphabet)) != len(self.alphabet):
            raise ValueError("alphabet contains duplicate symbols")
        if self.word_length < 1:
            raise ValueError("word_length must be positive")
        if self.guess_pool_mode not in GUESS_POOL_MODES:
            raise ValueError(f"guess_pool_mode must be one of {GUESS_POOL_MODES}")
        if not self.answers:
            raise ValueError("answer list is empty")
        if not self.allowed:
            object.__setattr__(self, "allowed", self.answers)
        symbols = set(self.alphabet)
        for name, words in (("answers", self.answers), ("allowed", self.allowed)):
            for w in words:
                if len(w) != self.word_length or any(ch not in symbols for ch in w):
                    raise WordListError(f"{name}: invalid word {w!r}")
            if len(set(words)) != len(words):
                raise WordListError(f"{name}: list contains duplicates")
        if self.guess_pool_mode == "full-pool":
            missing = set(self.answers) - set(self.allowed)
            if missing:
                raise WordListError(
                    f"answers not present in the allowed pool: {sorted(missing)[:5]}..."
                )
        if len(self.allowed) < len(self.answers):
            raise WordListError("allowed pool is smaller than the answer list")

    @property
    def guess_pool(self) -> tuple[str, ...]:
        """Words eligible as an opening guess under the configured mode."""
        return self.allowed if self.guess_pool_mode == "full-pool" else self.answers

    @property
    def digest(self) -> str:
        """Short fingerprint of everything that affects results."""
        h = hashlib.sha256()
        h.update(self.alphabet.encode())
        h.update(str(self.word_length).encode())
        h.update(self.guess_pool_mode.encode())
        h.update("\n".join(self.answers).encode())
        h.update("\n".join(self.allowed).encode())
        return h.hexdigest()[:12]

    def candidate_set(self) -> CandidateSet:
        return CandidateSet(self.answers)

    def symbol_index(self) -> dict[str, int]:
        return {s: i for i, s in enumerate(self.alphabet)}

    def validate_word(self, word: str) -> str:
        """Lowercase and check a single externally supplied word."""
        word = word.strip().lower()
        if len(word) != self.word_length:
            raise WordListError(f"{word!r} has length {len(word)}, expected {self.word_length}")
        symbols = set(self.alphabet)
        bad = next((ch for ch in word if ch not in symbols), None)
        if bad is not None:
            raise WordListError(f"{word!r} uses symbol {bad!r} outside the alphabet")
        return word


def _read_lines(path: Path) -> list[str]:
    with open(path, encoding="utf-8") as f:
        return f.readlines()


def load_config(
    answers_path: str | Path,
    allowed_path: str | Path | None = None,
    *,
    alphabet: str = ASCII_LOWERCASE,
    word_length: int = 5,
    guess_pool_mode: str = DEFAULT_GUESS_POOL_MODE,
) -> GameConfig:
    """Build a GameConfig from word-list files."""
    answers = load_word_list(_read_lines(Path(answers_path)), alphabet=alphabet, word_length=word_length)
    allowed: list[str] = []
    if allowed_path is not None:
        allowed = load_word_list(_read_lines(Path(allowed_path)), alphabet=alphabet, word_length=word_length)
    return GameConfig(
        answers=tuple(answers),
        allowed=tuple(allowed),
        alphabet=alphabet,
        word_length=word_length,
        guess_pool_mode=guess_pool_mode,
    )


def parse_config_file(path: str | Path) -> GameConfig:
    """Read a key = value game description.

    Recognized keys: alphabet, word_length, answers, allowed,
    guess_pool_mode.  The word-list paths are resolved relative to the
    config file.  Unknown keys are rejected.
    """
    path = Path(path)
    values: dict[str, str] = {}
    known = {"alphabet", "word_length", "answers", "allowed", "guess_pool_mode"}
    for lineno, raw in enumerate(_read_lines(path), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise WordListError(f"{path}:{lineno}: expected 'key = value'")
        key, _, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if key not in known:
            raise WordListError(f"{path}:{lineno}: unknown key {key!r}")
        values[key] = value
    if "answers" not in values:
        raise WordListError(f"{path}: missing required key 'answers'")
    base = path.parent
    return load_config(
        base / values["answers"],
        base / values["allowed"] if "allowed" in values else None,
        alphabet=values.get("alphabet", ASCII_LOWERCASE),
        word_length=int(values.get("word_length", "5")),
        guess_pool_mode=values.get("guess_pool_mode", DEFAULT_GUESS_POOL_MODE),
    )


_DEFAULT_CONFIGS: dict[str, GameConfig] = {}


def default_config(guess_pool_mode: str = DEFAULT_GUESS_POOL_MODE) -> GameConfig:
    """The packaged 2315-answer game with the official permitted-guess pool."""
    if guess_pool_mode not in _DEFAULT_CONFIGS:
        data = resources.files("wordlab.data")
        answers = load_word_list(
            data.joinpath("answers.txt").read_text().splitlines(), alphabet=ASCII_LOWERCASE, word_length=5
        )
        allowed = load_word_list(
            data.joinpath("allowed.txt").read_text().splitlines(), alphabet=ASCII_LOWERCASE, word_length=5
        )
        _DEFAULT_CONFIGS[guess_pool_mode] = GameConfig(
            answers=tuple(answers), allowed=tuple(allowed), guess_pool_mode=guess_pool_mode
        )
    return _DEFAULT_CONFIGS[guess_pool_mode]


# ---------------------------------------------------------------------------
# Memoized response table
#
# Strategy sweeps recompute millions of identical (guess, answer) responses;
# the table computes each pair once, vectorized one guess row at a time.


def _encode_words(words: tuple[str, ...], symbol_index: dict[str, int]) -> np.ndarray:
    return np.array([[symbol_index[ch] for ch in w] for w in words], dtype=np.int16)


def _pattern_dtype(word_length: int) -> type:
    span = 3**word_length
    if span <= 2**8:
        return np.uint8
    if span <= 2**16:
        return np.uint16
    return np.uint32


def _response_id_row(
    guess_codes: np.ndarray, answer_codes: np.ndarray, n_symbols: int
) -> np.ndarray:
    """Pattern ids of one guess against every answer, fully vectorized."""
    m, length = answer_codes.shape
    green = answer_codes == guess_codes[np.newaxis, :]
    # Letters each answer still has to hand out, excluding green positions.
    avail = np.zeros((m, n_symbols), dtype=np.int16)
    rows = np.arange(m)
    for j in range(length):
        np.add.at(avail, (rows, answer_codes[:, j]), ~green[:, j])
    trits = green.astype(np.int64)
    for j in range(length):
        s = int(guess_codes[j])
        hit = ~green[:, j] & (avail[:, s] > 0)
        trits[hit, j] = YELLOW
        avail[hit, s] -= 1
    weights = 3 ** np.arange(length - 1, -1, -1, dtype=np.int64)
    return trits @ weights


class ResponseTable:
    """Pattern ids for every (pool guess, answer) pair of one game config.

    ``ids[i, j]`` is the response id of pool word i guessed against answer
    j.  Rows cover the configured guess pool (which is the answer list
    itself in answers-only mode); columns cover the answers.
    """

    def __init__(self, config: GameConfig):
        self.config = config
        self.pool_words = config.guess_pool
        self.answer_words = config.answers
        self.pool_index = {w: i for i, w in enumerate(self.pool_words)}
        self.answer_index = {w: j for j, w in enumerate(self.answer_words)}
        sym = config.symbol_index()
        pool_codes = _encode_words(self.pool_words, sym)
        answer_codes = _encode_words(self.answer_words, sym)
        dtype = _pattern_dtype(config.word_length)
        ids = np.empty((len(self.pool_words), len(self.answer_words)), dtype=dtype)
        for i in range(len(self.pool_words)):
            ids[i] = _response_id_row(pool_codes[i], answer_codes, len(config.alphabet))
        ids.setflags(write=False)
        self.ids = ids
        self._count_keys: np.ndarray | None = None

    def row(self, guess: str) -> np.ndarray:
        return self.ids[self.pool_index[guess]]

    def id_of(self, guess: str, answer: str) -> int:
        return int(self.ids[self.pool_index[guess], self.answer_index[answer]])

    def count_key_of_id(self) -> np.ndarray:
        """Map from pattern id to composite (greens, yellows) code.

        The composite code is ``greens * (word_length + 1) + yellows``,
        dense enough for bincount-based grouping.
        """
        if self._count_keys is None:
            length = self.config.word_length
            span = 3**length
            ids = np.arange(span, dtype=np.int64)
            greens = np.zeros(span, dtype=np.int64)
            yellows = np.zeros(span, dtype=np.int64)
            for _ in range(length):
                digit = ids % 3
                greens += digit == GREEN
                yellows += digit == YELLOW
                ids //= 3
            keys = greens * (length + 1) + yellows
            keys.setflags(write=False)
            self._count_keys = keys
        return self._count_keys


_TABLE_CACHE: dict[str, ResponseTable] = {}


def get_response_table(config: GameConfig) -> ResponseTable:
    """Shared read-only table per config; build it once, reuse everywhere."""
    key = config.digest
    if key not in _TABLE_CACHE:
        _TABLE_CACHE[key] = ResponseTable(config)
    return _TABLE_CACHE[key]
