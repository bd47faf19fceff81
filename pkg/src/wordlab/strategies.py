"""Named guessing strategies and single-game play.

A strategy is one point in a small grid: a family (random baseline,
collocation scoring, or partition search), the family's scoring knobs,
and a first-guess policy.  Play is strictly hard-mode: after the first
guess, every guess comes from the candidates that survive all responses
so far, so the candidate set shrinks every turn and a game always
terminates.

Presets give the grid points stable names, e.g. "hard-mode",
"colloc-un-max-nr", "colloc-kld", "search-kld-by-count".
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

import numpy as np

from wordlab.game import (
    CandidateSet,
    GameConfig,
    Response,
    get_response_table,
    has_repeated_symbols,
    perfect_response,
    response_from_id,
    response_id,
)
from wordlab.partition import MODES, OBJECTIVES, select_guess_partition
from wordlab.scoring import ScorerSpec, compute_collocation_stats, select_guess

FAMILIES = ("random-baseline", "collocation", "partition-search")
FIRST_GUESS_POLICIES = ("random", "score-optimal", "score-optimal-no-repeat")

# A legitimate game ends far earlier (the observed worst case is 11
# turns); hitting the cap means a broken filter or selector.
SAFETY_CAP = 30

_SEARCH_ALIASES = {
    "entropy": "min-entropy",
    "kld": "max-kld",
    "min-entropy": "min-entropy",
    "max-kld": "max-kld",
    "max-entropy": "max-entropy",
    "min-kld": "min-kld",
}


@dataclass(frozen=True)
class StrategySpec:
    """One configured strategy; family decides which fields matter."""

    family: str
    scorer: ScorerSpec | None = None
    objective: str | None = None
    mode: str = "by-pattern"
    first_guess_policy: str = "random"
    renormalize: bool = False
    seed: int | None = None
    preset_name: str | None = None

    def __post_init__(self) -> None:
        if self.family not in FAMILIES:
            raise ValueError(f"family must be one of {FAMILIES}")
        if self.first_guess_policy not in FIRST_GUESS_POLICIES:
            raise ValueError(f"first_guess_policy must be one of {FIRST_GUESS_POLICIES}")
        if self.renormalize and self.family != "collocation":
            raise ValueError("renormalize only applies to collocation scoring")
        if self.family == "collocation":
            if self.scorer is None:
                raise ValueError("collocation strategies need a scorer")
            if self.first_guess_policy == "random":
                raise ValueError("collocation strategies pick the first guess by score")
        if self.family == "partition-search":
            if self.objective not in OBJECTIVES:
                raise ValueError(f"objective must be one of {OBJECTIVES}")
            if self.mode not in MODES:
                raise ValueError(f"mode must be one of {MODES}")
            if self.first_guess_policy == "random":
                raise ValueError("search strategies pick the first guess by score")
        if self.family == "random-baseline" and self.first_guess_policy != "random":
            raise ValueError("the random baseline draws its first guess at random")

    @property
    def label(self) -> str:
        if self.preset_name:
            return self.preset_name
        if self.family == "random-baseline":
            return "hard-mode"
        if self.family == "collocation":
            suffix = "-nr" if self.first_guess_policy == "score-optimal-no-repeat" else ""
            return f"colloc-{self.scorer.canonical_name}{suffix}"
        return f"search-{self.objective}-{self.mode}"

    def _cache_key(self) -> tuple:
        return (
            self.family,
            self.scorer,
            self.objective,
            self.mode,
            self.first_guess_policy,
            self.renormalize,
        )


@dataclass(frozen=True)
class GameRecord:
    """Complete transcript of one game: the answer and every turn."""

    answer: str
    turns: tuple[tuple[str, Response], ...]

    @property
    def guess_count(self) -> int:
        return len(self.turns)

    @property
    def outcome(self) -> str:
        if self.guess_count <= 2:
            return "excellent"
        if self.guess_count > 6:
            return "failure"
        return "normal"

    def guesses(self) -> Iterator[str]:
        return (guess for guess, _ in self.turns)


def _known_presets() -> list[str]:
    names = ["hard-mode"]
    for kind_suffix in ("", "-kld"):
        for weight in ("un", "wht"):
            for direction in ("max", "min"):
                for nr in ("", "-nr"):
                    names.append(f"colloc-{weight}-{direction}{kind_suffix}{nr}")
    names.append("colloc-kld")
    for alias in ("entropy", "kld", "min-entropy", "max-kld", "max-entropy", "min-kld"):
        names.append(f"search-{alias}")
        for mode in MODES:
            names.append(f"search-{alias}-{mode}")
    return names


def preset_names() -> tuple[str, ...]:
    """All accepted preset names, in presentation order."""
    return tuple(_known_presets())


def grid_preset_names() -> tuple[str, ...]:
    """The 16-strategy comparison grid (plus the baseline, first)."""
    names = ["hard-mode"]
    for kind_suffix in ("", "-kld"):
        for weight in ("un", "wht"):
            for direction in ("max", "min"):
                names.append(f"colloc-{weight}-{direction}{kind_suffix}-nr")
    for objective in OBJECTIVES:
        for mode in MODES:
            names.append(f"search-{objective}-{mode}")
    return tuple(names)


def resolve_preset(name: str, seed: int | None = None) -> StrategySpec:
    """Turn a preset name into its StrategySpec.

    Collocation names follow "colloc-<scorer>[-nr]"; search names follow
    "search-<objective>[-<mode>]" where "entropy" and "kld" abbreviate
    the productive objectives and the mode defaults to by-pattern.
    """
    if name == "hard-mode":
        return StrategySpec(family="random-baseline", seed=seed, preset_name=name)
    if name == "colloc-kld":
        # Each symbol's co-occurrence profile is renormalized into a
        # proper distribution before the divergence, and words whose
        # symbols stay closest to uniform win.  Of every reading of the
        # divergence scorer, this is the only one whose benchmark
        # numbers line up with the strongest entropy variants.
        return StrategySpec(
            family="collocation",
            scorer=ScorerSpec(kind="kld", direction="argmin"),
            first_guess_policy="score-optimal-no-repeat",
            renormalize=True,
            seed=seed,
            preset_name=name,
        )
    if name.startswith("colloc-"):
        rest = name[len("colloc-") :]
        policy = "score-optimal"
        if rest.endswith("-nr"):
            policy = "score-optimal-no-repeat"
            rest = rest[: -len("-nr")]
        try:
            scorer = ScorerSpec.parse(rest)
        except ValueError:
            raise ValueError(_unknown_preset_message(name)) from None
        return StrategySpec(
            family="collocation",
            scorer=scorer,
            first_guess_policy=policy,
            seed=seed,
            preset_name=name,
        )
    if name.startswith("search-"):
        rest = name[len("search-") :]
        mode = "by-pattern"
        for candidate in MODES:
            if rest.endswith("-" + candidate):
                mode = candidate
                rest = rest[: -len(candidate) - 1]
                break
        objective = _SEARCH_ALIASES.get(rest)
        if objective is None:
            raise ValueError(_unknown_preset_message(name))
        return StrategySpec(
            family="partition-search",
            objective=objective,
            mode=mode,
            first_guess_policy="score-optimal",
            seed=seed,
            preset_name=name,
        )
    raise ValueError(_unknown_preset_message(name))


def _unknown_preset_message(name: str) -> str:
    return f"unknown preset {name!r}; available: {', '.join(preset_names())}"


_FIRST_GUESS_CACHE: dict[tuple, str] = {}


def _rng_or_seeded(spec: StrategySpec, rng: np.random.Generator | None) -> np.random.Generator:
    if rng is not None:
        return rng
    return np.random.default_rng(spec.seed)


def first_guess(
    spec: StrategySpec, config: GameConfig, rng: np.random.Generator | None = None
) -> str:
    """The opening guess; answer-independent, so cached for scored policies."""
    pool = config.guess_pool
    if spec.first_guess_policy == "random":
        generator = _rng_or_seeded(spec, rng)
        return pool[int(generator.integers(len(pool)))]
    key = (config.digest, spec._cache_key())
    cached = _FIRST_GUESS_CACHE.get(key)
    if cached is not None:
        return cached
    no_repeat = spec.first_guess_policy == "score-optimal-no-repeat"
    if spec.family == "collocation":
        stats = compute_collocation_stats(config.answers, config, spec.renormalize)
        word = select_guess(pool, stats, spec.scorer, first_guess_no_repeat=no_repeat)
    else:
        search_pool = pool
        if no_repeat:
            restricted = tuple(w for w in pool if not has_repeated_symbols(w))
            search_pool = restricted or pool
        word = select_guess_partition(
            search_pool, config.answers, spec.objective, spec.mode, config=config
        )
    _FIRST_GUESS_CACHE[key] = word
    return word


def next_guess(
    spec: StrategySpec,
    reduced: CandidateSet,
    config: GameConfig,
    rng: np.random.Generator | None = None,
) -> str:
    """The next guess, always drawn from the surviving candidates."""
    if len(reduced) == 0:
        raise ValueError("no candidates remain to guess from")
    if spec.family == "random-baseline":
        generator = _rng_or_seeded(spec, rng)
        return reduced[int(generator.integers(len(reduced)))]
    if spec.family == "collocation":
        stats = compute_collocation_stats(reduced, config, spec.renormalize)
        return select_guess(reduced, stats, spec.scorer)
    return select_guess_partition(reduced, reduced, spec.objective, spec.mode, config=config)


def play_game(
    spec: StrategySpec,
    answer: str,
    config: GameConfig,
    rng: np.random.Generator | None = None,
) -> GameRecord:
    """Play one full game against a known answer and return the transcript."""
    table = get_response_table(config)
    try:
        answer_col = table.answer_index[answer]
    except KeyError:
        raise ValueError(f"{answer!r} is not in the answer list") from None
    length = config.word_length
    perfect_id = response_id(perfect_response(length))
    generator = _rng_or_seeded(spec, rng) if spec.family == "random-baseline" else rng
    cand_idx = np.arange(len(table.answer_words))
    guess = first_guess(spec, config, generator)
    turns: list[tuple[str, Response]] = []
    for _ in range(SAFETY_CAP):
        row = table.ids[table.pool_index[guess]]
        rid = int(row[answer_col])
        turns.append((guess, response_from_id(rid, length)))
        if rid == perfect_id:
            return GameRecord(answer=answer, turns=tuple(turns))
        cand_idx = cand_idx[row[cand_idx] == rid]
        reduced = CandidateSet(tuple(table.answer_words[j] for j in cand_idx))
        guess = next_guess(spec, reduced, config, generator)
    raise RuntimeError(
        f"game against {answer!r} exceeded {SAFETY_CAP} turns; filter or selector is broken"
    )
