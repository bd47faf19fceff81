"""wordlab: a strategy laboratory for Wordle-style word-guessing games."""

from wordlab.game import (
    CandidateSet,
    ContradictionError,
    GameConfig,
    Response,
    WordListError,
    compute_response,
    default_config,
    filter_candidates,
    is_consistent,
)

__version__ = "0.1.0"

__all__ = [
    "CandidateSet",
    "ContradictionError",
    "GameConfig",
    "Response",
    "WordListError",
    "compute_response",
    "default_config",
    "filter_candidates",
    "is_consistent",
    "__version__",
]
