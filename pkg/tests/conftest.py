import pytest

from wordlab.game import GameConfig, default_config, get_response_table

from oracles import all_words


@pytest.fixture(scope="session")
def official():
    return default_config()

@pytest.fixture(scope="session")
def official_table(official):
    return get_response_table(official)


@pytest.fixture(scope="session")
def tiny3():
    """Exhaustive n=3, lambda=3 game: every word over {a,b,c}."""
    words = tuple(all_words("abc", 3))
    return GameConfig(answers=words, alphabet="abc", word_length=3)


@pytest.fixture(scope="session")
def worked_example():
    """The amble/apple/amuse/angle micro-game used throughout."""
    return GameConfig(answers=("amble", "amuse", "angle", "apple"))
