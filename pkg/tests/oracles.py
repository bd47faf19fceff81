"""Independent reference implementations used only to check the package.

Everything here is deliberately written from scratch with different
algorithms than the code under test, so agreement is meaningful.
"""

from collections import Counter
from itertools import product
from math import log2


def reference_response(guess: str, answer: str) -> str:
    """Single-pass, rank-based feedback computation.

    A non-green guess letter at position x is yellow iff the number of
    earlier non-green occurrences of that letter in the guess is smaller
    than the total stock of that letter at non-green answer positions.
    Returns the digit string.
    """
    n = len(guess)
    stock = Counter(answer[i] for i in range(n) if guess[i] != answer[i])
    digits = []
    for x in range(n):
        if guess[x] == answer[x]:
            digits.append("1")
            continue
        earlier = sum(1 for y in range(x) if guess[y] == guess[x] and guess[y] != answer[y])
        digits.append("2" if earlier < stock[guess[x]] else "0")
    return "".join(digits)


def all_words(alphabet: str, length: int) -> list[str]:
    """Every word over the alphabet, in lexicographic order."""
    return ["".join(p) for p in product(alphabet, repeat=length)]


def brute_force_filter(words, guess: str, observed: str) -> list[str]:
    """Filter by replaying the reference response for every word."""
    return [w for w in words if reference_response(guess, w) == observed]


def shannon_entropy(counts) -> float:
    """Base-2 entropy of a histogram given as an iterable of counts."""
    total = sum(counts)
    h = 0.0
    for c in counts:
        if c > 0:
            p = c / total
            h -= p * log2(p)
    return h


def symbol_inclusion_probability(words, symbol: str) -> float:
    """Fraction of words containing the symbol at least once."""
    return sum(1 for w in words if symbol in w) / len(words)


def pair_inclusion_probability(words, x: str, s: str) -> float:
    """Fraction of words containing both symbols (twice s, when x == s)."""
    if x == s:
        return sum(1 for w in words if w.count(s) >= 2) / len(words)
    return sum(1 for w in words if x in w and s in w) / len(words)


def build_yellow_construction(pattern: str, alphabet: str):
    """Construct a (guess, answer) pair realizing a feasible pattern.

    Uses a guess of all-distinct symbols.  A lone yellow letter moves to
    the first gray slot; two or more yellow letters rotate one step among
    the yellow slots so that none stays home.  Remaining slots get filler
    symbols absent from the guess.  Returns None when no assignment
    exists, which happens exactly for the all-green-but-one-yellow
    patterns.
    """
    length = len(pattern)
    if len(alphabet) < 2 * length:
        raise ValueError("need at least 2*length distinct symbols")
    guess = list(alphabet[:length])
    fillers = iter(alphabet[length : 2 * length])
    answer: list[str | None] = [None] * length
    for i in range(length):
        if pattern[i] == "1":
            answer[i] = guess[i]
    yellows = [i for i in range(length) if pattern[i] == "2"]
    grays = [i for i in range(length) if pattern[i] == "0"]
    if len(yellows) == 1:
        # The lone yellow letter must live at some gray slot.
        if not grays:
            return None
        answer[grays[0]] = guess[yellows[0]]
    elif yellows:
        # Rotate the yellow letters among the yellow slots; with two or
        # more of them nobody stays home.
        for i, slot in enumerate(yellows):
            answer[yellows[(i + 1) % len(yellows)]] = guess[slot]
    for j in range(length):
        if answer[j] is None:
            answer[j] = next(fillers)
    return "".join(guess), "".join(answer)  # type: ignore[arg-type]
