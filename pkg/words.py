"""
(m,n)-words: validation, componentwise order, join/meet, covers and counting.
Every word is an immutable value; every operation here is a pure function.
"""

import logging
import numbers
from dataclasses import dataclass
from typing import Any, Dict, FrozenSet, Iterator, List, Sequence, Set, Tuple

from utils import binomial

logger = logging.getLogger(__name__)


# ============================================================================
# CONFIGURATION
# ============================================================================

MAX_LETTER = 2**31 - 1  # letters are machine-width; m + 1 may not exceed this
COMPACT_ALPHABET_LIMIT = 9  # digit strings when m + 1 <= 9, comma form otherwise


# ============================================================================
# ERRORS
# ============================================================================

class MNWordError(ValueError):
    """Base class for every invalid-word condition."""


class AlphabetViolation(MNWordError):
    """A letter lies outside [0, m+1] (or m itself is unusable)."""


class MN1Violation(MNWordError):
    """The first letter equals m+1."""


class MN2Violation(MNWordError):
    """A letter s in [1, m] is preceded by a smaller letter."""

    def __init__(self, message: str, earlier: int, later: int):
        super().__init__(message)
        self.earlier = earlier
        self.later = later


class ShapeMismatch(MNWordError):
    """Two words with different m or n were combined."""


# ============================================================================
# DOMAIN TYPES
# ============================================================================

@dataclass(frozen=True, order=True)
class MNWord:
    """
    A validated (m,n)-word.

    Ordering of the dataclass (``<`` on instances) is lexicographic on
    ``(m, letters)`` and is only used for deterministic sorting; the lattice
    order is :func:`leq`.
    """

    m: int
    letters: Tuple[int, ...]

    def __post_init__(self):
        for i, x in enumerate(self.letters, start=1):
            if isinstance(x, bool) or not isinstance(x, numbers.Integral):
                raise AlphabetViolation(f"letter {x!r} at position {i} is not an integer")
        object.__setattr__(self, "letters", tuple(int(x) for x in self.letters))
        _check_letters(self.m, self.letters)

    @property
    def n(self) -> int:
        return len(self.letters)

    def __len__(self) -> int:
        return len(self.letters)

    def __str__(self) -> str:
        return format_word(self)

    def __repr__(self) -> str:
        return f"MNWord(m={self.m}, {format_word(self)!r})"


@dataclass(frozen=True)
class WordStats:
    """Statistics of a word used by the counting identities."""

    min_letter: int
    support: FrozenSet[int]
    top_count: int
    in_degree: int


def _check_letters(m: int, letters: Sequence[int]) -> None:
    if m < 0:
        raise AlphabetViolation(f"m must be nonnegative, got {m}")
    if m + 1 > MAX_LETTER:
        raise AlphabetViolation(f"m + 1 = {m + 1} exceeds the letter limit {MAX_LETTER}")
    top = m + 1
    for i, letter in enumerate(letters, start=1):
        if letter < 0 or letter > top:
            raise AlphabetViolation(f"letter {letter} at position {i} is outside [0, {top}]")
    if letters and letters[0] == top:
        raise MN1Violation(f"first letter equals m+1 = {top}")
    # MN2: a letter s in [1, m] needs every earlier letter >= s, i.e. the
    # running prefix minimum must not drop below s.
    prefix_min = None
    prefix_pos = 0
    for i, letter in enumerate(letters, start=1):
        if 1 <= letter <= m and prefix_min is not None and prefix_min < letter:
            raise MN2Violation(
                f"letter {letter} at position {i} is preceded by letter "
                f"{prefix_min} at position {prefix_pos}",
                earlier=prefix_pos,
                later=i,
            )
        if prefix_min is None or letter < prefix_min:
            prefix_min = letter
            prefix_pos = i


# ============================================================================
# CONSTRUCTION AND SERIALIZATION
# ============================================================================

def validate(m: int, letters: Sequence[int]) -> MNWord:
    """
    Validate a letter sequence and return it as an (m,n)-word.

    Args:
        m: Alphabet parameter (letters range over 0..m+1)
        letters: Candidate letters, first position is position 1

    Returns:
        The validated MNWord

    Raises:
        AlphabetViolation, MN1Violation, MN2Violation
    """
    return MNWord(m, tuple(letters))


def parse_word(m: int, text: str) -> MNWord:
    """Parse either the compact digit form ("474337720") or the comma form ("4,7,4")."""
    text = text.strip()
    if not text:
        return MNWord(m, ())
    if "," in text:
        parts = [part.strip() for part in text.split(",")]
    elif m + 1 <= COMPACT_ALPHABET_LIMIT:
        parts = list(text)
    else:
        parts = [text]
    try:
        letters = tuple(int(part) for part in parts)
    except ValueError as exc:
        raise AlphabetViolation(f"cannot parse word {text!r}: {exc}") from exc
    return MNWord(m, letters)


def format_word(word: MNWord) -> str:
    if word.m + 1 <= COMPACT_ALPHABET_LIMIT:
        return "".join(str(x) for x in word.letters)
    return ",".join(str(x) for x in word.letters)


def word_to_json(word: MNWord) -> Dict[str, Any]:
    return {"m": word.m, "letters": list(word.letters)}


def word_from_json(data: Dict[str, Any]) -> MNWord:
    return MNWord(int(data["m"]), tuple(data["letters"]))


def bottom_word(m: int, n: int) -> MNWord:
    return MNWord(m, (0,) * n)


def top_word(m: int, n: int) -> MNWord:
    """The greatest word m(m+1)...(m+1) (the empty word when n = 0)."""
    if n == 0:
        return MNWord(m, ())
    return MNWord(m, (m,) + (m + 1,) * (n - 1))


def extend(word: MNWord, letter: int) -> MNWord:
    """Append one letter; the result is validated like any other word."""
    return MNWord(word.m, word.letters + (letter,))


# ============================================================================
# ENUMERATION
# ============================================================================

def iter_words(m: int, n: int) -> Iterator[MNWord]:
    """
    Yield W(m,n) in strictly increasing lexicographic order.

    Words are grown left to right; the running prefix minimum decides which
    letters in [1, m] are still allowed, so no invalid prefix is ever built.
    """
    if m < 0 or n < 0:
        raise AlphabetViolation(f"m and n must be nonnegative, got m={m}, n={n}")
    top = m + 1

    def grow(prefix: List[int], prefix_min: int) -> Iterator[Tuple[int, ...]]:
        if len(prefix) == n:
            yield tuple(prefix)
            return
        first = not prefix
        for letter in range(top + 1):
            if letter == top and first:
                continue
            if 1 <= letter <= m and letter > prefix_min:
                continue
            prefix.append(letter)
            yield from grow(prefix, min(prefix_min, letter))
            prefix.pop()

    for letters in grow([], top):
        yield MNWord(m, letters)


def enumerate_words(m: int, n: int) -> List[MNWord]:
    """All (m,n)-words, lexicographically sorted."""
    words = list(iter_words(m, n))
    logger.debug("enumerated W(%d,%d): %d words", m, n, len(words))
    return words


def slice_words(m: int, n: int, i: int) -> List[MNWord]:
    """The slice of words whose minimum letter is at least ``i`` (0 <= i <= m)."""
    if not 0 <= i <= m:
        raise AlphabetViolation(f"slice index {i} is outside [0, {m}]")
    return [w for w in iter_words(m, n) if min(w.letters, default=m + 1) >= i]


def slice_bounds(m: int, n: int, i: int) -> Tuple[MNWord, MNWord]:
    """Least and greatest word of a slice: i...i and m(m+1)...(m+1)."""
    return MNWord(m, (i,) * n), top_word(m, n)


# ============================================================================
# ORDER, JOIN, MEET
# ============================================================================

def _check_shape(u: MNWord, v: MNWord) -> None:
    if u.m != v.m or u.n != v.n:
        raise ShapeMismatch(f"cannot compare W({u.m},{u.n}) with W({v.m},{v.n})")


def leq(u: MNWord, v: MNWord) -> bool:
    """Componentwise order."""
    _check_shape(u, v)
    return all(a <= b for a, b in zip(u.letters, v.letters))


def join(u: MNWord, v: MNWord) -> MNWord:
    """Least upper bound: the componentwise maximum, which is always a word."""
    _check_shape(u, v)
    return MNWord(u.m, tuple(max(a, b) for a, b in zip(u.letters, v.letters)))


def normalize_lower(m: int, letters: Sequence[int]) -> Tuple[int, ...]:
    """
    Largest word below a componentwise minimum.

    Letters equal to m+1 stay; every other letter is lowered to the prefix
    minimum of all entries up to and including it.
    """
    top = m + 1
    out = []
    prefix_min = top
    for letter in letters:
        prefix_min = min(prefix_min, letter)
        out.append(top if letter == top else prefix_min)
    return tuple(out)


def meet(u: MNWord, v: MNWord) -> MNWord:
    """
    Greatest lower bound.

    The componentwise minimum may violate MN2; :func:`normalize_lower` lowers
    each offending letter to the prefix minimum.
    """
    _check_shape(u, v)
    lowest = tuple(min(a, b) for a, b in zip(u.letters, v.letters))
    return MNWord(u.m, normalize_lower(u.m, lowest))


# ============================================================================
# COVERS AND STATISTICS
# ============================================================================

def support(word: MNWord) -> FrozenSet[int]:
    return frozenset(x for x in word.letters if 1 <= x <= word.m)


def lower_covers(v: MNWord) -> Set[MNWord]:
    """
    Words covered by ``v``.

    One cover per letter m+1 (lowered to the smallest earlier letter, the
    largest value MN2 still allows there)
    and one per support letter s (its last occurrence lowered to s-1).
    """
    m = v.m
    top = m + 1
    letters = v.letters
    covers: Set[MNWord] = set()
    for i, letter in enumerate(letters):
        if letter == top:
            below = min(letters[:i])
            covers.add(MNWord(m, letters[:i] + (below,) + letters[i + 1:]))
    last_position: Dict[int, int] = {}
    for i, letter in enumerate(letters):
        if 1 <= letter <= m:
            last_position[letter] = i
    for s, i in last_position.items():
        covers.add(MNWord(m, letters[:i] + (s - 1,) + letters[i + 1:]))
    return covers


def word_stats(v: MNWord) -> WordStats:
    """Closed-form statistics; in_degree = top_count + |support| without generating covers."""
    supp = support(v)
    top_count = sum(1 for x in v.letters[1:] if x == v.m + 1)
    return WordStats(
        min_letter=min(v.letters, default=v.m + 1),
        support=supp,
        top_count=top_count,
        in_degree=top_count + len(supp),
    )


# ============================================================================
# COUNTING
# ============================================================================

def count_words(m: int, n: int) -> int:
    """|W(m,n)| = sum_{k=1}^{n} C(m+k,k) C(n-1,k-1); defined as 1 for n = 0."""
    if n == 0:
        return 1
    return sum(binomial(m + k, k) * binomial(n - 1, k - 1) for k in range(1, n + 1))


def count_topless(m: int, n: int) -> int:
    """Words avoiding m+1 are weakly decreasing, hence C(m+n, n) of them."""
    return binomial(m + n, n)

