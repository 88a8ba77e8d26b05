"""Words over the alphabet {1, *}.

A word is a plain ``str`` over the characters ``'1'`` and ``'*'``; for example
``"1**1"`` stands for Z Z* Z* Z.  Strings are immutable, hashable, concatenate
with ``+`` and double as JSON keys, so no wrapper class is needed.  The empty
string is allowed only as the identity (it indexes the normalization
mu(1) = 1) and is rejected by the classifiers.
"""

from __future__ import annotations

import enum
import itertools

ONE = "1"
STAR = "*"
ALPHABET = ONE + STAR


class WordClass(enum.Enum):
    ALTERNATING_ONE_STAR = "alternating (1,*)"
    ALTERNATING_STAR_ONE = "alternating (*,1)"
    MIXED_ALTERNATING = "mixed-alternating"
    OTHER = "other"

    @property
    def is_alternating(self):
        return self in (WordClass.ALTERNATING_ONE_STAR, WordClass.ALTERNATING_STAR_ONE)

    @property
    def is_mixed_alternating(self):
        return self is not WordClass.OTHER


def word(letters) -> str:
    """Build a word from a string or an iterable of letters, validating the alphabet."""
    w = letters if isinstance(letters, str) else "".join(letters)
    bad = set(w) - set(ALPHABET)
    if bad:
        raise ValueError(f"invalid letters {sorted(bad)} in word {w!r}")
    return w


def all_words(n: int, alphabet: str = ALPHABET):
    """All words of length exactly ``n``, in lexicographic order of the alphabet."""
    return ["".join(p) for p in itertools.product(alphabet, repeat=n)]


def words_up_to(order: int, alphabet: str = ALPHABET):
    """All nonempty words of length at most ``order``, shortest first."""
    out = []
    for n in range(1, order + 1):
        out.extend(all_words(n, alphabet))
    return out


def alternating(m: int, first: str = ONE) -> str:
    """``(1,*)^m`` when ``first == '1'``, ``(*,1)^m`` when ``first == '*'``."""
    pair = ONE + STAR if first == ONE else STAR + ONE
    return pair * m


def classify_word(w: str) -> WordClass:
    if not w:
        raise ValueError("empty word has no class")
    word(w)
    n = len(w)
    if n % 2:
        return WordClass.OTHER
    if w == alternating(n // 2, ONE):
        return WordClass.ALTERNATING_ONE_STAR
    if w == alternating(n // 2, STAR):
        return WordClass.ALTERNATING_STAR_ONE
    if all(w[k] != w[k + 1] for k in range(0, n, 2)):
        return WordClass.MIXED_ALTERNATING
    return WordClass.OTHER


def is_alternating(w: str) -> bool:
    return bool(w) and classify_word(w).is_alternating


def is_mixed_alternating(w: str) -> bool:
    return bool(w) and classify_word(w).is_mixed_alternating


def canonical_factorization(w: str) -> list[str]:
    """Split a mixed-alternating word into alternating factors of alternating types.

    Boundaries sit exactly where two consecutive letters coincide.
    """
    if not w or not classify_word(w).is_mixed_alternating:
        raise ValueError(f"not factorable: {w!r} is not mixed-alternating")
    factors = []
    start = 0
    for k in range(1, len(w)):
        if w[k] == w[k - 1]:
            factors.append(w[start:k])
            start = k
    factors.append(w[start:])
    return factors


def restrict_word(w: str, block) -> str:
    """Letters of ``w`` at the 1-based positions in ``block``, in increasing order."""
    idx = sorted(block)
    if not idx:
        raise ValueError("restriction to an empty index set")
    if idx[0] < 1 or idx[-1] > len(w):
        raise IndexError(f"index set {idx} out of range for word of length {len(w)}")
    return "".join(w[i - 1] for i in idx)


def count_letters(w: str) -> tuple[int, int]:
    """(number of '1' letters, number of '*' letters)."""
    ones = w.count(ONE)
    return ones, len(w) - ones
