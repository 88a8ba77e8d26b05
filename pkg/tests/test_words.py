import pytest
from hypothesis import given, strategies as st

from freebool.words import (
    WordClass,
    alternating,
    all_words,
    canonical_factorization,
    classify_word,
    count_letters,
    restrict_word,
    word,
    words_up_to,
)

letters = st.text(alphabet="1*", min_size=1, max_size=12)


@pytest.mark.parametrize(
    "w, cls",
    [
        ("1*1*", WordClass.ALTERNATING_ONE_STAR),
        ("*1*1", WordClass.ALTERNATING_STAR_ONE),
        ("1**1", WordClass.MIXED_ALTERNATING),
        ("11", WordClass.OTHER),
        ("1*1", WordClass.OTHER),
    ],
)
def test_classify(w, cls):
    assert classify_word(w) is cls


def test_empty_word_has_no_class():
    with pytest.raises(ValueError, match="empty word"):
        classify_word("")


def test_bad_letters_rejected():
    with pytest.raises(ValueError):
        word("1x")


def test_canonical_factorization_long_example():
    w = "1*1*1**1*11**1*1"
    assert canonical_factorization(w) == ["1*1*1*", "*1*1", "1*", "*1*1"]


def test_canonical_factorization_small():
    assert canonical_factorization("1*") == ["1*"]
    assert canonical_factorization("*11*") == ["*1", "1*"]
    with pytest.raises(ValueError, match="not factorable"):
        canonical_factorization("11")


@given(letters)
def test_factorization_glues_back(w):
    if classify_word(w).is_mixed_alternating:
        parts = canonical_factorization(w)
        assert "".join(parts) == w
        assert all(classify_word(p).is_alternating for p in parts)
        # consecutive factors have opposite types
        assert all(a[0] != b[0] for a, b in zip(parts, parts[1:]))


def test_restrict():
    assert restrict_word("1**1*", {1, 4, 5}) == "11*"
    assert restrict_word("1*", {1, 2}) == "1*"
    assert restrict_word("1*1", {2}) == "*"
    with pytest.raises(IndexError):
        restrict_word("1*", {3})


def test_word_counts():
    assert len(all_words(3)) == 8
    assert len(words_up_to(8)) == 510
    assert words_up_to(2) == ["1", "*", "11", "1*", "*1", "**"]
    assert alternating(2, "*") == "*1*1"
    assert count_letters("1**1*") == (2, 3)
