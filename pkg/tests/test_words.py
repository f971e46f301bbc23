from itertools import product

import pytest

from hopfcenter.errors import InputError
from hopfcenter.words import (
    enumerate_words,
    format_word,
    is_lyndon,
    lyndon_words,
    p_factor,
    parse_word,
    witt_dimension,
    word_key,
    words_up_to,
)


def test_enumerate_examples():
    assert enumerate_words(0) == [()]
    assert enumerate_words(3) == [(3,), (1, 2), (2, 1), (1, 1, 1)]
    assert len(enumerate_words(5)) == 16


@pytest.mark.parametrize("n", range(1, 15))
def test_enumerate_count(n):
    assert len(enumerate_words(n)) == 2 ** (n - 1)


@pytest.mark.parametrize("n", range(1, 11))
def test_enumerate_covers_all_compositions(n):
    # brute force: every 0/1 pattern of cuts in n - 1 gaps gives one composition
    brute = set()
    for cuts in product([0, 1], repeat=n - 1):
        parts, run = [], 1
        for c in cuts:
            if c:
                parts.append(run)
                run = 1
            else:
                run += 1
        parts.append(run)
        brute.add(tuple(parts))
    words = enumerate_words(n)
    assert len(words) == len(set(words))
    assert set(words) == brute
    assert words == sorted(words, key=word_key)


def test_words_up_to_order():
    ws = words_up_to(3)
    assert ws[0] == ()
    assert ws == sorted(ws, key=word_key)
    assert len(ws) == 1 + 1 + 2 + 4


def test_is_lyndon_examples():
    assert is_lyndon((1, 2))
    assert not is_lyndon((2, 1))
    assert not is_lyndon((1, 1))
    assert is_lyndon((1, 1, 2))
    with pytest.raises(InputError):
        is_lyndon(())


def test_lyndon_words_examples():
    assert lyndon_words(1) == [(1,)]
    by_deg = lambda n: [w for w in lyndon_words(n) if sum(w) == n]  # noqa: E731
    assert by_deg(2) == [(2,)]
    assert sorted(by_deg(3)) == [(1, 2), (3,)]


def test_witt_examples():
    assert witt_dimension(1) == 1
    assert witt_dimension(3) == 2
    assert witt_dimension(6) == 9


@pytest.mark.parametrize("n", range(1, 13))
def test_lyndon_count_is_witt(n):
    assert sum(1 for w in enumerate_words(n) if is_lyndon(w)) == witt_dimension(n)


def test_word_text_round_trip():
    for w in words_up_to(5):
        assert parse_word(format_word(w)) == w
    assert format_word((1, 2)) == "[1.2]"
    for bad in ["1.2", "[0]", "[a]"]:
        with pytest.raises(InputError):
            parse_word(bad)


def test_p_factor_examples():
    assert p_factor((1, 1), 2) == 2
    assert p_factor((1, 2), 3) == 3
    assert p_factor((2, 1), 3) == 2
    assert p_factor((3,), 3) == 1
    with pytest.raises(InputError):
        p_factor((), 1)
