from __future__ import annotations

from functools import lru_cache
from math import comb, factorial

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from optensor.operad import check_laws
from optensor.words import (WordError, WordOperad, abelianize, compose_words, enumerate_words,
                            leq, leq_oracle, restrict_word, standardize, word)


@lru_cache(maxsize=None)
def _rooted(n: int, k: int, ab: bool) -> int:
    """Words on n labelled generators whose root carries one fixed operation."""
    if n < 2:
        return 0

    def child(size):
        return 1 if size == 1 else (k - 1) * _rooted(size, k, ab)

    # split off the block holding the smallest generator, then recurse on the rest
    @lru_cache(maxsize=None)
    def blocks(rest: int, parts: int) -> int:
        # unordered set partitions of `rest` items into `parts` blocks, weighted
        if rest == 0:
            return 1 if parts == 0 else 0
        if parts == 0:
            return 0
        return sum(comb(rest - 1, s - 1) * child(s) * blocks(rest - s, parts - 1)
                   for s in range(1, rest - parts + 2))

    return sum(blocks(n, p) * (1 if ab else factorial(p)) for p in range(2, n + 1))


def count_words(k: int, m: int, ab: bool = False) -> int:
    return 1 if m == 1 else k * _rooted(m, k, ab)


@pytest.mark.parametrize("k,m,ab", [(1, 3, False), (1, 4, False), (2, 1, False), (2, 2, False),
                                    (2, 3, False), (2, 4, False), (2, 3, True), (2, 4, True),
                                    (3, 2, False), (3, 3, False)])
def test_word_counts_match_recursion(k, m, ab):
    assert len(enumerate_words(k, range(1, m + 1), ab)) == count_words(k, m, ab)


def test_known_counts():
    assert [count_words(2, m) for m in range(1, 5)] == [1, 4, 36, 528]
    assert count_words(2, 3, True) == 8
    assert count_words(3, 2) == 6


@pytest.mark.parametrize("text,canon", [
    ("o1(o1(1,2),3)", "o1(1,2,3)"),
    ("o2(1,o2(2,3))", "o2(1,2,3)"),
    ("o1(o2(1,2),3)", "o1(o2(1,2),3)"),
])
def test_normalization_flattens(text, canon):
    assert word(text).serialize() == canon


def test_abelian_sorts_blocks():
    assert word("o1(3,1)", 2, True).serialize() == "o1(1,3)"
    assert abelianize(word("o2(2,1)")) == word("o2(1,2)", 2, True)


def test_parse_errors():
    with pytest.raises(WordError):
        word("o1(1,1)")
    with pytest.raises((WordError, ValueError)):
        word("o3(1,2)", 2)


def test_leq_m2():
    a, b, c, d = (word(s) for s in ("o1(1,2)", "o2(1,2)", "o1(2,1)", "o2(2,1)"))
    assert leq(a, b) and leq(a, d) and leq(c, b) and leq(c, d)
    assert not leq(b, a) and not leq(a, c) and not leq(b, d)


def test_compose_and_restrict():
    a, b = word("o1(1,2)"), word("o2(1,2)")
    assert compose_words(a, [b, a]).serialize() == "o1(o2(1,2),3,4)"
    assert restrict_word(word("o1(o2(1,3),2)"), [1, 3]).serialize() == "o2(1,3)"


def test_standardize():
    w, gens = standardize(word("o1(5,2)"))
    assert w.serialize() == "o1(2,1)" and gens == (2, 5)


@pytest.mark.parametrize("k,m", [(2, 2), (2, 3), (3, 2)])
def test_leq_agrees_with_generator_closure(k, m):
    ws = enumerate_words(k, range(1, m + 1))
    rel = leq_oracle(k, m)
    for a in ws:
        for b in ws:
            assert leq(a, b) == ((a, b) in rel)


words3 = st.sampled_from(enumerate_words(2, range(1, 4)))


@settings(max_examples=200, deadline=None)
@given(words3, words3, words3)
def test_leq_is_a_partial_order(a, b, c):
    assert leq(a, a)
    if leq(a, b) and leq(b, a):
        assert a == b
    if leq(a, b) and leq(b, c):
        assert leq(a, c)


@settings(max_examples=100, deadline=None)
@given(words3, st.sampled_from([[1, 2], [1, 3], [2, 3]]))
def test_restriction_is_monotone(a, S):
    for b in enumerate_words(2, range(1, 4)):
        if leq(a, b):
            assert leq(restrict_word(a, S), restrict_word(b, S))


def test_word_operad_laws():
    assert check_laws(WordOperad(2, max_arity=3)) == []
    assert check_laws(WordOperad(2, True, max_arity=3)) == []
