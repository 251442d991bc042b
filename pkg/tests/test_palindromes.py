import random
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from richrep import (Eertree, RichnessChecker, Word, count_distinct_palindromes,
                     has_unioccurrent_palindromic_suffix, is_middle_class, is_poor,
                     is_rich)
from richrep.morphisms import g, tau
from richrep.palindromes import brute_palindrome_set, has_poor_factor

ternary = st.lists(st.integers(0, 2), max_size=40).map(lambda xs: Word(xs, 3))


def test_count_examples():
    assert count_distinct_palindromes(Word("001002")) == 7
    assert count_distinct_palindromes(Word("")) == 1
    assert count_distinct_palindromes(Word("0120")) == 4


def test_is_rich_examples():
    assert is_rich(Word("001002"))
    assert not is_rich(Word("0120"))
    assert is_rich(Word(""))


@given(ternary)
def test_eertree_matches_brute(w):
    assert count_distinct_palindromes(w) == len(brute_palindrome_set(w.letters)) + 1


def test_unioccurrent_suffix_examples():
    assert has_unioccurrent_palindromic_suffix(Word("0012"))
    assert not has_unioccurrent_palindromic_suffix(Word("0120"))
    assert has_unioccurrent_palindromic_suffix(Word("0"))
    with pytest.raises(ValueError):
        has_unioccurrent_palindromic_suffix(Word(""))


def test_rich_iff_unioccurrent_suffixes_exhaustive():
    for n in range(1, 9):
        for letters in product((0, 1, 2), repeat=n):
            w = Word(letters, 3)
            prefix_ok = all(
                has_unioccurrent_palindromic_suffix(w[: i + 1]) for i in range(n)
            )
            assert prefix_ok == is_rich(w)


def test_rich_push_examples():
    checker = RichnessChecker()
    for a in (0, 0, 1, 0, 0):
        assert checker.rich_push(a)
    assert checker.rich_push(2)

    checker = RichnessChecker()
    for a in (0, 1, 2):
        assert checker.rich_push(a)
    assert not checker.rich_push(0)  # 0120 is not rich
    assert checker.rich_push(2)      # state unchanged by the rejection


def test_eertree_pop_bit_identical():
    rng = random.Random(11)
    tree = Eertree()
    stack = []
    snaps = [tree.snapshot()]
    for _ in range(400):
        if stack and rng.random() < 0.45:
            tree.pop()
            snaps.pop()
            assert tree.snapshot() == snaps[-1]
        else:
            a = rng.randrange(3)
            tree.push(a)
            snaps.append(tree.snapshot())
    while snaps[:-1]:
        tree.pop()
        snaps.pop()
        assert tree.snapshot() == snaps[-1]


def test_is_poor_examples():
    assert is_poor(Word("2012"))
    assert is_poor(Word("01220"))
    assert is_poor(Word("0220102020220"))
    assert not is_poor(Word("0120"))
    assert not is_poor(Word(""))
    with pytest.raises(ValueError):
        is_poor(Word("0123"))


def test_is_middle_class_examples():
    assert is_middle_class(Word("2202122"))
    assert is_middle_class(Word("202122202"))
    assert not is_middle_class(Word("2012"))
    assert not is_middle_class(Word("0212"))


def test_has_poor_factor_window():
    w = (0, 1, 2, 2, 0)  # poor as a whole, with no short poor factor
    assert has_poor_factor(w)
    assert not has_poor_factor((0, 1, 2, 0))
    assert has_poor_factor(w, max_len=5)
    assert not has_poor_factor(w, max_len=3)


def test_poor_pipeline_property():
    """Poor words stay poor under the inner map, become middle-class under
    the second layer, and force non-richness after the transducer."""
    count = 0
    for n in range(1, 7):
        for letters in product((0, 1, 2), repeat=n):
            w = Word(letters, 3)
            if not is_poor(w):
                continue
            count += 1
            from richrep.morphisms import f
            assert is_poor(f(w) + Word("0"))
            gw2 = g(w) + Word("2")
            assert is_middle_class(gw2)
            assert not is_rich(tau(gw2) + Word("00"))
    assert count == 88
