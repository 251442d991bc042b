import random
from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from richrep import (SuffixRuns, Word, exponent, find_even_power, is_power_free,
                     max_exponent_factor, smallest_period, suffix_extension_ok)
from richrep.morphisms import z_prefix
from richrep.repetition import (format_rational, max_exponent_value,
                                parse_rational, periodic_hits)

ternary = st.lists(st.integers(0, 2), min_size=1, max_size=24).map(lambda xs: Word(xs, 3))


def brute_smallest_period(letters):
    n = len(letters)
    for p in range(1, n + 1):
        if all(letters[i] == letters[i + p] for i in range(n - p)):
            return p


def brute_max_exponent(letters):
    best = Fraction(1)
    n = len(letters)
    for i in range(n):
        for j in range(i, n):
            sub = letters[i : j + 1]
            best = max(best, Fraction(len(sub), brute_smallest_period(sub)))
    return best


def test_parse_rational():
    assert parse_rational("7/3") == (Fraction(7, 3), False)
    assert parse_rational("7/3+") == (Fraction(7, 3), True)
    assert parse_rational("3") == (Fraction(3), False)
    assert parse_rational("2.117") == (Fraction(2117, 1000), False)
    assert format_rational(Fraction(16, 7)) == "16/7"
    assert format_rational(Fraction(3)) == "3"


def test_smallest_period_examples():
    assert smallest_period(Word("0010010")) == 3
    assert smallest_period(Word("0")) == 1
    assert smallest_period(Word("01010")) == 2
    with pytest.raises(ValueError):
        smallest_period(Word(""))


def test_smallest_period_exhaustive_small():
    for n in range(1, 9):
        for letters in product((0, 1, 2), repeat=n):
            assert smallest_period(Word(letters, 3)) == brute_smallest_period(letters)


def test_exponent_examples():
    assert exponent(Word("0010010")) == Fraction(7, 3)
    assert exponent(Word("111")) == 3
    base = "0200101101001011010"
    w = Word(tuple(int(c) for c in base * 3)[:41], 3)
    assert exponent(w) == Fraction(41, 19)


def test_max_exponent_factor_examples():
    rep = max_exponent_factor(Word("00100200"))
    assert rep.max_exponent == 2
    assert (rep.witness.start, rep.witness.end) == (0, 1)
    assert rep.period == 1

    rep = max_exponent_factor(Word("012"))
    assert rep.max_exponent == 1

    # brute force decides: the max exponent is 2 (witness 00); the whole
    # word is a 15/8 power of 00101101
    letters = (0, 0, 1, 0, 1, 1, 0, 1, 0, 0, 1, 0, 1, 1, 0)
    rep = max_exponent_factor(Word(letters, 3))
    assert rep.max_exponent == brute_max_exponent(letters) == 2
    assert smallest_period(Word(letters, 3)) == 8


@given(ternary)
@settings(max_examples=60)
def test_max_exponent_matches_brute(w):
    rep = max_exponent_factor(w)
    assert rep.max_exponent == brute_max_exponent(w.letters)
    witness = rep.witness.word
    assert Fraction(len(witness), smallest_period(witness)) == rep.max_exponent


@given(ternary)
@settings(max_examples=60)
def test_max_exponent_value_agrees(w):
    assert max_exponent_value(w.letters) == max_exponent_factor(w).max_exponent


def test_is_power_free_examples():
    assert not is_power_free(Word("0010010"), Fraction(7, 3))
    assert is_power_free(Word("0010010"), Fraction(7, 3), strict=True)
    assert is_power_free(z_prefix(10_000), Fraction(16, 7))
    with pytest.raises(ValueError):
        is_power_free(Word("01"), Fraction(1))


def test_suffix_extension_examples():
    state = SuffixRuns()
    for a in (0, 0, 1, 0, 0):
        assert suffix_extension_ok(state, a, Fraction(7, 3))
    assert suffix_extension_ok(state, 1, Fraction(7, 3))
    state2 = SuffixRuns()
    for a in (0, 0, 1, 0, 0, 1):
        assert state2.extend(a, Fraction(7, 3))
    assert not state2.extend(0, Fraction(7, 3))  # would form the 7/3 power
    assert suffix_extension_ok(SuffixRuns(), 0, Fraction(3, 2))


@given(st.lists(st.integers(0, 2), min_size=1, max_size=20),
       st.sampled_from([Fraction(7, 3), Fraction(2), Fraction(16, 7), Fraction(5, 2)]),
       st.booleans())
@settings(max_examples=80)
def test_incremental_matches_batch(letters, alpha, strict):
    state = SuffixRuns()
    accepted = []
    for a in letters:
        ok = state.extend(a, alpha, strict)
        assert ok == is_power_free(Word(accepted + [a], 3), alpha, strict)
        if ok:
            accepted.append(a)


def test_suffix_runs_pop_restores():
    rng = random.Random(7)
    alpha = Fraction(7, 3)
    state = SuffixRuns()
    mirror = []
    snapshots = []
    for _ in range(300):
        if mirror and rng.random() < 0.4:
            state.pop()
            mirror.pop()
        else:
            a = rng.randrange(3)
            if state.extend(a, alpha):
                mirror.append(a)
        snapshots.append((tuple(state.word), tuple(state.runs)))
        # replay from scratch must give the identical table
        replay = SuffixRuns()
        for a in mirror:
            assert replay.extend(a, alpha)
        assert (tuple(replay.word), tuple(replay.runs)) == snapshots[-1]


def brute_even_power(letters, r: Fraction) -> bool:
    n = len(letters)
    for i in range(n):
        for j in range(i, n):
            sub = letters[i : j + 1]
            m = len(sub)
            for p in range(1, m + 1):
                if all(sub[t] == sub[t + p] for t in range(m - p)):
                    if Fraction(m, p) >= r and sub[:p].count(2) % 2 == 0:
                        return True
    return False


def test_find_even_power_examples():
    w = Word("210122101221012")
    occ = find_even_power(w, Fraction(3))
    assert occ is not None
    assert occ.word.letters[:5] == (2, 1, 0, 1, 2)

    occ = find_even_power(Word("0220220"), Fraction(7, 3))
    assert occ is not None
    assert occ.word.letters[:3] == (0, 2, 2)

    assert find_even_power(Word("01010"), Fraction(3)) is None


@given(st.lists(st.integers(0, 2), min_size=1, max_size=12).map(lambda xs: Word(xs, 3)),
       st.sampled_from([Fraction(1), Fraction(3, 2), Fraction(2), Fraction(7, 3), Fraction(3)]))
@settings(max_examples=100)
def test_find_even_power_matches_brute(w, r):
    assert (find_even_power(w, r) is not None) == brute_even_power(w.letters, r)


def test_periodic_hits_against_batch():
    rng = random.Random(3)
    for _ in range(50):
        letters = tuple(rng.randrange(3) for _ in range(rng.randrange(2, 40)))
        for alpha, strict in ((Fraction(2), False), (Fraction(7, 3), True)):
            hits = periodic_hits(letters, alpha, strict)
            found = bool(hits)
            brute = brute_max_exponent(letters)
            expected = brute > alpha if strict else brute >= alpha
            assert found == expected
            for p, s, e in hits:
                factor = Word(letters[s : e + 1], 3)
                assert len(factor) == e - s + 1
                assert Fraction(len(factor), p) >= alpha
