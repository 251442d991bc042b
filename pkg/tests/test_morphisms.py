import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from richrep import Word, find_even_power, sister, tilde_tau
from richrep.morphisms import (A1, A2, B1, B2, Morphism, char_poly, f, fhat,
                               fixed_point_prefix, g, image_length,
                               image_length_by_generation, image_length_by_matrix,
                               incidence_matrix, parse_morphism_text, phi, psi,
                               t1, t2, tau, taubar, x_prefix, y_prefix, z_prefix)
from richrep.words import Occurrence, parikh

ternary = st.lists(st.integers(0, 2), max_size=20).map(lambda xs: Word(xs, 3))


def test_named_images():
    assert f(Word("0")).text() == "01" and f(Word("1")).text() == "022" and f(Word("2")).text() == "02"
    assert g(Word("0")).text() == "20" and g(Word("1")).text() == "21" and g(Word("2")).text() == "2"
    assert t1(Word("0")).text() == "001"
    assert t1(Word("2")).text() == "0010110100101101"
    assert t2(Word("1")).text() == "00202202"
    assert [fhat(Word([a], 8)).text() for a in range(8)] == \
        ["01", "022", "02", "0222", "0121", "01221", "012", "021"]
    assert phi(Word("0123", 4)).text() == "767607567560"
    assert psi(Word("0123", 4)).text() == "03033033301"
    assert (A1.text(), B1.text(), A2.text(), B2.text()) == \
        ("001", "00101101", "002", "00202202")


def test_apply_examples():
    assert f(Word("01022")).text() == "01022010202"
    assert len(f(Word("01022"))) == 11
    assert f(Word("")) == Word("")
    assert g(Word("01022")).text() == "20212022"
    with pytest.raises(ValueError):
        f(Word("0123", 4))


def test_fixed_point_prefix():
    assert fixed_point_prefix(f, 0, 11).text() == "01022010202"
    assert fixed_point_prefix(f, 0, 1).text() == "0"
    assert fixed_point_prefix(f, 0, 24).text() == "010220102020102201020102"
    with pytest.raises(ValueError):
        fixed_point_prefix(g, 0, 5)  # g(0) = 20 does not start with 0


@given(st.integers(0, 300), st.integers(0, 300))
@settings(max_examples=30)
def test_prefix_stability(a, b):
    small, large = sorted((a, b))
    assert x_prefix(large).letters[:small] == x_prefix(small).letters
    assert z_prefix(large).letters[:small] == z_prefix(small).letters
    assert y_prefix(large).letters[:small] == y_prefix(small).letters


def test_transduce_examples():
    assert tau(Word("20")).text() == "0010110100101101002"
    assert len(tau(Word("20"))) == 19
    assert tau(Word("")) == Word("")


@given(ternary)
def test_taubar_is_sister(w):
    assert taubar(w) == sister(tau(w))


def test_z_prefix_examples():
    assert z_prefix(19).text() == "0010110100101101002"
    assert z_prefix(0) == Word("")


def test_tilde_tau():
    y = y_prefix(64)
    occ = tilde_tau(Occurrence(y, 0, 0), y)
    assert (occ.start, occ.end) == (0, 15)
    # block at y-start 8 spans 202120, image length 62
    occ = tilde_tau(Occurrence(y, 8, 13), y)
    assert y[8:14].text() == "202120"
    assert len(occ) == 62
    # odd-start occurrences align with the swapped block map
    occ1 = tilde_tau(Occurrence(y, 1, 2), y)
    assert occ1.word == taubar(y[1:3])
    with pytest.raises(ValueError):
        tilde_tau(Occurrence(y, 60, 63), y_prefix(63))


def test_incidence_matrices():
    assert incidence_matrix(f) == ((1, 1, 1), (1, 0, 0), (0, 2, 1))
    assert incidence_matrix(g) == ((1, 0, 0), (0, 1, 0), (1, 1, 1))
    ident = Morphism.from_texts("0", "1", "2")
    assert incidence_matrix(ident) == ((1, 0, 0), (0, 1, 0), (0, 0, 1))


def test_char_poly():
    assert char_poly(incidence_matrix(f)) == (1, -2, 0, -1)
    assert char_poly(((2, 0), (0, 5))) == (1, -7, 10)


def test_image_length_three_ways():
    assert [image_length(n) for n in range(4)] == [19, 43, 94, 207]
    assert image_length(4) == 457
    for n in range(13):
        a = image_length(n)
        assert a == image_length_by_matrix(n) == image_length_by_generation(n)


def test_length_comparisons():
    for n in range(13):
        f2, f0, f1 = (len(f_iter(Word([a]), n)) for a in (2, 0, 1))
        assert f2 <= f0 <= f1 <= 2 * f2
        t2_, t0, t1_ = (seed_len(a, n) for a in (2, 0, 1))
        assert t2_ <= t0 <= t1_ <= 2 * t2_


def f_iter(w: Word, n: int) -> Word:
    for _ in range(n):
        w = f(w)
    return w


def seed_len(a: int, n: int) -> int:
    return sum(tau.block_length(b) for b in g(f_iter(Word([a]), n)).letters)


@given(ternary)
@settings(max_examples=40)
def test_even_twos_preserved(p):
    if p.letters.count(2) % 2 != 0:
        p = p + Word("2")
    w = p
    for _ in range(6):
        w = f(w)
        assert w.letters.count(2) % 2 == 0


def test_even_power_transport():
    """An even power in the innermost word survives the full map stack with
    the matching period."""
    rng = random.Random(5)
    x = x_prefix(2000).letters
    for _ in range(25):
        plen = rng.randrange(1, 6)
        start = rng.randrange(0, 200)
        p = x[start : start + plen]
        if p.count(2) % 2 != 0:
            continue
        reps = rng.randrange(2, 4)
        word = Word((p * reps)[: plen * reps + rng.randrange(plen)], 3)
        if find_even_power(word, Fraction(2)) is None:
            continue
        for n in range(3):
            image = tau(g(f_iter(word, n)))
            period = seed_period(Word(p, 3), n)
            assert has_period(image.letters, period)


def seed_period(p: Word, n: int) -> int:
    return sum(tau.block_length(b) for b in g(f_iter(p, n)).letters)


def has_period(letters, q: int) -> bool:
    return all(letters[i] == letters[i + q] for i in range(len(letters) - q))


def test_sister_closure_of_factors():
    z = z_prefix(100_000)
    swap = (0, 2, 1)
    for m in (1, 5, 12, 30):
        factors = {z.letters[i : i + m] for i in range(len(z) - m + 1)}
        for fac in factors:
            assert tuple(swap[a] for a in fac) in factors


def test_parse_morphism_text():
    m = parse_morphism_text("# the inner map\n0 -> 01\n1 -> 022\n2 -> 02\n")
    assert m.images == f.images
    assert parse_morphism_text(m.as_text()).images == f.images
    with pytest.raises(ValueError):
        parse_morphism_text("0 -> 01\n2 -> 02\n")  # gap in source letters
    with pytest.raises(ValueError):
        parse_morphism_text("0 => 01\n")


@given(ternary, ternary)
@settings(max_examples=40)
def test_morphism_property(u, v):
    assert f(u + v) == f(u) + f(v)
    assert parikh(f(u)).counts == tuple(
        sum(incidence_matrix(f)[i][a] * parikh(u).counts[a] for a in range(3))
        for i in range(3)
    )
