import pytest
from hypothesis import given
from hypothesis import strategies as st

from richrep import Word, complete_returns, parikh, sister
from richrep.morphisms import y_prefix, z_prefix
from richrep.words import Occurrence, occurrences, word_lines

ternary = st.lists(st.integers(0, 2), max_size=30).map(lambda xs: Word(xs, 3))


def test_word_basics():
    w = Word("00101")
    assert len(w) == 5
    assert w.text() == "00101"
    assert w[1:3] == Word("01")
    assert w + Word("2") == Word("001012")
    assert Word("01") * 3 == Word("010101")
    assert Word("") == Word(())
    assert Word("012").reversed() == Word("210")


def test_word_validation():
    with pytest.raises(ValueError):
        Word("03", alphabet_size=3)
    with pytest.raises(ValueError):
        Word("0", alphabet_size=11)


def test_occurrence_bounds():
    w = Word("0102")
    occ = Occurrence(w, 1, 2)
    assert occ.word == Word("10")
    with pytest.raises(ValueError):
        Occurrence(w, 2, 4)


def test_sister_examples():
    assert sister(Word("001")) == Word("002")
    assert sister(Word("000")) == Word("000")
    assert sister(Word("00101101")) == Word("00202202")


def test_sister_needs_ternary():
    with pytest.raises(ValueError):
        sister(Word("0123"))


@given(ternary)
def test_sister_involution(w):
    assert sister(sister(w)) == w


def test_parikh_examples():
    assert parikh(Word("01022")).counts == (2, 1, 2)
    assert parikh(Word("")).counts == (0, 0, 0)
    assert parikh(Word("20")).counts == (1, 0, 1)


@given(ternary, ternary)
def test_parikh_additive(u, v):
    assert parikh(u + v) == parikh(u) + parikh(v)


def test_complete_returns_trivial():
    host = Word("0102010")
    assert complete_returns(host, Word("010")) == {Word("0102010")}


def test_complete_returns_in_y():
    host = y_prefix(2000)
    assert complete_returns(host, Word("2")) == {Word("202"), Word("212"), Word("22")}


def test_complete_returns_in_z():
    host = z_prefix(5000)
    expected = {Word("00100"), Word("0010110100"), Word("00200"), Word("0020220200")}
    assert complete_returns(host, Word("00")) == expected


@given(st.lists(st.integers(0, 1), min_size=2, max_size=14).map(lambda xs: Word(xs, 3)),
       st.lists(st.integers(0, 1), min_size=1, max_size=3).map(lambda xs: Word(xs, 3)))
def test_complete_returns_shape(host, w):
    for ret in complete_returns(host, w):
        assert ret.letters[: len(w)] == w.letters
        assert ret.letters[-len(w) :] == w.letters
        assert len(occurrences(ret.letters, w.letters)) == 2


def test_complete_returns_rejects_empty():
    with pytest.raises(ValueError):
        complete_returns(Word("010"), Word(""))


def test_word_lines():
    assert word_lines("# c\n001\n\n22 # trailing\n") == [Word("001"), Word("22")]
    with pytest.raises(ValueError):
        word_lines("0a1\n")
