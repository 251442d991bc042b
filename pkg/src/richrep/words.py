"""Finite words over small integer alphabets.

Letters are integers 0..k-1 (k <= 10), so text round-trips through single
ASCII digits.  Word values are immutable and safe to share between threads.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

Letters = Sequence[int]

MAX_ALPHABET = 10


class Word:
    """Immutable finite word; empty word allowed."""

    __slots__ = ("letters", "alphabet_size")

    def __init__(self, letters: Iterable[int] | str = (), alphabet_size: int | None = None):
        if isinstance(letters, str):
            tup = tuple(int(c) for c in letters)
        else:
            tup = tuple(letters)
        if alphabet_size is None:
            # ternary is the default working alphabet; widen as needed
            alphabet_size = max(3, max(tup) + 1) if tup else 3
        if not 1 <= alphabet_size <= MAX_ALPHABET:
            raise ValueError(f"alphabet size {alphabet_size} out of range 1..{MAX_ALPHABET}")
        for a in tup:
            if not 0 <= a < alphabet_size:
                raise ValueError(f"letter {a} not in 0..{alphabet_size - 1}")
        object.__setattr__(self, "letters", tup)
        object.__setattr__(self, "alphabet_size", alphabet_size)

    def __setattr__(self, name, value):
        raise AttributeError("Word is immutable")

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[int]:
        return iter(self.letters)

    def __getitem__(self, i):
        if isinstance(i, slice):
            return Word(self.letters[i], self.alphabet_size)
        return self.letters[i]

    def __add__(self, other: "Word | Letters") -> "Word":
        tail = other.letters if isinstance(other, Word) else tuple(other)
        k = self.alphabet_size
        if isinstance(other, Word):
            k = max(k, other.alphabet_size)
        elif tail:
            k = max(k, max(tail) + 1)
        return Word(self.letters + tail, k)

    def __mul__(self, n: int) -> "Word":
        return Word(self.letters * n, self.alphabet_size)

    def __eq__(self, other) -> bool:
        return isinstance(other, Word) and self.letters == other.letters

    def __hash__(self) -> int:
        return hash(self.letters)

    def __lt__(self, other: "Word") -> bool:
        return self.letters < other.letters

    def __repr__(self) -> str:
        return f"Word({self.text()!r})"

    def text(self) -> str:
        return "".join(str(a) for a in self.letters)

    def reversed(self) -> "Word":
        return Word(self.letters[::-1], self.alphabet_size)

    def is_palindrome(self) -> bool:
        return self.letters == self.letters[::-1]

    def with_alphabet(self, k: int) -> "Word":
        return Word(self.letters, k)


@dataclass(frozen=True)
class Occurrence:
    """One occurrence source[start..end] (end inclusive) of a factor."""

    source: Word
    start: int
    end: int

    def __post_init__(self):
        if not 0 <= self.start <= self.end < len(self.source):
            raise ValueError(f"occurrence ({self.start},{self.end}) out of range")

    def __len__(self) -> int:
        return self.end - self.start + 1

    @property
    def word(self) -> Word:
        return self.source[self.start : self.end + 1]


@dataclass(frozen=True)
class ParikhVector:
    counts: tuple[int, ...]

    def __add__(self, other: "ParikhVector") -> "ParikhVector":
        return ParikhVector(tuple(a + b for a, b in zip(self.counts, other.counts)))

    def total(self) -> int:
        return sum(self.counts)


_SISTER_SWAP = (0, 2, 1)


def sister(w: Word) -> Word:
    """Swap letters 1 and 2; defined for ternary words only."""
    if w.alphabet_size != 3:
        raise ValueError("sister is defined over the 3-letter alphabet")
    return Word(tuple(_SISTER_SWAP[a] for a in w.letters), 3)


def parikh(w: Word) -> ParikhVector:
    counts = [0] * w.alphabet_size
    for a in w.letters:
        counts[a] += 1
    return ParikhVector(tuple(counts))


def occurrences(host: Letters, w: Letters) -> list[int]:
    """Start indices of all (possibly overlapping) occurrences of w in host."""
    target = tuple(w)
    m = len(target)
    if m == 0:
        return list(range(len(host) + 1))
    return [i for i in range(len(host) - m + 1) if tuple(host[i : i + m]) == target]


def complete_returns(host: Word, w: Word) -> set[Word]:
    """Complete return words to w in host: factors with w as proper prefix and
    proper suffix but no internal occurrence.  Fewer than two occurrences of w
    give the empty set."""
    if len(w) == 0:
        raise ValueError("complete returns to the empty word are undefined")
    occ = occurrences(host.letters, w.letters)
    out = set()
    for i, j in zip(occ, occ[1:]):
        out.add(host[i : j + len(w)])
    return out


def word_lines(text: str) -> list[Word]:
    """Parse the word text format: one word per line, ASCII digits, '#' comments."""
    out = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if not line.isdigit():
            raise ValueError(f"bad word line: {raw!r}")
        out.append(Word(line))
    return out


def read_words(path) -> list[Word]:
    with open(path, "r", encoding="ascii") as fh:
        return word_lines(fh.read())


def write_words(path, words: Iterable[Word]) -> None:
    with open(path, "w", encoding="ascii") as fh:
        for w in words:
            fh.write(w.text() + "\n")
