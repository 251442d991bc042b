"""Factor and palindromic complexity over generated prefixes.

Counts over an infinite word are approximated on a finite prefix and only
reported when a prefix twice as long gives the same answer; otherwise the
query raises StabilizationError and the caller must enlarge the prefix.
Queries are read-only and safe to run in parallel.
"""

from __future__ import annotations

from dataclasses import dataclass

from .morphisms import GENERATED_WORDS
from .words import Word


class StabilizationError(RuntimeError):
    """The count changed between the base prefix and the doubled prefix."""


def _default_length(n: int) -> int:
    return max(10_000, 200 * max(n, 1))


class PrefixOracle:
    """Counts factors of a generated word on stabilization-checked prefixes."""

    def __init__(self, generate, name: str = "?", base_length=None):
        self._generate = generate
        self.name = name
        self._base_length = base_length
        self._cache: tuple[int, ...] = ()
        self._memo: dict[tuple, object] = {}

    @classmethod
    def for_word(cls, name: str, base_length=None) -> "PrefixOracle":
        gen = GENERATED_WORDS[name]
        return cls(lambda L: gen(L).letters, name, base_length)

    def prefix(self, length: int) -> tuple[int, ...]:
        if len(self._cache) < length:
            self._cache = tuple(self._generate(length))
            if len(self._cache) < length:
                raise ValueError(f"generator produced only {len(self._cache)} letters")
        return self._cache[:length]

    def _lengths(self, n: int) -> tuple[int, int]:
        base = self._base_length if self._base_length is not None else _default_length(n)
        return base, 2 * base

    def _stable(self, n: int, count, memo_key=None):
        if memo_key is not None and memo_key in self._memo:
            return self._memo[memo_key]
        base, double = self._lengths(n)
        first, second = count(self.prefix(base)), count(self.prefix(double))
        if first != second:
            raise StabilizationError(
                f"{self.name}: count at n={n} unstable ({first} on {base} letters, "
                f"{second} on {double}); enlarge the prefix"
            )
        if memo_key is not None:
            self._memo[memo_key] = first
        return first

    def factor_set(self, n: int, length: int) -> set[tuple[int, ...]]:
        w = self.prefix(length)
        return {w[i : i + n] for i in range(len(w) - n + 1)}

    def factor_complexity(self, n: int) -> int:
        if n < 0:
            raise ValueError("n must be >= 0")
        return self._stable(n, lambda w: len({w[i : i + n] for i in range(len(w) - n + 1)}),
                            memo_key=("C", n))

    def palindromic_complexity(self, n: int) -> int:
        if n < 0:
            raise ValueError("n must be >= 0")

        def count(w):
            return len({f for i in range(len(w) - n + 1)
                        if (f := w[i : i + n]) == f[::-1]})

        return self._stable(n, count, memo_key=("P", n))

    def right_special(self, n: int) -> "SpecialFactorReport":
        if n < 1:
            raise ValueError("n must be >= 1")

        def extensions(w):
            ext: dict[tuple[int, ...], set[int]] = {}
            for i in range(len(w) - n):
                ext.setdefault(w[i : i + n], set()).add(w[i + n])
            return tuple(sorted((fac, tuple(sorted(s))) for fac, s in ext.items() if len(s) >= 2))

        rows = self._stable(n, extensions)
        return SpecialFactorReport(
            n, tuple((Word(fac, 3), exts) for fac, exts in rows)
        )

    def palindromic_extensions(self, p: Word) -> set[tuple[int, int]]:
        """All (a, b) with a.p.b a factor of the prefix; p must be a
        palindromic factor."""
        if not p.is_palindrome():
            raise ValueError("p must be a palindrome")
        target = p.letters
        m = len(target)

        def biext(w):
            if target not in {w[i : i + m] for i in range(len(w) - m + 1)}:
                raise ValueError(f"{p.text()!r} is not a factor of the {self.name} prefix")
            out = set()
            for i in range(1, len(w) - m - 1):
                if w[i : i + m] == target:
                    out.add((w[i - 1], w[i + m]))
            return out

        return self._stable(m + 2, biext)

    def richness_defect(self, n: int) -> int:
        """P(n) + P(n+1) - (C(n+1) - C(n) + 2); zero exactly when the
        richness identity holds at n."""
        p_n = self.palindromic_complexity(n)
        p_n1 = self.palindromic_complexity(n + 1)
        c_n = self.factor_complexity(n)
        c_n1 = self.factor_complexity(n + 1)
        return p_n + p_n1 - (c_n1 - c_n + 2)


@dataclass(frozen=True)
class SpecialFactorReport:
    length: int
    factors: tuple[tuple[Word, tuple[int, ...]], ...]

    def __len__(self) -> int:
        return len(self.factors)


def palindromic_extension_palindromes(oracle: PrefixOracle, p: Word) -> set[tuple[int, int]]:
    """The palindromic subset {(a, a)} of the bi-extensions of p."""
    return {ab for ab in oracle.palindromic_extensions(p) if ab[0] == ab[1]}
