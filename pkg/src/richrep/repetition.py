"""Periods, exponents, and power-freeness with exact rational arithmetic.

Every accept/reject decision is an integer comparison; floats never enter.
Quadratic scans are fine at the scales this toolkit runs at.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .words import Occurrence, Word


def parse_rational(text: str) -> tuple[Fraction, bool]:
    """Parse "p/q", "n", or a decimal literal; a trailing '+' selects the
    strict reading (no exponent strictly above the bound)."""
    strict = text.endswith("+")
    if strict:
        text = text[:-1]
    if "/" in text:
        p, q = text.split("/", 1)
        value = Fraction(int(p), int(q))
    else:
        value = Fraction(text)
    return value, strict


def format_rational(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}" if x.denominator != 1 else str(x.numerator)


@dataclass(frozen=True)
class RepetitionReport:
    max_exponent: Fraction
    witness: Occurrence
    period: int


def smallest_period(w: Word) -> int:
    """Least p >= 1 with w[i+p] = w[i] for all valid i, via the border array."""
    n = len(w)
    if n == 0:
        raise ValueError("the empty word has no period")
    letters = w.letters
    border = [0] * n
    k = 0
    for i in range(1, n):
        while k and letters[i] != letters[k]:
            k = border[k - 1]
        if letters[i] == letters[k]:
            k += 1
        border[i] = k
    return n - border[n - 1]


def exponent(w: Word) -> Fraction:
    """|w| / period(w), the largest exponent of w."""
    return Fraction(len(w), smallest_period(w))


def _period_runs(letters: tuple[int, ...]):
    """Yield (p, run_start, run_end) for every maximal stretch of positions i
    in [run_start, run_end] with letters[i] == letters[i-p].  The stretch
    witnesses the p-periodic factor letters[run_start-p .. run_end]."""
    n = len(letters)
    for p in range(1, n):
        i = p
        while i < n:
            if letters[i] == letters[i - p]:
                j = i
                while j + 1 < n and letters[j + 1] == letters[j + 1 - p]:
                    j += 1
                yield p, i, j
                i = j + 2
            else:
                i += 1


def max_exponent_factor(w: Word) -> RepetitionReport:
    """Maximum exponent over all nonempty factors, with one witness.

    Ties prefer the shortest witness, then the leftmost occurrence."""
    if len(w) == 0:
        raise ValueError("empty word")
    letters = w.letters
    best = Fraction(1)
    best_occ = (0, 0)
    best_p = 1
    for p, i, j in _period_runs(letters):
        e = Fraction(j - i + 1 + p, p)
        occ = (i - p, j)
        if e > best or (e == best and (occ[1] - occ[0], occ[0]) < (best_occ[1] - best_occ[0], best_occ[0])):
            best, best_occ, best_p = e, occ, p
    return RepetitionReport(best, Occurrence(w, best_occ[0], best_occ[1]), best_p)


def is_power_free(w: Word, alpha: Fraction, strict: bool = False) -> bool:
    """No factor of exponent >= alpha (strict=False) or > alpha (strict=True)."""
    if alpha <= 1:
        raise ValueError("power-freeness needs alpha > 1")
    num, den = alpha.numerator, alpha.denominator
    excess = num - den
    letters = w.letters
    for p, i, j in _period_runs(letters):
        run = j - i + 1
        if den * run > excess * p or (not strict and den * run == excess * p):
            return False
    return True


class SuffixRuns:
    """Incremental power-freeness state for depth-first extension.

    For every lag p, tracks how many trailing positions i satisfy
    w[i] == w[i-p]; the longest p-periodic suffix then has length run_p + p.
    extend() is O(current length); pop() restores exactly (journaled resets).
    Single-owner mutable state; the run table itself is threshold-free, so one
    state can serve queries at several thresholds.
    """

    def __init__(self):
        self.word: list[int] = []
        self.runs: list[int] = [0]
        self._resets: list[tuple[int, int]] = []
        self._marks: list[int] = []

    def __len__(self) -> int:
        return len(self.word)

    def extend(self, a: int, alpha: Fraction, strict: bool = False) -> bool:
        """Append a if the extended word stays alpha-power-free; report whether
        it did.  On rejection the state is unchanged."""
        if alpha <= 1:
            raise ValueError("power-freeness needs alpha > 1")
        num, den = alpha.numerator, alpha.denominator
        excess = num - den
        word, runs = self.word, self.runs
        n = len(word)
        mark = len(self._resets)
        ok = True
        for p in range(1, n + 1):
            if word[n - p] == a:
                r = runs[p] + 1
                runs[p] = r
                if den * r > excess * p or (not strict and den * r == excess * p):
                    ok = False
            elif runs[p]:
                self._resets.append((p, runs[p]))
                runs[p] = 0
        if not ok:
            for p in range(1, n + 1):
                if word[n - p] == a:
                    runs[p] -= 1
            while len(self._resets) > mark:
                p, v = self._resets.pop()
                runs[p] = v
            return False
        word.append(a)
        runs.append(0)
        self._marks.append(mark)
        return True

    def pop(self) -> None:
        a = self.word.pop()
        self.runs.pop()
        n = len(self.word)
        runs = self.runs
        for p in range(1, n + 1):
            if self.word[n - p] == a:
                runs[p] -= 1
        mark = self._marks.pop()
        while len(self._resets) > mark:
            p, v = self._resets.pop()
            runs[p] = v


def suffix_extension_ok(state: SuffixRuns, a: int, alpha: Fraction, strict: bool = False) -> bool:
    """Incremental form of is_power_free: accepts the letter iff the extended
    word is still alpha-power-free, advancing the state only on success."""
    return state.extend(a, alpha, strict)


def periodic_hits(letters, alpha: Fraction, strict: bool = False,
                  max_period: int | None = None, stop_at_first: bool = False):
    """Vectorized repetition scan: maximal runs whose exponent passes the
    bound, as (period, start, end) with end inclusive.  Positions matching
    their lag-p predecessor form runs; a run of r matches witnesses a factor
    of length r + p and exponent (r + p)/p."""
    letters = tuple(letters)
    n = len(letters)
    if n < 2:
        return []
    arr = np.frombuffer(bytes(letters), dtype=np.uint8)
    num, den = alpha.numerator, alpha.denominator
    bound = min(max_period, n - 1) if max_period is not None else n - 1
    out: list[tuple[int, int, int]] = []
    for p in range(1, bound + 1):
        eq = arr[p:] == arr[:-p]
        if not eq.any():
            continue
        edges = np.flatnonzero(np.diff(np.concatenate(([0], eq.view(np.int8), [0]))))
        starts, ends = edges[::2], edges[1::2]
        runs = ends - starts
        keep = den * (runs + p) > num * p if strict else den * (runs + p) >= num * p
        for s, e in zip(starts[keep], ends[keep]):
            out.append((p, int(s), int(e) + p - 1))
        if out and stop_at_first:
            return out
    return out


def max_exponent_value(letters) -> Fraction:
    """Maximum exponent over all nonempty factors (value only), vectorized."""
    letters = tuple(letters)
    n = len(letters)
    best = Fraction(1)
    if n < 2:
        return best
    arr = np.frombuffer(bytes(letters), dtype=np.uint8)
    for p in range(1, n):
        eq = arr[p:] == arr[:-p]
        if not eq.any():
            continue
        edges = np.flatnonzero(np.diff(np.concatenate(([0], eq.view(np.int8), [0]))))
        longest = int((edges[1::2] - edges[::2]).max())
        cand = Fraction(longest + p, p)
        if cand > best:
            best = cand
    return best


def find_even_power(w: Word, r: Fraction) -> Occurrence | None:
    """An occurrence of a factor p^r' (r' >= r) whose period word p has an even
    number of 2's, or None.  Ternary words only."""
    if w.alphabet_size != 3:
        raise ValueError("even powers are defined over the 3-letter alphabet")
    if r < 1:
        raise ValueError("need r >= 1")
    letters = w.letters
    twos = [0]
    for a in letters:
        twos.append(twos[-1] + (a == 2))
    if r == 1:
        # x = x^1, so any factor with an even number of 2's qualifies
        n = len(letters)
        for length in range(1, n + 1):
            for s in range(n - length + 1):
                if (twos[s + length] - twos[s]) % 2 == 0:
                    return Occurrence(w, s, s + length - 1)
        return None
    best: tuple[int, int] | None = None
    for p, i, j in _period_runs(letters):
        if (j - i + 1 + p) * r.denominator >= r.numerator * p:
            start = i - p
            if (twos[start + p] - twos[start]) % 2 == 0:
                if best is None or (start, j) < best:
                    best = (start, j)
    if best is None:
        return None
    return Occurrence(w, best[0], best[1])
