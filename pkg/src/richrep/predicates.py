"""Composable incremental predicates for the backtracking searches.

A predicate spec is plain frozen data (picklable, usable as a preset);
spec.build() returns single-owner mutable state with push/pop.  push either
advances the state and returns True, or leaves it untouched and returns
False, so the search engine can compose several predicates and roll back
cleanly.  Each state equals its batch counterpart on any word, which the
property tests exercise.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .morphisms import MORPHISMS, TRANSDUCERS, Morphism, Transducer
from .palindromes import Eertree, is_poor
from .repetition import SuffixRuns
from .words import Word


class PredicateSpec:
    def build(self, alphabet_size: int) -> "PredicateState":
        raise NotImplementedError


class PredicateState:
    def push(self, letter: int, input_length: int) -> bool:
        raise NotImplementedError

    def pop(self) -> None:
        raise NotImplementedError


@dataclass(frozen=True)
class PowerFree(PredicateSpec):
    """No factor of exponent >= alpha (or > alpha when strict)."""

    alpha: Fraction
    strict: bool = False

    def __post_init__(self):
        if self.alpha <= 1:
            raise ValueError("power-freeness needs alpha > 1")

    def build(self, alphabet_size: int) -> "PowerFreeState":
        return PowerFreeState(self.alpha, self.strict)


class PowerFreeState(PredicateState):
    def __init__(self, alpha: Fraction, strict: bool):
        self.alpha = alpha
        self.strict = strict
        self.runs = SuffixRuns()

    def push(self, letter: int, input_length: int) -> bool:
        return self.runs.extend(letter, self.alpha, self.strict)

    def pop(self) -> None:
        self.runs.pop()


@dataclass(frozen=True)
class Rich(PredicateSpec):
    """Every letter must contribute a new palindromic factor."""

    def build(self, alphabet_size: int) -> "RichState":
        return RichState()


class RichState(PredicateState):
    def __init__(self):
        self.tree = Eertree()

    def push(self, letter: int, input_length: int) -> bool:
        if self.tree.push(letter):
            return True
        self.tree.pop()
        return False

    def pop(self) -> None:
        self.tree.pop()


@dataclass(frozen=True)
class NoFactorFrom(PredicateSpec):
    """Reject words containing any of the given factors (suffix-matched:
    a factor first appears when it becomes a suffix)."""

    factors: tuple[tuple[int, ...], ...]

    @classmethod
    def of(cls, words) -> "NoFactorFrom":
        return cls(tuple(tuple(w.letters if isinstance(w, Word) else w) for w in words))

    def build(self, alphabet_size: int) -> "NoFactorState":
        return NoFactorState(self.factors)


class NoFactorState(PredicateState):
    def __init__(self, factors):
        self.factors = tuple(tuple(f) for f in factors)
        self.word: list[int] = []

    def push(self, letter: int, input_length: int) -> bool:
        word = self.word
        word.append(letter)
        n = len(word)
        for fac in self.factors:
            m = len(fac)
            if m <= n and fac[-1] == letter and tuple(word[n - m :]) == fac:
                word.pop()
                return False
        return True

    def pop(self) -> None:
        self.word.pop()


def resolve_pipeline(names: tuple[str, ...]) -> tuple[Morphism | Transducer, ...]:
    maps: list[Morphism | Transducer] = []
    for name in names:
        if name in MORPHISMS:
            maps.append(MORPHISMS[name])
        elif name in TRANSDUCERS:
            maps.append(TRANSDUCERS[name])
        else:
            raise ValueError(f"unknown map {name!r}")
    for m in maps[1:]:
        if isinstance(m, Transducer):
            raise ValueError("a transducer may only start a pipeline")
    return tuple(maps)


def pipeline_block(maps, letter: int, input_index: int) -> tuple[int, ...]:
    """Image of one input letter under the pipeline.  Transducers pick their
    block by input-letter parity, which is why they cannot follow a morphism
    (the downstream index would be unknown)."""
    block: tuple[int, ...] = (letter,)
    for m in maps:
        if isinstance(m, Transducer):
            out: list[int] = []
            for b in block:
                out.extend(m.block(b, input_index))
            block = tuple(out)
        else:
            block = m.apply_tuple(block)
    return block


@dataclass(frozen=True)
class ImagePredicate(PredicateSpec):
    """Run inner predicates over the pipeline image of the input word, one
    image letter at a time; rollback pops whole blocks."""

    pipeline: tuple[str, ...]
    inner: tuple[PredicateSpec, ...]

    def build(self, alphabet_size: int) -> "ImageState":
        maps = resolve_pipeline(self.pipeline)
        target = maps[-1].even_map.target_size if isinstance(maps[-1], Transducer) else maps[-1].target_size
        return ImageState(maps, tuple(spec.build(target) for spec in self.inner))


class ImageState(PredicateState):
    def __init__(self, maps, inner_states):
        self.maps = maps
        self.inner = inner_states
        self.image_len = 0
        self._block_sizes: list[int] = []

    def _push_image_letter(self, b: int) -> bool:
        for idx, st in enumerate(self.inner):
            if not st.push(b, self.image_len):
                for prev in reversed(self.inner[:idx]):
                    prev.pop()
                return False
        self.image_len += 1
        return True

    def _pop_image_letter(self) -> None:
        for st in reversed(self.inner):
            st.pop()
        self.image_len -= 1

    def push(self, letter: int, input_length: int) -> bool:
        block = pipeline_block(self.maps, letter, input_length)
        done = 0
        for b in block:
            if not self._push_image_letter(b):
                for _ in range(done):
                    self._pop_image_letter()
                return False
            done += 1
        self._block_sizes.append(done)
        return True

    def pop(self) -> None:
        for _ in range(self._block_sizes.pop()):
            self._pop_image_letter()


_poor_cache: dict[tuple[int, ...], bool] = {}


def _cached_poor(letters: tuple[int, ...]) -> bool:
    hit = _poor_cache.get(letters)
    if hit is None:
        hit = _poor_cache[letters] = is_poor(Word(letters, 3))
    return hit


@dataclass(frozen=True)
class NoPoorFactor(PredicateSpec):
    """Reject input words whose pipeline image contains a poor factor.

    New factors all end in the freshly appended block, so only factors ending
    there are tested, up to the window bound (poor witnesses in the searches
    this backs are far shorter than the default window)."""

    pipeline: tuple[str, ...] = ()
    window: int = 64

    def build(self, alphabet_size: int) -> "NoPoorState":
        maps = resolve_pipeline(self.pipeline)
        if any(isinstance(m, Transducer) for m in maps):
            raise ValueError("poor-factor pipelines are morphism-only")
        return NoPoorState(maps, self.window)


class NoPoorState(PredicateState):
    def __init__(self, maps, window: int):
        self.maps = maps
        self.window = window
        self.image: list[int] = []
        self._block_sizes: list[int] = []

    def push(self, letter: int, input_length: int) -> bool:
        block = pipeline_block(self.maps, letter, input_length)
        image = self.image
        start = len(image)
        image.extend(block)
        n = len(image)
        for end in range(start, n):
            lo = max(0, end + 1 - self.window)
            for i in range(lo, end + 1):
                if _cached_poor(tuple(image[i : end + 1])):
                    del image[start:]
                    return False
        self._block_sizes.append(len(block))
        return True

    def pop(self) -> None:
        size = self._block_sizes.pop()
        del self.image[len(self.image) - size :]
