"""Pruned depth-first backtracking over Sigma_k^* with incremental predicates.

The general engine below runs any predicate combination and is the reference
implementation; configs made of power-freeness, richness, and forbidden
factors (optionally through the tau image) are dispatched to a compiled
kernel with identical semantics (see fastpath).  Letters are tried in
ascending order, so the reported witness is the lexicographically least
among the longest words, and results are deterministic.
"""

from __future__ import annotations

import multiprocessing
from dataclasses import dataclass, replace

from .predicates import PredicateSpec
from .words import Word


class ConfigError(ValueError):
    """The search configuration is contradictory (e.g. the prefix itself
    fails a predicate)."""


@dataclass(frozen=True)
class SearchConfig:
    alphabet_size: int
    prefix: tuple[int, ...] = ()
    predicates: tuple[PredicateSpec, ...] = ()
    letters: tuple[int, ...] | None = None
    max_depth: int | None = None
    node_budget: int | None = None

    def __post_init__(self):
        if self.letters is not None and tuple(sorted(self.letters)) != self.letters:
            object.__setattr__(self, "letters", tuple(sorted(self.letters)))

    @property
    def letter_choices(self) -> tuple[int, ...]:
        return self.letters if self.letters is not None else tuple(range(self.alphabet_size))


@dataclass(frozen=True)
class SearchResult:
    length: int
    witness: Word
    exhausted: bool
    nodes: int

    def key(self) -> tuple:
        return (-self.length, self.witness.letters)


def _merge(results, nodes: int, exhausted: bool) -> SearchResult:
    best = min(results, key=SearchResult.key)
    return SearchResult(best.length, best.witness, exhausted, nodes)


def _general_search(config: SearchConfig) -> SearchResult:
    states = [spec.build(config.alphabet_size) for spec in config.predicates]
    letters = config.letter_choices
    budget = config.node_budget
    max_depth = config.max_depth
    word: list[int] = []
    nodes = 0
    exhausted = True

    def attempt(c: int) -> bool:
        for idx, st in enumerate(states):
            if not st.push(c, len(word)):
                for prev in reversed(states[:idx]):
                    prev.pop()
                return False
        word.append(c)
        return True

    def undo() -> None:
        for st in reversed(states):
            st.pop()
        word.pop()

    for c in config.prefix:
        nodes += 1
        if not attempt(c):
            raise ConfigError(f"prefix {''.join(map(str, config.prefix))} fails the predicates")

    best_len = len(word)
    best_word = tuple(word)
    nprefix = len(config.prefix)
    # ci[d] = index of the next letter to try at depth d (beyond the prefix)
    ci = [0]
    while True:
        d = len(ci) - 1
        li = ci[d]
        if li >= len(letters) or (max_depth is not None and len(word) >= max_depth):
            if d == 0:
                break
            ci.pop()
            undo()
            continue
        ci[d] += 1
        if budget is not None and nodes >= budget:
            exhausted = False
            break
        nodes += 1
        if attempt(letters[li]):
            ci.append(0)
            if len(word) > best_len:
                best_len = len(word)
                best_word = tuple(word)
    return SearchResult(best_len, Word(best_word, config.alphabet_size), exhausted, nodes)


def longest_word(config: SearchConfig, engine: str = "auto", threads: int = 1) -> SearchResult:
    """Exact longest word in the DFS tree rooted at the prefix.

    engine: "auto" dispatches eligible configs to the compiled kernel,
    "general"/"fast" force one implementation.  threads > 1 splits subtrees
    at a fixed depth onto worker processes; the merge is associative and
    commutative on (length desc, witness asc), so results and node counts
    are schedule-independent.
    """
    if threads > 1 and config.node_budget is None:
        return _parallel_search(config, threads)
    if engine != "general":
        from . import fastpath

        if fastpath.eligible(config):
            return fastpath.run(config)
        if engine == "fast":
            raise ValueError("config is not eligible for the compiled kernel")
    return _general_search(config)


SPLIT_DEPTH = 3


def _frontier(config: SearchConfig, depth: int):
    """Accepted extensions of the prefix, exactly `depth` letters deeper,
    plus the interior node count and interior best result."""
    states = [spec.build(config.alphabet_size) for spec in config.predicates]
    letters = config.letter_choices
    word: list[int] = []
    nodes = 0

    def attempt(c: int) -> bool:
        for idx, st in enumerate(states):
            if not st.push(c, len(word)):
                for prev in reversed(states[:idx]):
                    prev.pop()
                return False
        word.append(c)
        return True

    for c in config.prefix:
        nodes += 1
        if not attempt(c):
            raise ConfigError("prefix fails the predicates")

    frontier: list[tuple[int, ...]] = []
    best = (len(word), tuple(word))
    target = len(config.prefix) + depth

    def rec():
        nonlocal nodes, best
        if len(word) == target:
            frontier.append(tuple(word))
            return
        for c in letters:
            nodes += 1
            if attempt(c):
                if len(word) > best[0]:
                    best = (len(word), tuple(word))
                rec()
                for st in reversed(states):
                    st.pop()
                word.pop()

    rec()
    return frontier, nodes, best


def _run_subtree(args):
    config, prefix = args
    res = longest_word(replace(config, prefix=prefix), engine="auto", threads=1)
    # drop the replayed prefix attempts so node totals match a sequential run
    return SearchResult(res.length, res.witness, res.exhausted, res.nodes - len(prefix))


def _parallel_search(config: SearchConfig, threads: int) -> SearchResult:
    if config.max_depth is not None and config.max_depth <= len(config.prefix) + SPLIT_DEPTH:
        return _general_search(config)
    frontier, interior_nodes, interior_best = _frontier(config, SPLIT_DEPTH)
    results = [
        SearchResult(interior_best[0], Word(interior_best[1], config.alphabet_size), True, 0)
    ]
    tasks = [(config, w) for w in frontier]
    if tasks:
        with multiprocessing.Pool(threads) as pool:
            results.extend(pool.map(_run_subtree, tasks))
    nodes = interior_nodes + sum(r.nodes for r in results)
    exhausted = all(r.exhausted for r in results)
    return _merge(results, nodes, exhausted)
