import random
from dataclasses import replace
from fractions import Fraction
from itertools import product

import pytest

from richrep import (ConfigError, ImagePredicate, NoFactorFrom, NoPoorFactor,
                     PowerFree, Rich, SearchConfig, Word, is_power_free, is_rich,
                     longest_word, tau)
from richrep.fastpath import eligible
from richrep.palindromes import has_poor_factor
from richrep.predicates import pipeline_block, resolve_pipeline
from richrep.presets import PRESETS, preset


def naive_longest(config: SearchConfig, batch_ok, depth: int):
    """Plain enumeration oracle: filter every word up to the given depth."""
    letters = config.letter_choices
    best = config.prefix
    for n in range(len(config.prefix), depth + 1):
        for tail in product(letters, repeat=n - len(config.prefix)):
            w = config.prefix + tail
            # lex enumeration: the first strictly longer hit is the witness
            if len(w) > len(best) and all(batch_ok(w[: i + 1]) for i in range(len(w))):
                best = w
    return best


def batch_for(config: SearchConfig):
    def ok(letters):
        w = Word(letters, config.alphabet_size)
        for spec in config.predicates:
            if isinstance(spec, PowerFree):
                if not is_power_free(w, spec.alpha, spec.strict):
                    return False
            elif isinstance(spec, Rich):
                if not is_rich(w):
                    return False
            elif isinstance(spec, NoFactorFrom):
                tup = tuple(letters)
                for fac in spec.factors:
                    if any(tup[i : i + len(fac)] == fac for i in range(len(tup))):
                        return False
            elif isinstance(spec, ImagePredicate):
                maps = resolve_pipeline(spec.pipeline)
                img = []
                for idx, a in enumerate(letters):
                    img.extend(pipeline_block(maps, a, idx))
                image = Word(img, 3)
                for inner in spec.inner:
                    if isinstance(inner, PowerFree):
                        if not is_power_free(image, inner.alpha, inner.strict):
                            return False
                    elif isinstance(inner, Rich):
                        if not is_rich(image):
                            return False
            elif isinstance(spec, NoPoorFactor):
                maps = resolve_pipeline(spec.pipeline)
                img = []
                for idx, a in enumerate(letters):
                    img.extend(pipeline_block(maps, a, idx))
                if has_poor_factor(img, spec.window):
                    return False
        return True

    return ok


ORACLE_CONFIGS = [
    (SearchConfig(2, (), (PowerFree(Fraction(7, 3)),)), 12),
    (SearchConfig(2, (), (PowerFree(Fraction(2), True), Rich())), 12),
    (SearchConfig(3, (0, 1), (PowerFree(Fraction(2)), Rich())), 8),
    (SearchConfig(3, (), (PowerFree(Fraction(7, 3)), Rich(),
                          NoFactorFrom(((0, 1), (2, 2))))), 7),
    (SearchConfig(3, (), (ImagePredicate(("tau",), (PowerFree(Fraction(16, 7)), Rich())),),
                  letters=(0, 2)), 7),
]


@pytest.mark.parametrize("config,depth", ORACLE_CONFIGS)
def test_engine_matches_naive_enumeration(config, depth):
    capped = replace(config, max_depth=depth)
    result = longest_word(capped, engine="general")
    oracle = naive_longest(config, batch_for(config), depth)
    assert result.length == len(oracle)
    assert result.witness.letters == oracle
    assert result.exhausted


def test_fast_and_general_engines_identical(search_result):
    for name in ("no_00", "y_binary", "table2_211"):
        fast = longest_word(preset(name), engine="fast")
        slow = longest_word(preset(name), engine="general")
        assert (fast.length, fast.witness, fast.exhausted, fast.nodes) == \
            (slow.length, slow.witness, slow.exhausted, slow.nodes)


def test_fastpath_eligibility():
    assert eligible(preset("table1_102"))
    assert eligible(preset("table2_211"))
    assert eligible(preset("no_00"))
    assert not eligible(preset("sigma4_phi"))
    assert not eligible(preset("onetwo_f1"))
    with pytest.raises(ValueError):
        longest_word(preset("sigma4_phi"), engine="fast")


def test_budget_reports_unexhausted():
    config = replace(preset("no_00"), node_budget=500)
    result = longest_word(config)
    assert not result.exhausted
    assert result.nodes == 500
    full = longest_word(preset("no_00"))
    assert result.length <= full.length


def test_budget_identical_across_engines():
    config = replace(preset("no_00"), node_budget=700)
    fast = longest_word(config, engine="fast")
    slow = longest_word(config, engine="general")
    assert (fast.length, fast.witness, fast.exhausted, fast.nodes) == \
        (slow.length, slow.witness, slow.exhausted, slow.nodes)


def test_contradictory_prefix_raises():
    config = SearchConfig(3, (0, 0, 0), (PowerFree(Fraction(7, 3)),))
    with pytest.raises(ConfigError):
        longest_word(config, engine="general")
    with pytest.raises(ConfigError):
        longest_word(config, engine="fast")


def test_parallel_matches_sequential():
    config = preset("no_00")
    seq = longest_word(config, threads=1)
    par = longest_word(config, threads=2)
    assert (par.length, par.witness, par.exhausted, par.nodes) == \
        (seq.length, seq.witness, seq.exhausted, seq.nodes)


def test_predicate_push_pop_replay_fuzz():
    rng = random.Random(42)
    specs = (PowerFree(Fraction(7, 3)), Rich(), NoFactorFrom(((0, 1, 0, 1),)),
             ImagePredicate(("tau",), (PowerFree(Fraction(16, 7)), Rich())))
    for trial in range(15):
        states = [spec.build(3) for spec in specs]
        word: list[int] = []
        for _ in range(60):
            if word and rng.random() < 0.35:
                for st in reversed(states):
                    st.pop()
                word.pop()
            else:
                c = rng.randrange(3)
                outcomes = []
                for st in states:
                    outcomes.append(st.push(c, len(word)))
                    if not outcomes[-1]:
                        break
                if all(outcomes) and len(outcomes) == len(states):
                    word.append(c)
                else:
                    for st, ok in zip(states, outcomes):
                        if ok:
                            st.pop()
        # replay from scratch and compare acceptance of all next letters
        replay = [spec.build(3) for spec in specs]
        for i, c in enumerate(word):
            for st in replay:
                assert st.push(c, i)
        for c in range(3):
            live = [st.push(c, len(word)) for st in states]
            fresh = [st.push(c, len(word)) for st in replay]
            for st, ok in zip(states, live):
                if ok:
                    st.pop()
            for st, ok in zip(replay, fresh):
                if ok:
                    st.pop()
            assert live == fresh


def test_preset_catalog_complete():
    required = {
        "table1_102", "table1_0011", "table1_00100200",
        "table2_201", "table2_210", "table2_211",
        "no_start_factors", "no_00", "y_binary",
        "sigma4_phi", "fourfive_fprime", "sigma2_psi", "rt4_frontier",
    }
    assert required <= set(PRESETS)
    with pytest.raises(ValueError):
        preset("unknown_preset")


def test_max_depth_caps_search():
    config = replace(preset("no_00"), max_depth=10)
    result = longest_word(config, engine="general")
    assert result.length == 10
    assert result.exhausted
