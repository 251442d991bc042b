"""Catalog of the reproducible searches, plus the forbidden-family and
return-tree verifications.

Every preset pins the exact configuration of one reported backtracking
search; expected lengths live in expectations.EXPECTED_LENGTHS so the CLI
can diagnose mismatches field by field.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .engine import SearchConfig
from .morphisms import F1, F_PHI, F_PRIME, F_PSI, FORBIDDEN_FAMILIES, f, g, tau
from .palindromes import is_poor
from .predicates import ImagePredicate, NoFactorFrom, NoPoorFactor, PowerFree, Rich
from .repetition import max_exponent_factor, max_exponent_value, periodic_hits
from .words import Word


def _cfg(k, prefix="", preds=(), letters=None, budget=None):
    return SearchConfig(
        alphabet_size=k,
        prefix=tuple(int(c) for c in prefix),
        predicates=tuple(preds),
        letters=letters,
        node_budget=budget,
    )


_PF73 = PowerFree(Fraction(7, 3))
_RICH_73 = (_PF73, Rich())
_TAU_167 = ImagePredicate(("tau",), (PowerFree(Fraction(16, 7)), Rich()))

PRESETS: dict[str, SearchConfig] = {
    "table1_102": _cfg(3, "102", _RICH_73),
    "table1_0011": _cfg(3, "0011", _RICH_73),
    "table1_00100200": _cfg(3, "00100200", _RICH_73),
    "table2_201": _cfg(3, "201", (_TAU_167,)),
    "table2_210": _cfg(3, "210", (_TAU_167,)),
    "table2_211": _cfg(3, "211", (_TAU_167,)),
    "no_start_factors": _cfg(
        3, "", (_PF73, Rich(), NoFactorFrom.of([Word("001002"), Word("112110"), Word("220221")]))
    ),
    "no_00": _cfg(3, "", (_PF73, Rich(), NoFactorFrom.of([Word("00")]))),
    "y_binary": _cfg(3, "", (_TAU_167,), letters=(0, 1)),
    "onetwo_f1": _cfg(3, "", (NoFactorFrom.of(F1),), letters=(1, 2)),
    "sigma4_phi": _cfg(
        4, "",
        (PowerFree(Fraction(3)), NoFactorFrom.of(F_PHI), NoPoorFactor(("phi", "fhat"))),
    ),
    "fourfive_fprime": _cfg(
        8, "",
        (PowerFree(Fraction(5)), NoFactorFrom.of(F_PRIME), NoPoorFactor(("fhat",))),
        letters=(4, 5),
    ),
    "sigma2_psi": _cfg(
        4, "",
        (PowerFree(Fraction(5)), NoFactorFrom.of(F_PSI), NoPoorFactor(("psi", "fhat"))),
        letters=(0, 1),
    ),
    "rt4_frontier": _cfg(
        4, "", (PowerFree(Fraction(2117, 1000)), Rich()), budget=200_000
    ),
}


def preset(name: str) -> SearchConfig:
    try:
        return PRESETS[name]
    except KeyError:
        raise ValueError(f"unknown preset {name!r}; choose from {sorted(PRESETS)}") from None


# ---------------------------------------------------------------------------
# forbidden-family verification

_S3 = (0, 1, 2)
_ALL_CONTEXTS = tuple((a, b) for a in _S3 for b in _S3)
_RIGHT_CONTEXTS = tuple((None, b) for b in _S3)


@dataclass(frozen=True)
class ForbiddenCase:
    word: Word
    n_max: int
    contexts: tuple[tuple[int | None, int | None], ...]


# Base cases checked directly; above each n_max the even-power transport
# argument takes over, so no further finite checks are required.
FORBIDDEN_BASE_CASES: dict[str, tuple[ForbiddenCase, ...]] = {
    "F1": (
        ForbiddenCase(Word("00"), 0, _RIGHT_CONTEXTS),
        ForbiddenCase(Word("11"), 0, _RIGHT_CONTEXTS),
        ForbiddenCase(Word("212"), 2, _RIGHT_CONTEXTS),
        ForbiddenCase(Word("2222"), 1, _RIGHT_CONTEXTS),
        ForbiddenCase(Word("1222"), 3, ((None, 0), (None, 1))),
        ForbiddenCase(Word("2221"), 3, tuple((a, b) for a in (0, 1) for b in _S3)),
        ForbiddenCase(Word("1010"), 0, ((None, 1), (None, 2))),
        ForbiddenCase(Word("0101"), 0, ((2, 2),)),
        ForbiddenCase(Word("022022"), 1, _ALL_CONTEXTS),
        ForbiddenCase(Word("220220"), 1, _ALL_CONTEXTS),
    ),
    # sampled entries: the toolkit confirms the first few layers directly
    "F2": tuple(ForbiddenCase(w, 2, _ALL_CONTEXTS) for w in FORBIDDEN_FAMILIES["F2"]),
    "F3": tuple(ForbiddenCase(w, 2, _ALL_CONTEXTS) for w in FORBIDDEN_FAMILIES["F3"]),
    "F4": tuple(ForbiddenCase(w, 2, _ALL_CONTEXTS) for w in FORBIDDEN_FAMILIES["F4"]),
}

_SIXTEEN_SEVENTHS = Fraction(16, 7)


@dataclass(frozen=True)
class ForbiddenCheck:
    word: Word
    n: int
    left: int | None
    right: int | None
    max_exponent: Fraction
    ok: bool


def verify_forbidden_family(w: Word, n_max: int, contexts=None) -> list[ForbiddenCheck]:
    """For each n <= n_max and each required context (a, b), confirm that
    tau(g(f^n(a w b))) contains a factor of exponent >= 16/7."""
    if contexts is None:
        contexts = _ALL_CONTEXTS
    out = []
    for n in range(n_max + 1):
        for a, b in contexts:
            left = () if a is None else (a,)
            right = () if b is None else (b,)
            cur = left + w.letters + right
            for _ in range(n):
                cur = f.apply_tuple(cur)
            image = tau.apply_tuple(g.apply_tuple(cur))
            hits = periodic_hits(image, _SIXTEEN_SEVENTHS, strict=False)
            if hits:
                witness = max(Fraction(e - s + 1, p) for p, s, e in hits)
                out.append(ForbiddenCheck(w, n, a, b, witness, True))
            else:
                out.append(ForbiddenCheck(w, n, a, b, max_exponent_value(image), False))
    return out


def verify_forbidden_catalog(families=("F1", "F2", "F3", "F4")):
    """Run every base case; returns {family: [ForbiddenCheck, ...]}."""
    results = {}
    for fam in families:
        checks: list[ForbiddenCheck] = []
        for case in FORBIDDEN_BASE_CASES[fam]:
            checks.extend(verify_forbidden_family(case.word, case.n_max, case.contexts))
        results[fam] = checks
    return results


# ---------------------------------------------------------------------------
# return-tree verification

TABLE1_WORDS = (Word("102"), Word("0011"), Word("00100200"))
TABLE2_WORDS = (Word("201"), Word("210"), Word("211"))

_PERMS3 = ((0, 1, 2), (0, 2, 1), (1, 0, 2), (1, 2, 0), (2, 0, 1), (2, 1, 0))


def letter_permutations(w: Word) -> set[Word]:
    return {Word(tuple(p[a] for a in w.letters), 3) for p in _PERMS3}


_TABLE1_PERMUTED = frozenset(
    v.letters for w in TABLE1_WORDS for v in letter_permutations(w)
)


@dataclass(frozen=True)
class Leaf:
    word: Word
    color: str            # "green" | "red" | "yellow"
    reason: str


@dataclass(frozen=True)
class TreeReport:
    name: str
    leaves: tuple[Leaf, ...]

    @property
    def green_words(self) -> set[Word]:
        return {leaf.word for leaf in self.leaves if leaf.color == "green"}


def _has_suffix_in(letters: tuple[int, ...], family) -> Word | None:
    for fw in family:
        m = len(fw)
        if m <= len(letters) and letters[-m:] == tuple(fw):
            return fw if isinstance(fw, Word) else Word(fw, 3)
    return None


def _suffix_exponent_at_least(letters: tuple[int, ...], alpha: Fraction) -> Word | None:
    """A suffix of exponent >= alpha, if any (the newest disqualifier)."""
    n = len(letters)
    for p in range(1, n):
        run = 0
        i = n - 1
        while i - p >= 0 and letters[i] == letters[i - p]:
            run += 1
            i -= 1
        if (run + p) * alpha.denominator >= alpha.numerator * p:
            return Word(letters[n - run - p:], 3)
    return None


def _grow_tree(root: tuple[int, ...], children, classify, depth_limit=64) -> tuple[Leaf, ...]:
    leaves: list[Leaf] = []

    def rec(word: tuple[int, ...]):
        if len(word) > depth_limit:
            raise RuntimeError("return tree did not close; depth limit hit")
        leaf = classify(word)
        if leaf is not None:
            leaves.append(leaf)
            return
        for c in children(word):
            rec(word + (c,))

    rec(root)
    return tuple(leaves)


def _classify_z_return(word: tuple[int, ...]) -> Leaf | None:
    suffix = _suffix_exponent_at_least(word, Fraction(7, 3))
    if suffix is not None:
        e = max_exponent_factor(suffix).max_exponent
        return Leaf(Word(word, 3), "red", f"suffix {suffix.text()} has exponent {e}")
    for m in range(len(word), 1, -1):
        if word[-m:] in _TABLE1_PERMUTED:
            return Leaf(Word(word, 3), "red",
                        f"suffix {''.join(map(str, word[-m:]))} is a permuted table-1 word")
    if len(word) > 3 and word[-2:] == (0, 0):
        return Leaf(Word(word, 3), "green", "complete return to 00")
    return None


def _z_children(word: tuple[int, ...]):
    # 1 and 2 never neighbour each other in the host word, so those
    # branches are suppressed
    for c in _S3:
        if {word[-1], c} == {1, 2}:
            continue
        yield c


def _classify_y_return(word: tuple[int, ...]) -> Leaf | None:
    if len(word) > 1 and word[-1] == 2:
        return Leaf(Word(word, 3), "green", "complete return to 2")
    if word[-2:] == (0, 0):
        # a 00 here puts tau(00)00 in the outer word; confirm that word is
        # itself disqualified
        image = tau.apply_tuple(word[-2:]) + (0, 0)
        hit = any(image[-m:] in _TABLE1_PERMUTED for m in range(2, len(image) + 1))
        reason = "suffix 00: tau(00)00 contains a permuted table-1 word" if hit \
            else "suffix 00 (tau image check failed)"
        return Leaf(Word(word, 3), "red" if hit else "unconfirmed", reason)
    if Word(word, 3) in TABLE2_WORDS:
        return Leaf(Word(word, 3), "red", "table-2 word")
    return None


def _classify_x_return(word: tuple[int, ...]) -> Leaf | None:
    hit = _has_suffix_in(word, F1)
    if hit is not None:
        return Leaf(Word(word, 3), "red", f"suffix {hit.text()} is forbidden")
    if is_poor(Word(word, 3)):
        return Leaf(Word(word, 3), "yellow", "poor word")
    if len(word) > 1 and word[-1] == 0:
        return Leaf(Word(word, 3), "green", "complete return to 0")
    return None


def verify_return_tree(name: str) -> TreeReport:
    """Re-derive the leaf classification of one of the complete-return trees.

    fig2: returns to 00 (starting 001) in the 7/3-power-free rich host;
    fig3: returns to 2 in the tau-preimage; fig4: returns to 0 in the
    innermost fixed point."""
    if name == "fig2":
        leaves = _grow_tree((0, 0, 1), _z_children, _classify_z_return)
    elif name == "fig3":
        leaves = _grow_tree((2,), lambda w: _S3, _classify_y_return)
    elif name == "fig4":
        leaves = _grow_tree((0,), lambda w: _S3, _classify_x_return)
    else:
        raise ValueError(f"unknown tree {name!r}")
    return TreeReport(name, leaves)


EXPECTED_GREEN = {
    "fig2": {Word("00100"), Word("0010110100")},
    "fig3": {Word("22"), Word("212"), Word("202")},
    "fig4": {Word("010"), Word("0220"), Word("020"), Word("02220"),
             Word("01210"), Word("012210"), Word("0120"), Word("0210")},
}
