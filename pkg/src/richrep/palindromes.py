"""Palindrome counting and the incremental palindrome index (eertree).

The eertree keeps one node per distinct nonempty palindromic factor, so a
word of length n is rich exactly when n pushes create n nodes.  Every push
writes a journal record; pop() rewinds to a bit-identical earlier state,
which is what the backtracking searches rely on.  Instances are single-owner
mutable state.
"""

from __future__ import annotations

from .words import Word


class _Node:
    __slots__ = ("length", "link", "trans")

    def __init__(self, length: int, link: "_Node | None"):
        self.length = length
        self.link = link
        self.trans: dict[int, _Node] = {}


class Eertree:
    def __init__(self):
        self.word: list[int] = []
        root_neg = _Node(-1, None)
        root_neg.link = root_neg
        root_eps = _Node(0, root_neg)
        self._roots = (root_neg, root_eps)
        self.nodes: list[_Node] = [root_neg, root_eps]
        self.last = root_eps
        self._journal: list[tuple[_Node, _Node | None, int]] = []

    def __len__(self) -> int:
        return len(self.word)

    @property
    def palindrome_count(self) -> int:
        """Distinct palindromic factors of the indexed word, including the
        empty word."""
        return len(self.nodes) - 1

    def _surface(self, node: _Node, c: int) -> _Node:
        w = self.word
        n = len(w) - 1
        while True:
            pos = n - node.length - 1
            if pos >= 0 and w[pos] == c:
                return node
            node = node.link

    def push(self, c: int) -> bool:
        """Append letter c; report whether a new palindrome appeared."""
        self.word.append(c)
        prev_last = self.last
        parent = self._surface(self.last, c)
        node = parent.trans.get(c)
        if node is not None:
            self.last = node
            self._journal.append((prev_last, None, c))
            return False
        if parent.length == -1:
            link = self._roots[1]
        else:
            link = self._surface(parent.link, c).trans[c]
        node = _Node(parent.length + 2, link)
        parent.trans[c] = node
        self.nodes.append(node)
        self.last = node
        self._journal.append((prev_last, parent, c))
        return True

    def pop(self) -> None:
        """Undo the latest push exactly."""
        prev_last, parent, c = self._journal.pop()
        if parent is not None:
            del parent.trans[c]
            self.nodes.pop()
        self.last = prev_last
        self.word.pop()

    def snapshot(self):
        """Structural fingerprint used by the restoration tests."""
        ids = {id(n): i for i, n in enumerate(self.nodes)}
        return (
            tuple(self.word),
            tuple(
                (n.length, ids[id(n.link)], tuple(sorted((a, ids[id(t)]) for a, t in n.trans.items())))
                for n in self.nodes
            ),
            ids[id(self.last)],
        )


class RichnessChecker:
    """Incremental richness test: the indexed word stays rich as long as every
    push creates a palindrome.  rich_push rejects (and rolls back) extensions
    that would lose richness."""

    def __init__(self):
        self.tree = Eertree()

    def __len__(self) -> int:
        return len(self.tree)

    def rich_push(self, c: int) -> bool:
        if self.tree.push(c):
            return True
        self.tree.pop()
        return False

    def pop(self) -> None:
        self.tree.pop()


def count_distinct_palindromes(w: Word) -> int:
    """Number of distinct palindromic factors including the empty word."""
    tree = Eertree()
    for a in w.letters:
        tree.push(a)
    return tree.palindrome_count


def is_rich(w: Word) -> bool:
    """A length-n word is rich when it has n+1 distinct palindromic factors."""
    return count_distinct_palindromes(w) == len(w) + 1


def brute_palindrome_set(letters) -> set[tuple[int, ...]]:
    """Independent oracle: expand around every center."""
    letters = tuple(letters)
    n = len(letters)
    out: set[tuple[int, ...]] = set()
    for center in range(n):
        for left, right in ((center, center), (center, center + 1)):
            while left >= 0 and right < n and letters[left] == letters[right]:
                out.add(letters[left : right + 1])
                left -= 1
                right += 1
    return out


def has_unioccurrent_palindromic_suffix(w: Word) -> bool:
    """True iff some palindromic suffix of w occurs exactly once in w."""
    n = len(w)
    if n == 0:
        raise ValueError("empty word")
    letters = w.letters
    for length in range(n, 0, -1):
        suf = letters[n - length :]
        if suf != suf[::-1]:
            continue
        count = sum(1 for i in range(n - length + 1) if letters[i : i + length] == suf)
        if count == 1:
            return True
    return False


def _palindromic_prefix_lengths(letters: tuple[int, ...]):
    for plen in range(len(letters) + 1):
        pre = letters[:plen]
        if pre == pre[::-1]:
            yield plen


def is_poor(w: Word) -> bool:
    """Every palindromic prefix with an even number of 2's (the empty word
    included) must occur again, preceded by an even number of 2's."""
    if w.alphabet_size != 3:
        raise ValueError("poorness is defined over the 3-letter alphabet")
    letters = w.letters
    n = len(letters)
    twos = [0]
    for a in letters:
        twos.append(twos[-1] + (a == 2))
    for plen in _palindromic_prefix_lengths(letters):
        if twos[plen] % 2 != 0:
            continue
        pre = letters[:plen]
        if not any(
            letters[i : i + plen] == pre and twos[i] % 2 == 0
            for i in range(1, n - plen + 1)
        ):
            return False
    return True


def is_middle_class(w: Word) -> bool:
    """Starts with 2, and every odd-length palindromic prefix occurs again
    starting at an even index."""
    if w.alphabet_size != 3:
        raise ValueError("middle-class is defined over the 3-letter alphabet")
    letters = w.letters
    n = len(letters)
    if n == 0 or letters[0] != 2:
        return False
    for plen in _palindromic_prefix_lengths(letters):
        if plen % 2 == 0:
            continue
        pre = letters[:plen]
        if not any(letters[i : i + plen] == pre for i in range(2, n - plen + 1, 2)):
            return False
    return True


def has_poor_factor(letters, max_len: int | None = None) -> bool:
    """Does any factor (of bounded length when max_len is set) come out poor?"""
    letters = tuple(letters)
    n = len(letters)
    bound = n if max_len is None else min(n, max_len)
    for length in range(1, bound + 1):
        for i in range(n - length + 1):
            if is_poor(Word(letters[i : i + length], 3)):
                return True
    return False
