"""Morphisms, the two-state alternating transducer, and the generated words.

The toolkit's central objects: the morphisms f and g, the transducer tau
(block maps t1/t2 of lengths 3, 8, 16), and the words x = f^w(0), y = g(x),
z = tau(y).  Also the auxiliary maps fhat, phi, psi used by the small
backtracking searches, the forbidden factor families F1..F4, and the
length recurrence a(n) = 2a(n-1) + a(n-3) for |tau(g(f^n(0)))|.

All constants are immutable; generation functions are pure.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .words import Occurrence, Word, parikh


@dataclass(frozen=True)
class Morphism:
    """Letter-to-word map h with h(uv) = h(u)h(v)."""

    images: tuple[tuple[int, ...], ...]
    source_size: int
    target_size: int

    @classmethod
    def from_texts(cls, *images: str, target_size: int | None = None) -> "Morphism":
        tups = tuple(tuple(int(c) for c in img) for img in images)
        if target_size is None:
            target_size = max((max(t) + 1 for t in tups if t), default=1)
        return cls(tups, len(tups), target_size)

    def __call__(self, w) -> Word:
        return self.apply(w)

    def apply(self, w) -> Word:
        letters = w.letters if isinstance(w, Word) else tuple(w)
        return Word(self.apply_tuple(letters), self.target_size)

    def apply_tuple(self, letters) -> tuple[int, ...]:
        out: list[int] = []
        images = self.images
        for a in letters:
            if not 0 <= a < self.source_size:
                raise ValueError(f"letter {a} outside source alphabet")
            out.extend(images[a])
        return tuple(out)

    def is_non_erasing(self) -> bool:
        return all(self.images)

    def image_length(self, a: int) -> int:
        return len(self.images[a])

    def is_prolongable_on(self, a: int) -> bool:
        img = self.images[a]
        return len(img) >= 2 and img[0] == a

    def as_text(self) -> str:
        return "\n".join(
            f"{a} -> {''.join(str(b) for b in img)}" for a, img in enumerate(self.images)
        )


def parse_morphism_text(text: str) -> Morphism:
    """Parse lines "a -> image" with digit letters; '#' starts a comment."""
    images: dict[int, tuple[int, ...]] = {}
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        left, _, right = line.partition("->")
        a, img = left.strip(), right.strip()
        if not a.isdigit() or not img.isdigit() or len(a) != 1:
            raise ValueError(f"bad morphism line: {raw!r}")
        if int(a) in images:
            raise ValueError(f"duplicate image for letter {a}")
        images[int(a)] = tuple(int(c) for c in img)
    if sorted(images) != list(range(len(images))):
        raise ValueError("morphism must define images for letters 0..k-1")
    tups = tuple(images[a] for a in range(len(images)))
    target = max((max(t) + 1 for t in tups if t), default=1)
    return Morphism(tups, len(tups), target)


@dataclass(frozen=True)
class Transducer:
    """Two-state alternating transducer: block map even_map on letters at even
    input index, odd_map at odd index (shifted by start_parity).  Both maps
    must give equal block lengths so image lengths are parity-independent."""

    even_map: Morphism
    odd_map: Morphism
    start_parity: int = 0

    def __post_init__(self):
        for a in range(self.even_map.source_size):
            if self.even_map.image_length(a) != self.odd_map.image_length(a):
                raise ValueError("even/odd block lengths must agree per letter")

    def block(self, a: int, index: int) -> tuple[int, ...]:
        m = self.even_map if (index + self.start_parity) % 2 == 0 else self.odd_map
        return m.images[a]

    def block_length(self, a: int) -> int:
        return self.even_map.image_length(a)

    def __call__(self, w, start_parity: int | None = None) -> Word:
        return self.apply(w, start_parity)

    def apply(self, w, start_parity: int | None = None) -> Word:
        letters = w.letters if isinstance(w, Word) else tuple(w)
        return Word(self.apply_tuple(letters, start_parity), self.even_map.target_size)

    def apply_tuple(self, letters, start_parity: int | None = None) -> tuple[int, ...]:
        parity = self.start_parity if start_parity is None else start_parity
        out: list[int] = []
        for i, a in enumerate(letters):
            m = self.even_map if (i + parity) % 2 == 0 else self.odd_map
            out.extend(m.images[a])
        return tuple(out)


def transduce(t: Transducer, w, start_parity: int | None = None) -> Word:
    return t.apply(w, start_parity)


# ---------------------------------------------------------------------------
# named constants

f = Morphism.from_texts("01", "022", "02")
g = Morphism.from_texts("20", "21", "2")

t1 = Morphism.from_texts("001", "00101101", "0010110100101101", target_size=3)
t2 = Morphism.from_texts("002", "00202202", "0020220200202202", target_size=3)
tau = Transducer(t1, t2, start_parity=0)
taubar = Transducer(t1, t2, start_parity=1)

A1 = Word("001")
B1 = Word("00101101")
A2 = Word("002")
B2 = Word("00202202")

fhat = Morphism.from_texts("01", "022", "02", "0222", "0121", "01221", "012", "021")
phi = Morphism.from_texts("76", "760", "756", "7560", target_size=8)
psi = Morphism.from_texts("03", "033", "0333", "01", target_size=4)


def _power(base: str, length: int) -> Word:
    return Word(tuple(int(base[i % len(base)]) for i in range(length)), 3)


F1 = (
    Word("00"), Word("11"), Word("212"), Word("0101"), Word("1010"),
    Word("2222"), Word("1222"), Word("2221"), Word("022022"), Word("220220"),
)
F2 = (
    Word("202202"), Word("1022021"), Word("1202201"),
    Word("1" + "20102" * 2 + "1"),
    _power("021012", 13), _power("012021", 13),
    _power("21012010", 21), _power("21012210120", 27), _power("2101221012010", 31),
)
F3 = (
    Word("2") + _power("2101", 17) + Word("2"),
    _power("2101210122101", 31),
)
F4 = (
    _power("0222", 17) + Word("1"),
    _power("22010", 12),
    _power("022201", 29),
    _power("0222010222", 24),
    _power("0222022201", 24),
    _power("0222010222010222022201", 55),
)
FORBIDDEN_FAMILIES = {"F1": F1, "F2": F2, "F3": F3, "F4": F4}

F_PHI = tuple(Word(s, 4) for s in ("00", "11", "22", "33", "01", "20", "31"))
F_PRIME = tuple(Word(s, 8) for s in ("55", "444", "5445"))
F_PSI = tuple(Word(s, 4) for s in ("11", "000", "1001"))

# stretch seeds: the repeated words whose outer stretch sequences carry every
# repetition of exponent above 9/4 in z
SEEDS = tuple(Word(s) for s in
              ("0", "1", "22", "202", "1022", "0220", "2201", "10202", "02020", "20201"))

MORPHISMS = {"f": f, "g": g, "fhat": fhat, "phi": phi, "psi": psi, "t1": t1, "t2": t2}
TRANSDUCERS = {"tau": tau, "taubar": taubar}


# ---------------------------------------------------------------------------
# generation

def fixed_point_prefix(m: Morphism, a: int, length: int) -> Word:
    """First `length` letters of m^w(a); requires m prolongable on a."""
    if length < 0:
        raise ValueError("length must be >= 0")
    if not m.is_prolongable_on(a):
        raise ValueError(f"morphism is not prolongable on {a}")
    letters: tuple[int, ...] = (a,)
    while len(letters) < length:
        letters = m.apply_tuple(letters)
    return Word(letters[:length], m.target_size)


def x_prefix(length: int) -> Word:
    """Prefix of x = f^w(0)."""
    return fixed_point_prefix(f, 0, length)


def y_prefix(length: int) -> Word:
    """Prefix of y = g(x).  |g(a)| >= 1, so an x-prefix of the same length
    is enough."""
    x = x_prefix(length) if length else Word((), 3)
    return g(x)[:length]


def z_prefix(length: int) -> Word:
    """Prefix of z = tau(g(x)).  Every x letter contributes at least 16
    z letters (the leading tau-block of g comes from letter 2), so a short
    x-prefix overshoots cheaply and is truncated."""
    if length == 0:
        return Word((), 3)
    x = x_prefix(length // 16 + 2)
    return tau(g(x))[:length]


GENERATED_WORDS = {"x": x_prefix, "y": y_prefix, "z": z_prefix}


def tilde_tau(occ: Occurrence, y: Word) -> Occurrence:
    """Map an occurrence y[i..j] to its image occurrence in z = tau(y).

    The image starts at |tau(y[0..i-1])| and has the parity-selected blocks;
    block lengths are parity-independent, so plain cumulative sums work."""
    if occ.end >= len(y):
        raise ValueError("occurrence extends beyond the generated prefix")
    start = sum(tau.block_length(a) for a in y.letters[: occ.start])
    size = sum(tau.block_length(a) for a in y.letters[occ.start : occ.end + 1])
    image = tau.apply(y, start_parity=0)
    return Occurrence(image, start, start + size - 1)


# ---------------------------------------------------------------------------
# incidence matrices and the length recurrence

def incidence_matrix(m: Morphism) -> tuple[tuple[int, ...], ...]:
    """Row i, column a = number of occurrences of letter i in m(a)."""
    k = m.target_size
    cols = [parikh(Word(img, k)).counts for img in m.images]
    return tuple(tuple(cols[a][i] for a in range(m.source_size)) for i in range(k))


def mat_mul(A, B):
    return tuple(
        tuple(sum(A[i][t] * B[t][j] for t in range(len(B))) for j in range(len(B[0])))
        for i in range(len(A))
    )


def mat_pow(A, n: int):
    size = len(A)
    R = tuple(tuple(int(i == j) for j in range(size)) for i in range(size))
    P = A
    while n:
        if n & 1:
            R = mat_mul(R, P)
        P = mat_mul(P, P)
        n >>= 1
    return R


def char_poly(A) -> tuple[int, ...]:
    """Characteristic polynomial det(xI - A), coefficients from x^k down to 1,
    computed exactly (Faddeev-LeVerrier over rationals)."""
    k = len(A)
    M = tuple(tuple(Fraction(x) for x in row) for row in A)
    coeffs = [Fraction(1)]
    B = tuple(tuple(Fraction(0) for _ in range(k)) for _ in range(k))
    for m in range(1, k + 1):
        B = mat_mul(M, B)
        B = tuple(
            tuple(B[i][j] + (coeffs[m - 1] if i == j else 0) for j in range(k))
            for i in range(k)
        )
        AB = mat_mul(M, B)
        c = -sum(AB[i][i] for i in range(k)) / m
        coeffs.append(c)
    out = []
    for c in coeffs:
        if c.denominator != 1:
            raise ArithmeticError("characteristic polynomial must be integral")
        out.append(int(c))
    return tuple(out)


# |tau(g(a))| = 3*|g(a)|_0 + 8*|g(a)|_1 + 16*|g(a)|_2
TAU_WEIGHTS = (3, 8, 16)

IMAGE_LENGTH_INITIAL = (19, 43, 94)


def image_length(n: int) -> int:
    """a(n) = |tau(g(f^n(0)))| via a(n) = 2a(n-1) + a(n-3); arbitrary width."""
    if n < 0:
        raise ValueError("n must be >= 0")
    vals = list(IMAGE_LENGTH_INITIAL)
    if n < 3:
        return vals[n]
    for _ in range(3, n + 1):
        vals.append(2 * vals[-1] + vals[-3])
    return vals[n]


def image_length_by_matrix(n: int) -> int:
    """a(n) = (3, 8, 16) . M_g . M_f^n . e0, the linear-algebra route."""
    Mf = incidence_matrix(f)
    Mg = incidence_matrix(g)
    col = mat_mul(mat_mul(Mg, mat_pow(Mf, n)), ((1,), (0,), (0,)))
    return sum(w * col[i][0] for i, w in enumerate(TAU_WEIGHTS))


def image_length_by_generation(n: int) -> int:
    """a(n) = |tau(g(f^n(0)))| by actually generating the word."""
    w: tuple[int, ...] = (0,)
    for _ in range(n):
        w = f.apply_tuple(w)
    return sum(tau.block_length(a) for a in g.apply_tuple(w))
