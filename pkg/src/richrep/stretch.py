"""Periodic stretching in the generated words and the critical exponent.

An occurrence with period q is stretched by extending it letterwise in both
directions while the period survives; unstretchable occurrences seed the
inner sequences (in the innermost fixed point x) and outer sequences (their
images in z).  The exponents of the outer terms approach the critical
exponent 1 + 1/(3 - mu1), mu1 the real root of x^3 - 2x^2 - 1.

Exact rationals throughout; comparisons against the irrational limit go
through a rational interval enclosure of mu1, never floats.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .morphisms import (IMAGE_LENGTH_INITIAL, SEEDS, f, g, image_length, tau,
                        x_prefix, z_prefix)
from .repetition import RepetitionReport, periodic_hits
from .words import Occurrence, Word


class BoundaryError(RuntimeError):
    """A stretch ran past the generated prefix; regenerate with more margin."""


def left_stretch(occ: Occurrence, q: int) -> Word:
    """Maximal lambda with lambda.occ still q-periodic, read in occ.source."""
    host = occ.source.letters
    _require_period(host, occ, q)
    i = occ.start
    while i - 1 >= 0 and host[i - 1] == host[i - 1 + q]:
        i -= 1
    if i == 0:
        raise BoundaryError("left stretch reached the start of the host")
    return Word(host[i : occ.start], occ.source.alphabet_size)


def right_stretch(occ: Occurrence, q: int) -> Word:
    host = occ.source.letters
    _require_period(host, occ, q)
    j = occ.end
    while j + 1 < len(host) and host[j + 1] == host[j + 1 - q]:
        j += 1
    if j == len(host) - 1:
        raise BoundaryError("right stretch reached the end of the host")
    return Word(host[occ.end + 1 : j + 1], occ.source.alphabet_size)


def _require_period(host, occ: Occurrence, q: int) -> None:
    for i in range(occ.start, occ.end + 1 - q):
        if host[i] != host[i + q]:
            raise ValueError(f"occurrence lacks period {q}")


def is_unstretchable(occ: Occurrence, q: int) -> bool:
    """Both one-letter extensions must break period q."""
    host = occ.source.letters
    _require_period(host, occ, q)
    if occ.start == 0 or occ.end == len(host) - 1:
        raise BoundaryError("cannot decide unstretchability at the host boundary")
    return host[occ.start - 1] != host[occ.start - 1 + q] and \
        host[occ.end + 1] != host[occ.end + 1 - q]


def stretched(occ: Occurrence, q: int) -> Occurrence:
    lam = left_stretch(occ, q)
    rho = right_stretch(occ, q)
    return Occurrence(occ.source, occ.start - len(lam), occ.end + len(rho))


@dataclass(frozen=True)
class StretchItem:
    """One term of a stretch sequence: the stretched occurrence, its period,
    exponent, and the stretch words applied at this step."""

    occurrence: Occurrence
    period: int
    exponent: Fraction
    lam: Word
    rho: Word

    @property
    def word(self) -> Word:
        return self.occurrence.word

    @property
    def period_word(self) -> Word:
        occ = self.occurrence
        return occ.source[occ.start : occ.start + self.period]


class Workspace:
    """Generated prefixes of x, y = g(x), z = tau(y) with the cumulative
    image-length maps between them."""

    def __init__(self, x_length: int = 4096):
        self.resize(x_length)

    def resize(self, x_length: int) -> None:
        self.x = x_prefix(x_length)
        self.y = g(self.x)
        self.z = tau(self.y)
        xl = self.x.letters
        self.f_cum = _cumsum(len(f.images[a]) for a in xl)
        self.g_cum = _cumsum(len(g.images[a]) for a in xl)
        self.t_cum = _cumsum(tau.block_length(a) for a in self.y.letters)

    def grow(self) -> None:
        self.resize(2 * len(self.x))

    def f_image(self, occ: Occurrence) -> Occurrence:
        """Occurrence of f(w) in x for an occurrence of w in x."""
        return Occurrence(self.x, self.f_cum[occ.start], self.f_cum[occ.end + 1] - 1)

    def z_image(self, occ: Occurrence) -> Occurrence:
        """Occurrence of the parity-aligned tau(g(w)) image in z."""
        yi, yj = self.g_cum[occ.start], self.g_cum[occ.end + 1] - 1
        return Occurrence(self.z, self.t_cum[yi], self.t_cum[yj + 1] - 1)

    def f_period(self, occ: Occurrence, q: int) -> int:
        return self.f_cum[occ.start + q] - self.f_cum[occ.start]

    def z_period(self, occ: Occurrence, q: int) -> int:
        yi = self.g_cum[occ.start]
        yq = self.g_cum[occ.start + q] - yi
        return self.t_cum[yi + yq] - self.t_cum[yi]


def _cumsum(lengths) -> tuple[int, ...]:
    out = [0]
    for L in lengths:
        out.append(out[-1] + L)
    return tuple(out)


def _with_retries(build, workspace: Workspace, max_doublings: int = 8):
    for _ in range(max_doublings):
        try:
            return build(workspace)
        except (BoundaryError, IndexError):
            workspace.grow()
    raise BoundaryError("prefix kept hitting the boundary; giving up")


def find_seed_occurrence(ws: Workspace, w: Word, min_start: int = 1) -> Occurrence:
    """First occurrence of w in x, at position >= min_start, that is
    unstretchable with respect to |w|."""
    target = w.letters
    host = ws.x.letters
    m = len(target)
    for i in range(min_start, len(host) - m - 1):
        if host[i : i + m] == target:
            occ = Occurrence(ws.x, i, i + m - 1)
            if is_unstretchable(occ, m):
                return occ
    raise BoundaryError(f"no unstretchable occurrence of {w.text()} found; enlarge prefix")


def inner_sequence(seed: Occurrence, q: int, steps: int, workspace: Workspace | None = None) -> list[StretchItem]:
    """Terms 0..steps of the inner stretch sequence of (seed, q) in x."""
    ws = workspace or Workspace()

    def build(ws: Workspace) -> list[StretchItem]:
        occ = Occurrence(ws.x, seed.start, seed.end)
        if not is_unstretchable(occ, q):
            raise ValueError("seed occurrence must be unstretchable")
        items = [StretchItem(occ, q, Fraction(len(occ), q), Word((), 3), Word((), 3))]
        cur, cur_q = occ, q
        for _ in range(steps):
            new_q = ws.f_period(cur, cur_q)
            img = ws.f_image(cur)
            lam = left_stretch(img, new_q)
            rho = right_stretch(img, new_q)
            cur = Occurrence(ws.x, img.start - len(lam), img.end + len(rho))
            cur_q = new_q
            items.append(StretchItem(cur, cur_q, Fraction(len(cur), cur_q), lam, rho))
        return items

    return _with_retries(build, ws)


def outer_sequence(seed: Occurrence, q: int, steps: int, workspace: Workspace | None = None) -> list[StretchItem]:
    """Terms 0..steps of the outer stretch sequence: image of each inner term
    in z, stretched maximally there."""
    ws = workspace or Workspace()

    def build(ws: Workspace) -> list[StretchItem]:
        inner = inner_sequence(seed, q, steps, ws)
        out = []
        for item in inner:
            img = ws.z_image(item.occurrence)
            big_q = ws.z_period(item.occurrence, item.period)
            lam = left_stretch(img, big_q)
            rho = right_stretch(img, big_q)
            occ = Occurrence(ws.z, img.start - len(lam), img.end + len(rho))
            out.append(StretchItem(occ, big_q, Fraction(len(occ), big_q), lam, rho))
        return out

    return _with_retries(build, ws)


def seed_outer_powers(w: Word, steps: int, workspace: Workspace | None = None) -> list[Fraction]:
    """Outer power sequence R_0..R_steps of (w, |w|), measured directly in z."""
    ws = workspace or Workspace()

    def build(ws: Workspace) -> list[Fraction]:
        seed = find_seed_occurrence(ws, w)
        return [item.exponent for item in outer_sequence(seed, len(w), steps, ws)]

    return _with_retries(build, ws)


# ---------------------------------------------------------------------------
# closed forms and the limit

def seed_image_length(w: Word, n: int) -> int:
    """|tau(g(f^n(w)))| via Parikh vectors and integer matrix powers, so it
    stays cheap for n in the hundreds."""
    from .morphisms import TAU_WEIGHTS, incidence_matrix, mat_mul, mat_pow
    from .words import parikh

    col = tuple((c,) for c in parikh(w).counts)
    vec = mat_mul(mat_mul(incidence_matrix(g), mat_pow(incidence_matrix(f), n)), col)
    return sum(wt * vec[i][0] for i, wt in enumerate(TAU_WEIGHTS))


def outer_power_closed_form(w: Word, n: int) -> Fraction:
    """R_n(w) by the summation formula: 1 + (sum of even- or odd-indexed
    image lengths + 3 or 10) / |tau(g(f^n(w)))|."""
    if w not in SEEDS:
        raise ValueError(f"{w.text()} is not a stretch seed")
    if n < 0:
        raise ValueError("n must be >= 0")
    denom = seed_image_length(w, n)
    if n % 2 == 0:
        num = sum(image_length(2 * k) for k in range(n // 2 + 1)) + 3
    else:
        num = sum(image_length(2 * k + 1) for k in range(n // 2 + 1)) + 10
    return 1 + Fraction(num, denom)


@dataclass(frozen=True)
class SpectralData:
    """Roots of x^3 - 2x^2 - 1 and coefficients kappa_i reproducing the
    image-length sequence a(n) = sum kappa_i mu_i^n."""

    mu1: float
    mu2: complex
    mu3: complex
    kappa1: float
    kappa2: complex
    kappa3: complex
    mu1_enclosure: tuple[Fraction, Fraction]

    def residual(self, x) -> complex:
        return x ** 3 - 2 * x ** 2 - 1


def _char_value(x: Fraction) -> Fraction:
    return x * x * x - 2 * x * x - 1


def mu1_enclosure(width: Fraction = Fraction(1, 10 ** 12)) -> tuple[Fraction, Fraction]:
    """Rational interval [lo, hi] containing the real root of x^3 - 2x^2 - 1,
    by exact bisection."""
    lo, hi = Fraction(2), Fraction(3)
    assert _char_value(lo) < 0 < _char_value(hi)
    while hi - lo > width:
        mid = (lo + hi) / 2
        if _char_value(mid) < 0:
            lo = mid
        else:
            hi = mid
    return lo, hi


def spectral_data() -> SpectralData:
    lo, hi = mu1_enclosure()
    mu1 = float((lo + hi) / 2)
    # deflate: x^3 - 2x^2 - 1 = (x - mu1)(x^2 + bx + c)
    b = mu1 - 2.0
    c = 1.0 / mu1
    disc = complex(b * b - 4 * c)
    mu2 = (-b + disc ** 0.5) / 2
    mu3 = (-b - disc ** 0.5) / 2
    a0, a1, a2 = IMAGE_LENGTH_INITIAL
    V = np.array([[1, 1, 1], [mu1, mu2, mu3], [mu1 ** 2, mu2 ** 2, mu3 ** 2]], dtype=complex)
    kappa = np.linalg.solve(V, np.array([a0, a1, a2], dtype=complex))
    if mu2.imag < 0:
        mu2, mu3 = mu3, mu2
        kappa = kappa[[0, 2, 1]]
    return SpectralData(mu1, mu2, mu3, kappa[0].real, complex(kappa[1]), complex(kappa[2]), (lo, hi))


def ce_limit() -> tuple[float, SpectralData]:
    """The critical exponent 1 + 1/(3 - mu1) with the spectral data."""
    data = spectral_data()
    return 1 + 1 / (3 - data.mu1), data


def ce_limit_enclosure() -> tuple[Fraction, Fraction]:
    """Rational interval containing 1 + 1/(3 - mu1)."""
    lo, hi = mu1_enclosure()
    return 1 + 1 / (3 - lo), 1 + 1 / (3 - hi)


@dataclass(frozen=True)
class BoundReport:
    n_max: int
    all_bounded: bool
    even_increasing: bool
    failures: tuple[int, ...]


def verify_bound(n_max: int) -> BoundReport:
    """R_n(0) stays strictly below the limit for all n <= n_max (exact
    rationals against a rational enclosure of the limit), and the
    even-indexed subsequence increases.

    Large terms approach the limit within far less than 1e-12, so the
    enclosure is refined until each comparison is decidable; equality with
    the irrational limit is never asserted."""
    seed = Word("0")
    failures = []
    prev_even = None
    even_increasing = True
    lo, hi = mu1_enclosure()
    for n in range(n_max + 1):
        r = outer_power_closed_form(seed, n)
        while not (r < 1 + 1 / (3 - lo) or r > 1 + 1 / (3 - hi)):
            mid = (lo + hi) / 2
            if _char_value(mid) < 0:
                lo = mid
            else:
                hi = mid
        if r > 1 + 1 / (3 - hi):
            failures.append(n)
        if n % 2 == 0:
            if prev_even is not None and r <= prev_even:
                even_increasing = False
            prev_even = r
    return BoundReport(n_max, not failures, even_increasing, tuple(failures))


# ---------------------------------------------------------------------------
# repetition scan over the generated prefix

def scan_prefix_repetitions(length: int, threshold: Fraction, strict: bool = True,
                            max_period: int = 500, word: Word | None = None) -> list[RepetitionReport]:
    """Maximal repetitions with period <= max_period in z_prefix(length)
    whose exponent exceeds the threshold (>= when strict=False), sorted by
    exponent (descending), then position."""
    host = word if word is not None else z_prefix(length)
    reports = [
        RepetitionReport(Fraction(e - s + 1, p), Occurrence(host, s, e), p)
        for p, s, e in periodic_hits(host.letters, threshold, strict, max_period)
    ]
    reports.sort(key=lambda r: (-r.max_exponent, r.witness.start, r.period))
    return reports
