"""Reference values the toolkit is expected to reproduce.

Kept as one versioned table so a verification run can diagnose mismatches
field by field and exit nonzero on any disagreement.
"""

from __future__ import annotations

EXPECTATIONS_VERSION = 1

# longest-word lengths per search preset
EXPECTED_LENGTHS: dict[str, int] = {
    "table1_102": 152,
    "table1_0011": 498,
    "table1_00100200": 502,
    "table2_201": 141,
    "table2_210": 144,
    "table2_211": 101,
    "no_start_factors": 388,
    "no_00": 57,
    "y_binary": 18,
    "onetwo_f1": 4,
    "sigma4_phi": 8,
    "fourfive_fprime": 11,
    "sigma2_psi": 11,
}

# extended-run target, reproducible only with hours of compute; excluded
# from default verification
EXTENDED_LENGTHS: dict[str, int] = {
    "rt4_frontier": 46628,
}

CI_PRESETS = tuple(EXPECTED_LENGTHS)

# |tau(g(f^n(0)))| for small n
IMAGE_LENGTHS = (19, 43, 94, 207, 457, 1008, 2223, 4903, 10814, 23851, 52605, 116024, 255899)

# det(xI - M_f), highest coefficient first
CHAR_POLY_MF = (1, -2, 0, -1)
# the variant transcribed in one place of the source analysis; inconsistent
# with both the recurrence and the determinant
CHAR_POLY_MF_MISPRINT = (1, 0, -2, -1)

# outer powers R_n for seed 0, as (numerator, denominator)
OUTER_POWERS_SEED0 = {
    0: (41, 19),
    1: (96, 43),     # closed form and direct measurement agree on 96/43
    2: (210, 94),
    3: (467, 207),
    4: (1030, 457),
}
# the alternative transcription of R_1 in circulation; kept so certificates
# can report it against the measured value
OUTER_POWER_R1_ALTERNATIVE = (94, 43)

CE_LIMIT = 2.25876324
CE_LIMIT_TOLERANCE = 1e-8
MU1 = 2.20557
MU1_TOLERANCE = 1e-5
KAPPA1 = 19.31167
KAPPA1_TOLERANCE = 1e-5

# factor complexity: C_z(n) = 4n + 2 for n >= 4, with the listed initial
# values; C_x(n) = C_y(n) = 2n + 1
CZ_INITIAL = (1, 3, 7, 12)


def c_z(n: int) -> int:
    return CZ_INITIAL[n] if n < 4 else 4 * n + 2


def c_xy(n: int) -> int:
    return 2 * n + 1


def p_z(n: int) -> int:
    if n == 0:
        return 1
    if n in (1, 2):
        return 3
    if n == 3 or n % 2 == 0:
        return 4
    return 2


RIGHT_SPECIAL_Z_COUNT = 4
RIGHT_SPECIAL_Z_EXTENSIONS = 2

# scan thresholds for the generated prefix
SCAN_PREFIX_LENGTH = 100_000
SMALL_PERIOD_BOUND = 136
EXPECTED_MAX_SCAN_EXPONENT = (467, 207)

EXPECTED_GREEN_LEAVES = {
    "fig2": ("00100", "0010110100"),
    "fig3": ("22", "202", "212"),
    "fig4": ("010", "0120", "0210", "020", "0220", "01210", "012210", "02220"),
}
