#!/usr/bin/env python3
"""Print the inner/outer stretch sequences for every seed.

    python scripts/stretch_table.py --steps 6
"""

import argparse
import sys

from richrep.morphisms import SEEDS
from richrep.repetition import format_rational
from richrep.stretch import (Workspace, find_seed_occurrence, inner_sequence,
                             outer_power_closed_form, outer_sequence)


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--steps", type=int, default=6)
    args = parser.parse_args()

    ws = Workspace()
    for seed in SEEDS:
        occ = find_seed_occurrence(ws, seed)
        inner = inner_sequence(occ, len(seed), args.steps, ws)
        outer = outer_sequence(occ, len(seed), args.steps, ws)
        print(f"seed {seed.text()} (at x-index {occ.start})")
        for n, (it, ot) in enumerate(zip(inner, outer)):
            closed = outer_power_closed_form(seed, n)
            mark = "" if closed == ot.exponent else "  <- differs from closed form"
            print(f"  n={n}: q={it.period:<6d} r={format_rational(it.exponent):>10s}   "
                  f"Q={ot.period:<8d} R={format_rational(ot.exponent):>12s}{mark}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
