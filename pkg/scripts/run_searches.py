#!/usr/bin/env python3
"""Run search presets from the command line and tabulate lengths/nodes/time.

    python scripts/run_searches.py                     # all CI presets
    python scripts/run_searches.py no_00 table2_211    # a selection
    python scripts/run_searches.py rt4_frontier --budget 5000000 --threads 4
"""

import argparse
import sys
import time

from richrep import longest_word
from richrep.expectations import EXPECTED_LENGTHS
from richrep.presets import PRESETS, preset


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("names", nargs="*", default=[])
    parser.add_argument("--budget", type=int)
    parser.add_argument("--threads", type=int, default=1)
    args = parser.parse_args()

    names = args.names or [n for n in PRESETS if n in EXPECTED_LENGTHS]
    bad = 0
    for name in names:
        config = preset(name)
        if args.budget is not None:
            from dataclasses import replace
            config = replace(config, node_budget=args.budget)
        t0 = time.perf_counter()
        result = longest_word(config, threads=args.threads)
        dt = time.perf_counter() - t0
        expected = EXPECTED_LENGTHS.get(name)
        status = ""
        if expected is not None and result.exhausted:
            status = "ok" if result.length == expected else f"MISMATCH (expected {expected})"
            bad += result.length != expected
        print(f"{name:20s} length={result.length:<6d} nodes={result.nodes:<10d} "
              f"exhausted={result.exhausted} {dt:7.2f}s  {status}")
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main())
