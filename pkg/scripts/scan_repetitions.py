#!/usr/bin/env python3
"""Scan a long generated prefix for high-exponent repetitions.

    python scripts/scan_repetitions.py --length 100000 --threshold 9/4 --period 500
"""

import argparse
import sys

from richrep.repetition import format_rational, parse_rational
from richrep.stretch import scan_prefix_repetitions


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--length", type=int, default=100_000)
    parser.add_argument("--threshold", default="9/4+",
                        help="report exponents >= bound, or > bound with a trailing +")
    parser.add_argument("--period", type=int, default=500)
    parser.add_argument("--top", type=int, default=20)
    args = parser.parse_args()

    threshold, strict = parse_rational(args.threshold)
    hits = scan_prefix_repetitions(args.length, threshold, strict=strict,
                                   max_period=args.period)
    print(f"{len(hits)} repetitions above {args.threshold} with period <= {args.period}")
    for rep in hits[: args.top]:
        occ = rep.witness
        print(f"  exponent {format_rational(rep.max_exponent):>10s}  period {rep.period:<5d} "
              f"at [{occ.start}, {occ.end}]")
    return 0


if __name__ == "__main__":
    sys.exit(main())
