#!/usr/bin/env python3
"""Regenerate the indecomposable / border-inequality count table.

Sweeps every orientation of A_n (n <= 8), D_n (n <= 8), and E6/E7/E8 and
prints one row per diagram with the knitted counts, which must match the
closed forms n(n+1)/2, n(n-1), 36/63/120 and n-1, 3(n-2), 15/24/42.
"""
import argparse
import sys

from arstab.cli import main as cli_main


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--max-rank", type=int, default=8)
    parser.add_argument("--format", choices=["text", "json"], default="text")
    args = parser.parse_args()
    worst = 0
    families = ["A"]
    if args.max_rank >= 4:
        families.append("D")
    if args.max_rank >= 6:
        families.append("E")
    for family in families:
        code = cli_main(
            [
                "counts",
                "--type",
                family,
                "--max-rank",
                str(args.max_rank),
                "--all-orientations",
                "--format",
                args.format,
            ]
        )
        worst = max(worst, code)
    return worst


if __name__ == "__main__":
    sys.exit(main())
