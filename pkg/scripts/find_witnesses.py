#!/usr/bin/env python3
"""Search for totally stable integer weights across orientation sweeps.

Runs the exact-LP witness search for every orientation of the requested
families and prints the primitive integer weight found for each, verified
against both deciders.
"""
import argparse
import sys

from arstab.cli import main as cli_main


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--type", choices=["A", "D", "E"], default="D")
    parser.add_argument("--max-rank", type=int, default=6)
    parser.add_argument("--format", choices=["text", "json"], default="text")
    parser.add_argument("--out")
    args = parser.parse_args()
    argv = [
        "find-theta",
        "--type",
        args.type,
        "--max-rank",
        str(args.max_rank),
        "--all-orientations",
        "--format",
        args.format,
    ]
    if args.out:
        argv += ["--out", args.out]
    return cli_main(argv)


if __name__ == "__main__":
    sys.exit(main())
