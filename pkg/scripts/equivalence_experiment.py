#!/usr/bin/env python3
"""Randomized agreement experiment between the two total-stability deciders.

For every orientation of the small diagrams and a sampled set of
orientations of the large ones, draws random weight pairs and requires the
border-criterion decider and the brute-force subrepresentation decider to
agree on every single trial.  Writes one JSON report per diagram family.
"""
import argparse
import sys

from arstab.cli import main as cli_main


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--trials", type=int, default=1000)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--out-prefix", default="equivalence")
    parser.add_argument(
        "--quick", action="store_true", help="small diagrams and 100 trials only"
    )
    args = parser.parse_args()

    jobs = [
        ("A", "5", True),
        ("D", "5", True),
        ("E", "6", True),
    ]
    if not args.quick:
        jobs += [("D", "8", False), ("E", "8", False)]
    trials = 100 if args.quick else args.trials

    worst = 0
    for family, max_rank, everything in jobs:
        argv = [
            "equiv-test",
            "--type",
            family,
            "--max-rank",
            max_rank,
            "--trials",
            str(trials),
            "--seed",
            str(args.seed),
            "--format",
            "json",
            "--out",
            f"{args.out_prefix}_{family}{max_rank}.json",
        ]
        if everything:
            argv.append("--all-orientations")
        else:
            argv += ["--sample-cap", "16"]
        code = cli_main(argv)
        print(f"type {family} up to rank {max_rank}: exit {code}")
        worst = max(worst, code)
    return worst


if __name__ == "__main__":
    sys.exit(main())
