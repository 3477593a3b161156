"""Command-line surface: reproducible experiments and machine-readable reports.

Subcommands: roots, ar, border, check, equiv-test, find-theta, lemma-suite,
counts.  Exit codes: 0 success, 1 usage error, 2 property violation (a
decider disagreement or a failed lemma check).
"""
from __future__ import annotations

import argparse
import json
import random
import sys
from dataclasses import dataclass
from fractions import Fraction

from . import lp
from .arquiver import (
    Realizer,
    export,
    identify_ladder,
    knit,
    ladder_kernel_check,
    triple_mesh_cokernel_check,
)
from .dynkin import DynkinQuiver, DynkinType, QuiverSpecError, all_orientations, build_quiver, positive_roots
from .reps import FieldTransferError, _derive_seed
from .stability import (
    StabilityWeights,
    SubrepOracle,
    equivalence_trials,
    is_totally_stable_border,
    is_totally_stable_bruteforce,
    slope,
)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VIOLATION = 2

DEFAULT_SAMPLE_CAP = 256


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse would sys.exit(2); we want exit 1
        raise UsageError(message)


@dataclass
class RunConfig:
    command: str
    quivers: list[str]
    dtype: str | None = None
    max_rank: int | None = None
    all_orients: bool = False
    sample_cap: int = DEFAULT_SAMPLE_CAP
    theta: str | None = None
    w: str | None = None
    method: str = "both"
    trials: int = 100
    seed: int = 0
    format: str = "text"
    out: str | None = None
    prime: int = 5


def _add_common(sub, *, sweep=False, weights=False, trials=False):
    sub.add_argument("specs", nargs="*", metavar="QUIVER", help="quiver specs like D5/++-+")
    sub.add_argument("--quiver", action="append", default=[], help="additional quiver spec")
    if sweep:
        sub.add_argument("--type", dest="dtype", choices=["A", "D", "E"], help="family sweep")
        sub.add_argument("--max-rank", type=int, help="largest rank in the sweep")
        sub.add_argument("--all-orientations", action="store_true", dest="all_orients")
        sub.add_argument("--sample-cap", type=int, default=DEFAULT_SAMPLE_CAP,
                         help="max orientations per diagram when not sweeping all")
    if weights:
        sub.add_argument("--theta", help="numerator weight, comma-separated rationals")
        sub.add_argument("--w", help="denominator weight, comma-separated positive rationals")
    if trials:
        sub.add_argument("--trials", type=int, default=100)
    sub.add_argument("--seed", type=int, default=0)
    sub.add_argument("--prime", type=int, default=5, help="mono-oracle sweep field")
    sub.add_argument("--format", choices=["text", "json"], default="text")
    sub.add_argument("--out", help="write the report to this path instead of stdout")


def build_parser() -> _Parser:
    parser = _Parser(prog="arstab", description=__doc__)
    subs = parser.add_subparsers(dest="command", required=True)

    _add_common(subs.add_parser("roots", help="positive roots of a quiver"))
    ar = subs.add_parser("ar", help="knit and export the AR quiver")
    _add_common(ar)
    ar.add_argument("--ar-format", choices=["dot", "json"], default="dot")
    _add_common(subs.add_parser("border", help="list border sequences"))
    check = subs.add_parser("check", help="decide total stability of given weights")
    _add_common(check, sweep=True, weights=True)
    check.add_argument("--method", choices=["border", "brute", "both"], default="both")
    _add_common(subs.add_parser("equiv-test", help="randomized decider agreement"),
                sweep=True, trials=True)
    _add_common(subs.add_parser("find-theta", help="LP search for a totally stable weight"),
                sweep=True, weights=True)
    _add_common(subs.add_parser("lemma-suite", help="ladder and triple-mesh checks"),
                sweep=True)
    _add_common(subs.add_parser("counts", help="indecomposable and border counts"),
                sweep=True)
    return parser


def _config_from_args(args) -> RunConfig:
    cfg = RunConfig(command=args.command, quivers=list(args.specs) + list(args.quiver))
    for name in ("dtype", "max_rank", "all_orients", "sample_cap", "theta", "w",
                 "method", "trials", "seed", "format", "out", "prime"):
        if hasattr(args, name):
            setattr(cfg, name, getattr(args, name))
    return cfg


def resolve_quivers(cfg: RunConfig) -> list[DynkinQuiver]:
    if cfg.quivers:
        return [build_quiver(s) for s in cfg.quivers]
    if cfg.dtype is None or cfg.max_rank is None:
        raise UsageError("give quiver specs or --type together with --max-rank")
    ranks = {
        "A": range(1, cfg.max_rank + 1),
        "D": range(4, cfg.max_rank + 1),
        "E": range(6, min(cfg.max_rank, 8) + 1),
    }[cfg.dtype]
    out: list[DynkinQuiver] = []
    for rank in ranks:
        dtype = DynkinType(cfg.dtype, rank)
        orientations = list(all_orientations(dtype))
        if not cfg.all_orients and len(orientations) > cfg.sample_cap:
            rng = random.Random(_derive_seed("orient", cfg.seed, cfg.dtype, rank))
            orientations = [
                orientations[i]
                for i in sorted(rng.sample(range(len(orientations)), cfg.sample_cap))
            ]
        out.extend(orientations)
    if not out:
        raise UsageError(f"no diagrams of type {cfg.dtype} with rank <= {cfg.max_rank}")
    return out


def _weights_for(cfg: RunConfig, q: DynkinQuiver) -> StabilityWeights:
    if cfg.theta is None:
        raise UsageError("--theta is required")
    w = cfg.w if cfg.w is not None else ",".join(["1"] * q.rank)
    try:
        sw = StabilityWeights.parse(cfg.theta, w)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"bad weights: {exc}") from exc
    if len(sw.theta) != q.rank:
        raise UsageError(f"theta has {len(sw.theta)} entries, {q} has rank {q.rank}")
    return sw


def _jsonable(x):
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, dict):
        return {k: _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return x


# ---------------------------------------------------------------------------
# command handlers: each returns (report dict, text lines, exit code)


def cmd_roots(cfg: RunConfig):
    results = []
    lines = []
    for q in resolve_quivers(cfg):
        roots = positive_roots(q)
        results.append({"quiver": q.spec_string(), "count": len(roots),
                        "roots": [list(r) for r in roots]})
        lines.append(f"{q.spec_string()}: {len(roots)} positive roots")
        for r in roots:
            lines.append("  " + " ".join(str(c) for c in r))
    return {"results": results}, lines, EXIT_OK


def cmd_counts(cfg: RunConfig):
    per_type: dict[str, dict] = {}
    code = EXIT_OK
    for q in resolve_quivers(cfg):
        ar = knit(q)
        key = str(q.dtype)
        entry = per_type.setdefault(
            key,
            {
                "type": key,
                "orientations": 0,
                "indecomposables": set(),
                "borders": set(),
                "expected_indecomposables": q.dtype.num_indecomposables,
                "expected_borders": q.dtype.num_border_sequences,
            },
        )
        entry["orientations"] += 1
        entry["indecomposables"].add(len(ar.vertices))
        entry["borders"].add(len(ar.border_sequences()))
    results = []
    lines = [f"{'type':<6}{'orientations':>14}{'indecomposables':>18}{'border inequalities':>21}"]
    for key in sorted(per_type, key=lambda k: (k[0], int(k[1:]))):
        e = per_type[key]
        ok = e["indecomposables"] == {e["expected_indecomposables"]} and e["borders"] == {
            e["expected_borders"]
        }
        if not ok:
            code = EXIT_VIOLATION
        results.append(
            {
                "type": e["type"],
                "orientations": e["orientations"],
                "indecomposables": sorted(e["indecomposables"]),
                "borders": sorted(e["borders"]),
                "expected_indecomposables": e["expected_indecomposables"],
                "expected_borders": e["expected_borders"],
                "ok": ok,
            }
        )
        mark = "" if ok else "  MISMATCH"
        lines.append(
            f"{e['type']:<6}{e['orientations']:>14}"
            f"{'/'.join(map(str, sorted(e['indecomposables']))):>18}"
            f"{'/'.join(map(str, sorted(e['borders']))):>21}{mark}"
        )
    return {"results": results}, lines, code


def cmd_ar(cfg: RunConfig, ar_format: str):
    quivers = resolve_quivers(cfg)
    if len(quivers) != 1:
        raise UsageError("ar expects exactly one quiver")
    ar = knit(quivers[0])
    text = export(ar, ar_format)
    # the export IS the report; bypass the envelope
    return {"raw": text}, [text.rstrip("\n")], EXIT_OK


def cmd_border(cfg: RunConfig):
    results = []
    lines = []
    for q in resolve_quivers(cfg):
        ar = knit(q)
        borders = ar.border_sequences()
        entry = {
            "quiver": q.spec_string(),
            "count": len(borders),
            "sequences": [
                {
                    "start": list(ar.dim(b.start)),
                    "middle": list(ar.dim(b.middle)),
                    "end": list(ar.dim(b.end)),
                }
                for b in borders
            ],
        }
        results.append(entry)
        lines.append(f"{q.spec_string()}: {len(borders)} border sequences")
        for b in borders:
            lines.append(
                "  "
                + " ".join(map(str, ar.dim(b.start)))
                + "  ->  "
                + " ".join(map(str, ar.dim(b.middle)))
                + "  ->  "
                + " ".join(map(str, ar.dim(b.end)))
            )
    return {"results": results}, lines, EXIT_OK


def cmd_check(cfg: RunConfig):
    results = []
    lines = []
    code = EXIT_OK
    for q in resolve_quivers(cfg):
        sw = _weights_for(cfg, q)
        ar = knit(q)
        entry = {"quiver": q.spec_string(), "theta": [str(t) for t in sw.theta],
                 "w": [str(x) for x in sw.w]}
        border = brute = None
        if cfg.method in ("border", "both"):
            border = is_totally_stable_border(sw, ar)
            entry["border"] = border
        if cfg.method in ("brute", "both"):
            oracle = SubrepOracle(ar, sweep_prime=cfg.prime, seed=cfg.seed)
            brute = is_totally_stable_bruteforce(sw, ar, oracle)
            entry["bruteforce"] = brute
        if cfg.method == "both":
            entry["agree"] = border == brute
            if not entry["agree"]:
                code = EXIT_VIOLATION
        results.append(entry)
        verdicts = ", ".join(
            f"{k}={entry[k]}" for k in ("border", "bruteforce", "agree") if k in entry
        )
        lines.append(f"{q.spec_string()}: {verdicts}")
    return {"results": results}, lines, code


def cmd_equiv_test(cfg: RunConfig):
    if cfg.trials < 1:
        raise UsageError("--trials must be >= 1")
    results = []
    lines = []
    code = EXIT_OK
    for q in resolve_quivers(cfg):
        ar = knit(q)
        oracle = SubrepOracle(ar, sweep_prime=cfg.prime, seed=cfg.seed)
        entry = equivalence_trials(ar, oracle, cfg.trials, cfg.seed)
        results.append(entry)
        if entry["disagreements"]:
            code = EXIT_VIOLATION
        lines.append(
            f"{q.spec_string()}: {entry['agreements']}/{cfg.trials} agree, "
            f"{entry['stable_weights']} stable / {entry['unstable_weights']} unstable"
        )
    return {"results": results}, lines, code


def cmd_find_theta(cfg: RunConfig):
    results = []
    lines = []
    code = EXIT_OK
    for q in resolve_quivers(cfg):
        ar = knit(q)
        if cfg.w is not None:
            # pinned denominator: decide that cone exactly
            w = tuple(Fraction(tok) for tok in cfg.w.split(","))
            if len(w) != q.rank:
                raise UsageError(f"w has {len(w)} entries, {q} has rank {q.rank}")
            system = lp.build_system(ar, w)
            res = lp.solve(system)
        else:
            # free denominator: search the weighted family, all-ones first
            system, res = lp.find_totally_stable_weights(ar, seed=cfg.seed)
        w = system.w
        entry = {"quiver": q.spec_string(), "w": [str(x) for x in w],
                 "constraints": len(system.constraints), "status": res.status}
        if isinstance(res, lp.Feasible):
            sw = StabilityWeights(tuple(map(Fraction, res.theta)), w)
            oracle = SubrepOracle(ar, sweep_prime=cfg.prime, seed=cfg.seed)
            border_ok = is_totally_stable_border(sw, ar)
            brute_ok = is_totally_stable_bruteforce(sw, ar, oracle)
            entry.update(
                theta=list(res.theta),
                slack=None if res.slack is None else str(res.slack),
                border_verified=border_ok,
                bruteforce_verified=brute_ok,
                border_slopes=[
                    {
                        "start": list(ar.dim(b.start)),
                        "end": list(ar.dim(b.end)),
                        "slope_start": str(slope(sw, ar.dim(b.start))),
                        "slope_end": str(slope(sw, ar.dim(b.end))),
                    }
                    for b in ar.border_sequences()
                ],
            )
            if not (border_ok and brute_ok):
                code = EXIT_VIOLATION
            wnote = "" if all(x == 1 for x in w) else f", w = [{', '.join(map(str, w))}]"
            lines.append(
                f"{q.spec_string()}: theta = [{', '.join(map(str, res.theta))}]" + wnote
                + (f", slack {res.slack}" if res.slack is not None else "")
                + f", verified border={border_ok} bruteforce={brute_ok}"
            )
            for item in entry["border_slopes"]:
                lines.append(
                    f"  {' '.join(map(str, item['start']))} (mu={item['slope_start']})"
                    f"  <  {' '.join(map(str, item['end']))} (mu={item['slope_end']})"
                )
        else:
            entry.update(farkas=list(res.farkas))
            code = EXIT_VIOLATION
            lines.append(
                f"{q.spec_string()}: INFEASIBLE, certificate lambda = {list(res.farkas)}"
            )
        results.append(entry)
    return {"results": results}, lines, code


def cmd_lemma_suite(cfg: RunConfig):
    results = []
    lines = []
    code = EXIT_OK
    totals = {"ladders_checked": 0, "ladders_passed": 0,
              "triple_pass": 0, "triple_vacuous": 0, "triple_fail": 0}
    for q in resolve_quivers(cfg):
        ar = knit(q)
        realizer = Realizer(ar, seed=cfg.seed)
        failures = []
        checked = passed = 0
        for arrow in ar.arrows:
            ladder = identify_ladder(ar, arrow)
            if ladder is None:
                continue
            checked += 1
            if ladder_kernel_check(ar, arrow, ladder.kernel_vertex, realizer):
                passed += 1
            else:
                failures.append({"arrow": list(arrow),
                                 "kernel_vertex": ladder.kernel_vertex})
        entry = {
            "quiver": q.spec_string(),
            "ladders": {"checked": checked, "passed": passed, "failures": failures},
        }
        totals["ladders_checked"] += checked
        totals["ladders_passed"] += passed
        if q.dtype.family in ("D", "E"):
            report = triple_mesh_cokernel_check(ar, realizer)
            entry["triple_mesh"] = report
            totals[f"triple_{report['status']}"] += 1
            if report["status"] == "fail":
                code = EXIT_VIOLATION
        else:
            entry["triple_mesh"] = {"status": "not-applicable"}
        if failures:
            code = EXIT_VIOLATION
        results.append(entry)
        tm = entry["triple_mesh"]["status"]
        lines.append(
            f"{q.spec_string()}: ladders {passed}/{checked}, triple-mesh {tm}"
        )
    lines.append(
        f"total: ladders {totals['ladders_passed']}/{totals['ladders_checked']}, "
        f"triple-mesh pass={totals['triple_pass']} vacuous={totals['triple_vacuous']} "
        f"fail={totals['triple_fail']}"
    )
    return {"results": results, "summary": totals}, lines, code


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        cfg = _config_from_args(args)
        if cfg.command == "roots":
            report, lines, code = cmd_roots(cfg)
        elif cfg.command == "counts":
            report, lines, code = cmd_counts(cfg)
        elif cfg.command == "ar":
            report, lines, code = cmd_ar(cfg, args.ar_format)
        elif cfg.command == "border":
            report, lines, code = cmd_border(cfg)
        elif cfg.command == "check":
            report, lines, code = cmd_check(cfg)
        elif cfg.command == "equiv-test":
            report, lines, code = cmd_equiv_test(cfg)
        elif cfg.command == "find-theta":
            report, lines, code = cmd_find_theta(cfg)
        elif cfg.command == "lemma-suite":
            report, lines, code = cmd_lemma_suite(cfg)
        else:  # pragma: no cover
            raise UsageError(f"unknown command {cfg.command}")
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (QuiverSpecError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except FieldTransferError as exc:
        print(f"property violation: {exc}", file=sys.stderr)
        return EXIT_VIOLATION

    if cfg.command == "ar" and cfg.format == "text":
        payload = report["raw"]
    elif cfg.format == "json":
        envelope = {
            "command": cfg.command,
            "seed": cfg.seed,
            "config": {
                "quivers": cfg.quivers,
                "type": cfg.dtype,
                "max_rank": cfg.max_rank,
                "all_orientations": cfg.all_orients,
                "sample_cap": cfg.sample_cap,
                "theta": cfg.theta,
                "w": cfg.w,
                "method": cfg.method,
                "trials": cfg.trials,
                "prime": cfg.prime,
            },
            "exit_code": code,
        }
        envelope.update(_jsonable(report))
        payload = json.dumps(envelope, indent=2) + "\n"
    else:
        payload = "\n".join(lines) + "\n"

    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(payload)
    else:
        sys.stdout.write(payload)
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
