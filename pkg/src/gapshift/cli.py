"""Command line front end: ``gapshift <command> <spec.json>... [flags]``.

Exit codes: 0 ok, 1 usage or parse error, 2 certification shortfall,
3 internal consistency failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys

import jsonschema

from .dynamics import (
    MIXING,
    NOT_MIXING,
    gap_distribution,
    gap_histogram,
    is_mixing,
    sample_mme,
    verify_irreducibility,
    verify_synchronization,
)
from .entropy import empirical_entropy, solve_entropy
from .errors import BudgetExceeded, DepthExhausted, GapShiftError, SynchronizationViolation
from .language import count_words, enumerate_words
from .specfile import load_spec

EXIT_OK, EXIT_USAGE, EXIT_UNCERTIFIED, EXIT_INCONSISTENT = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


class _Inconsistent(Exception):
    pass


class _Uncertified(Exception):
    pass


def _entropy_doc(enc, bits, uncertain=False):
    scale = 1 / math.log(2) if bits else 1.0
    return {
        "lambda_lo": enc.lo,
        "lambda_hi": enc.hi,
        "h_lo": enc.h_lo * scale,
        "h_hi": enc.h_hi * scale,
        "truncation_depth": enc.truncation_depth,
        "tail_bound_kind": enc.tail_bound_kind,
        "units": "bits" if bits else "nats",
        "uncertain": uncertain or enc.uncertain,
    }


def cmd_entropy(sf, args):
    tol = args.tol or sf.setting("tol")
    try:
        enc = solve_entropy(sf.spec, tol, sf.setting("max_depth"))
    except DepthExhausted as exc:
        return _entropy_doc(exc.partial, args.bits, True), EXIT_UNCERTIFIED
    return _entropy_doc(enc, args.bits), EXIT_OK


def cmd_count(sf, args):
    budget = sf.setting("enumeration_budget")
    rows, status = [], EXIT_OK
    for n in range(1, args.n_max + 1):
        count = count_words(sf.spec, n)
        row = {"n": n, "count": count, "empirical_entropy": math.log(count) / n}
        if args.enumerate:
            try:
                enumerated = len(enumerate_words(sf.spec, n, budget))
            except BudgetExceeded:
                enumerated = ""
            row["enumerated_count"] = enumerated
            if enumerated != "" and enumerated != count:
                status = EXIT_INCONSISTENT
        rows.append(row)
    return rows, status


def cmd_complexity(sf, args):
    w = sf.spec.factor_source
    return [{"n": n, "phi": w.complexity(n)} for n in range(args.n_max + 1)], EXIT_OK


def cmd_check(sf, args):
    verdict = is_mixing(sf.spec, args.probe_bound)
    seed = args.seed if args.seed is not None else sf.setting("seed")
    try:
        sync = verify_synchronization(sf.spec, args.trials, args.max_len, seed)
    except SynchronizationViolation as exc:
        raise _Inconsistent(str(exc)) from exc
    irr = verify_irreducibility(sf.spec, args.trials, args.max_len, seed + 1)
    doc = {
        "mixing": {MIXING: "yes", NOT_MIXING: "no"}.get(verdict.status, "unknown"),
        "gcd": verdict.gcd_witness,
        "certificate": list(verdict.certificate),
        "probe_bound": verdict.probe_bound,
        "synchronization": {"trials": sync.trials, "passes": sync.passes},
        "irreducibility": {"trials": irr.trials, "successes": irr.passes},
    }
    status = EXIT_OK if sync.passes == sync.trials and irr.passes == irr.trials else EXIT_INCONSISTENT
    return doc, status


def cmd_sample(sf, args):
    seed = args.seed if args.seed is not None else sf.setting("seed")
    mass_tol = args.mass_tol or sf.setting("mass_tol")
    try:
        enc = solve_entropy(sf.spec, sf.setting("tol"), sf.setting("max_depth"))
        dist = gap_distribution(sf.spec, enc, mass_tol, sf.setting("max_depth"))
    except DepthExhausted as exc:
        raise _Uncertified(str(exc)) from exc
    word = sample_mme(sf.spec, dist, args.length, seed)
    hist = gap_histogram(sf.spec, word)
    return {
        "word": word,
        "length": args.length,
        "seed": seed,
        "lambda": dist.lam,
        "zero_frequency_empirical": word.count("0") / len(word),
        "zero_frequency_kac": dist.zero_frequency,
        "gap_histogram": {str(n): c for n, c in hist.items()},
        "truncation_mass": dist.truncation_mass,
        "mass_tol": mass_tol,
    }, EXIT_OK


def cmd_compare(sf, args):
    tol = args.tol or sf.setting("tol")
    try:
        enc = solve_entropy(sf.spec, tol, sf.setting("max_depth"))
    except DepthExhausted as exc:
        enc, status = exc.partial, EXIT_UNCERTIFIED
    else:
        status = EXIT_OK
    scale = 1 / math.log(2) if args.bits else 1.0
    rows = []
    for n in range(1, args.n_max + 1):
        emp = empirical_entropy(sf.spec, n) * scale
        rows.append({"n": n, "empirical_entropy": emp, "h_lo": enc.h_lo * scale,
                     "h_hi": enc.h_hi * scale, "excess": emp - enc.h_lo * scale})
    return rows, status


COMMANDS = {
    "entropy": (cmd_entropy, "json"),
    "count": (cmd_count, "csv"),
    "check": (cmd_check, "json"),
    "sample": (cmd_sample, "json"),
    "complexity": (cmd_complexity, "csv"),
    "compare": (cmd_compare, "csv"),
}


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("specs", nargs="+", metavar="spec.json")
    common.add_argument("--tol", type=float, help="root enclosure width (default from spec config)")
    common.add_argument("--n-max", type=int, default=10)
    common.add_argument("--length", type=int, default=1000)
    common.add_argument("--seed", type=int)
    common.add_argument("--enumerate", action="store_true", help="cross-check counts by enumeration")
    common.add_argument("--bits", action="store_true", help="report entropy in bits")
    common.add_argument("--mass-tol", type=float)
    common.add_argument("--trials", type=int, default=1000)
    common.add_argument("--max-len", type=int, default=10)
    common.add_argument("--probe-bound", type=int, default=1000)
    common.add_argument("--out", help="write output to this path instead of stdout")

    parser = _Parser(prog="gapshift", description="(S, w)-gap shift toolkit")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sub.add_parser(name, parents=[common])
    return parser


def _render(kind, results, multi):
    if kind == "json":
        if multi:
            return json.dumps([{"spec_file": p, **doc} for p, doc in results], indent=2) + "\n"
        return json.dumps(results[0][1], indent=2) + "\n"
    buf = io.StringIO()
    rows = [({"spec_file": p} if multi else {}) | row for p, table in results for row in table]
    if rows:
        writer = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
    return buf.getvalue()


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        print(f"gapshift: {exc}", file=sys.stderr)
        return EXIT_USAGE

    handler, kind = COMMANDS[args.command]
    results, status = [], EXIT_OK
    for path in args.specs:
        try:
            sf = load_spec(path)
        except (OSError, ValueError, jsonschema.ValidationError, GapShiftError) as exc:
            print(f"gapshift: cannot load {path}: {getattr(exc, 'message', exc)}", file=sys.stderr)
            return EXIT_USAGE
        try:
            out, code = handler(sf, args)
        except _Inconsistent as exc:
            print(f"gapshift: consistency failure in {path}: {exc}", file=sys.stderr)
            return EXIT_INCONSISTENT
        except _Uncertified as exc:
            print(f"gapshift: {path}: {exc}", file=sys.stderr)
            status = max(status, EXIT_UNCERTIFIED)
            continue
        except GapShiftError as exc:
            print(f"gapshift: {path}: {exc}", file=sys.stderr)
            return EXIT_USAGE
        results.append((path, out))
        status = max(status, code)

    if results:
        text = _render(kind, results, len(args.specs) > 1)
        if args.out:
            with open(args.out, "w") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
    return status


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
