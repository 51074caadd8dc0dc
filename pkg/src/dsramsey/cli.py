"""Command line driver: construct, verify, bound, search, table, analyze.

Exit codes: 0 success or "arrows", 1 witness found / invalid / failed check,
2 inconclusive search, 64 usage or infeasible parameters.  Results go to
standard output; logging goes to standard error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from fractions import Fraction
from pathlib import Path
from typing import Any, Optional, Sequence

from . import __version__
from .analysis import bip_stats, check_claims, degree_profile
from .bounds import (
    BoundError,
    bip_lower,
    bip_upper,
    complete_lower,
    cor_ds_upper,
    family_gs_upper,
    ghk_exact,
    main1_upper,
    render_table,
    ruotolo_song,
    unbalanced_lower,
)
from .constructions import (
    ConstructionError,
    affine_blowup_coloring,
    bipartite_like_coloring,
    lemma_2col_witness,
    proper_blowup_bipartite,
    small_even,
    small_odd,
    verify_witness,
)
from .graph import DoubleStarPattern, WitnessFormatError, deserialize_witness, serialize_witness
from .search import SearchInconclusive, arrows, default_jobs, ramsey_number

EXIT_OK, EXIT_FALSE, EXIT_INCONCLUSIVE, EXIT_USAGE = 0, 1, 2, 64

FAMILIES = {
    "affine-blowup": affine_blowup_coloring,
    "two-r-minus-two": bipartite_like_coloring,
    "proper-blowup": proper_blowup_bipartite,
    "lemma-2col": lemma_2col_witness,
    "small-even": small_even,
    "small-odd": small_odd,
}

log = logging.getLogger("dsramsey")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # argparse would exit 2, which means inconclusive here
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _positive(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value


def _non_negative(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {value}")
    return value


def _c_value(text: str):
    if text == "auto":
        return "auto"
    try:
        value = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"C must be a positive number or 'auto', got {text!r}") from None
    if value <= 0:
        raise argparse.ArgumentTypeError(f"C must be positive, got {text}")
    return value


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="dsramsey", description="Multicolor Ramsey numbers of double stars.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    p.add_argument("-v", "--verbose", action="count", default=0, help="more logging on stderr")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("construct", help="build a lower-bound witness coloring")
    c.add_argument("--family", required=True, choices=sorted(FAMILIES))
    c.add_argument("--r", type=_positive, help="number of colors (not used by lemma-2col)")
    c.add_argument("--n", type=_positive, required=True)
    c.add_argument("--t", type=_positive, help="lemma-2col: size of the side bounded in color 1")
    c.add_argument("--s", type=_positive, help="lemma-2col: size of the side bounded in color 2")
    c.add_argument("-o", "--output", type=Path, help="write the witness here instead of stdout")
    c.add_argument("--no-verify", action="store_true", help="skip the verifier pass")

    v = sub.add_parser("verify", help="check a witness file against its claim")
    v.add_argument("file", type=Path)
    v.add_argument("--format", choices=("json", "text"), default="json")

    b = sub.add_parser("bound", help="evaluate the bound formulas")
    b.add_argument("--setting", choices=("complete", "bipartite"), required=True)
    b.add_argument("--r", type=_positive, required=True)
    b.add_argument("--n", type=_positive, required=True)
    b.add_argument("--m", type=_positive, help="second leaf count (default: n)")
    b.add_argument("--format", choices=("json", "text"), default="json")

    s = sub.add_parser("search", help="decide K_N ->_r S_{n,m} or scan for R")
    s.add_argument("--setting", choices=("complete", "bipartite"), required=True)
    s.add_argument("--r", type=_positive, required=True)
    s.add_argument("--n", type=_positive, required=True)
    s.add_argument("--m", type=_positive, required=True)
    size = s.add_mutually_exclusive_group()
    size.add_argument("--N", dest="size", type=_positive, help="decide one host size")
    size.add_argument("--max-N", dest="max_n", type=_positive, help="scan N = 1..K for R")
    s.add_argument("--budget", type=_non_negative, help="node budget per host size")
    s.add_argument("--jobs", type=_positive, help="worker processes (default: $DSRAMSEY_JOBS or 1)")
    s.add_argument("--width", type=_positive, default=None,
                   help="number of subtrees to split into (default: 4 * jobs when jobs > 1)")
    s.add_argument("-o", "--output", type=Path, help="save the avoiding witness here")
    s.add_argument("--format", choices=("json", "text"), default="json")

    t = sub.add_parser("table", help="print the summary table of bounds")
    t.add_argument("--setting", choices=("complete", "bipartite"), required=True)
    t.add_argument("--format", choices=("text", "csv", "json"), default="text")

    a = sub.add_parser("analyze", help="degree and important-edge diagnostics of a witness")
    a.add_argument("file", type=Path)
    a.add_argument("--n", type=_positive, required=True)
    a.add_argument("--C", dest="c_values", type=_c_value, action="append",
                   help="constant for the one-color count (repeatable; default: 1 and auto)")
    a.add_argument("--format", choices=("json", "text"), default="json")
    return p


def _emit(doc: Any, fmt: str, text: str) -> None:
    if fmt == "json":
        sys.stdout.write(json.dumps(doc, indent=2) + "\n")
    else:
        sys.stdout.write(text.rstrip("\n") + "\n")


def _load(path: Path):
    try:
        data = path.read_bytes()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from exc
    try:
        return deserialize_witness(data)
    except WitnessFormatError as exc:
        raise UsageError(f"{path}: {exc}") from exc


def _write(path: Path, data: bytes) -> None:
    try:
        path.write_bytes(data)
    except OSError as exc:
        raise UsageError(f"cannot write {path}: {exc.strerror}") from exc


# --- subcommands --------------------------------------------------------------


def cmd_construct(args) -> int:
    if args.family == "lemma-2col":
        if args.t is None or args.s is None:
            raise UsageError("lemma-2col needs --t and --s")
        witness = lemma_2col_witness(args.t, args.s, args.n)
    else:
        if args.r is None:
            raise UsageError(f"{args.family} needs --r")
        witness = FAMILIES[args.family](args.r, args.n)
    if not args.no_verify:
        report = verify_witness(witness)
        if not report.valid:
            log.error("construction failed its own verification: %s", report.counterexample)
            return EXIT_FALSE
    data = serialize_witness(witness)
    if args.output:
        _write(args.output, data)
        log.info("wrote %s", args.output)
    else:
        sys.stdout.buffer.write(data)
    return EXIT_OK


def cmd_verify(args) -> int:
    witness = _load(args.file)
    report = verify_witness(witness)
    text = "valid" if report.valid else f"INVALID: {json.dumps(report.counterexample)}"
    _emit(report.to_json(), args.format, text)
    return EXIT_OK if report.valid else EXIT_FALSE


def bound_records(setting: str, r: int, n: int, m: Optional[int]) -> list:
    m = n if m is None else m
    if m > n:
        raise UsageError(f"need n >= m, got n = {n}, m = {m}")
    out = []
    if setting == "complete":
        if r == 2:
            exact = ghk_exact(n, m)
            if exact is not None:
                out.append(exact)
        if m == n:
            if r >= 3:
                out.append(complete_lower(r, n))
            if r >= 2:
                out.append(main1_upper(r, n))
                out.append(family_gs_upper(r, n))
        if r >= 3:
            out.append(unbalanced_lower(r, n, m))
        out.append(ruotolo_song(r, n, m))
    else:
        if r < 2:
            raise UsageError("bipartite bounds need r >= 2")
        if m == n:
            out.append(bip_lower(r, n))
            out.append(bip_upper(r, n))
        out.append(cor_ds_upper(r, n, m))
    return out


def cmd_bound(args) -> int:
    records = bound_records(args.setting, args.r, args.n, args.m)
    lines = []
    for rec in records:
        val = rec.to_json()["value"]
        extra = f" .. {rec.to_json()['upper_value']}" if rec.upper_value is not None else ""
        rel = "<" if rec.strict else ""
        lines.append(f"{rec.kind:6} {rel}{val}{extra} (integer {rec.integer_value})  "
                     f"{rec.symbolic}  [{rec.source}]" + (f"  note: {rec.note}" if rec.note else ""))
    _emit([rec.to_json() for rec in records], args.format, "\n".join(lines))
    return EXIT_OK


def cmd_search(args) -> int:
    if args.m > args.n:
        raise UsageError(f"need n >= m, got n = {args.n}, m = {args.m}")
    pattern = DoubleStarPattern(args.n, args.m)
    jobs = args.jobs or default_jobs()
    width = args.width or (4 * jobs if jobs > 1 else 1)
    opts = dict(node_budget=args.budget, parallel_width=width, jobs=jobs)
    if args.size is None and args.max_n is None:
        raise UsageError("give --N for one host size or --max-N for a scan")

    if args.size is not None:
        res = arrows(args.setting, args.size, args.r, pattern, **opts)
        if res.witness is not None and args.output:
            _write(args.output, serialize_witness(res.witness))
        text = f"N = {res.N}: arrows {res.status} ({res.nodes_explored} nodes)"
        _emit(res.to_json(), args.format, text)
        return {True: EXIT_OK, False: EXIT_FALSE, None: EXIT_INCONCLUSIVE}[res.arrows]

    try:
        scan = ramsey_number(args.setting, args.r, pattern, args.max_n, **opts)
    except SearchInconclusive as exc:
        res = exc.result
        _emit({"R": None, "status": "inconclusive", "N": res.N, "nodes_explored": res.nodes_explored},
              args.format, f"inconclusive at N = {res.N} ({res.nodes_explored} nodes)")
        return EXIT_INCONCLUSIVE
    last_free = next((res for res in reversed(scan.results) if res.witness is not None), None)
    if last_free is not None and args.output:
        _write(args.output, serialize_witness(last_free.witness))
    if scan.value is not None:
        text = f"R = {scan.value}"
    else:
        text = f"R > {args.max_n} (no arrow up to N = {args.max_n})"
    _emit(scan.to_json(), args.format, text)
    return EXIT_OK if scan.value is not None else EXIT_FALSE


def cmd_table(args) -> int:
    sys.stdout.write(render_table(args.setting, args.format))
    return EXIT_OK


def cmd_analyze(args) -> int:
    witness = _load(args.file)
    c = witness.coloring
    if c.setting == "complete":
        report = degree_profile(c, args.n)
        text = f"verdict: {report.verdict} (hypothesis {'holds' if report.hypothesis_holds else 'fails'})"
        _emit(report.to_json(), args.format, text)
        return EXIT_FALSE if report.verdict == "lemma_violation" else EXIT_OK
    if c.x_size != c.y_size:
        raise UsageError("analyze needs a balanced bipartite host")
    stats = bip_stats(c, args.n)
    reports = [check_claims(stats, value) for value in (args.c_values or [1, "auto"])]
    lines = [f"z = {list(stats.z)}, e* = {stats.important}, sigma^2 = {stats.sigma_sq}"]
    for rep in reports:
        if not rep.applicable:
            lines.append(f"C = {rep.C}: not applicable ({rep.reason})")
            continue
        failed = [ch.name for ch in rep.checks if not ch.passed]
        lines.append(f"C = {rep.C}: {'all checks pass' if not failed else 'FAILED: ' + '; '.join(failed)}")
    doc = {"stats": stats.to_json(), "claims": [rep.to_json() for rep in reports]}
    _emit(doc, args.format, "\n".join(lines))
    failed_any = any(rep.applicable and not rep.passed for rep in reports)
    return EXIT_FALSE if failed_any else EXIT_OK


COMMANDS = {
    "construct": cmd_construct,
    "verify": cmd_verify,
    "bound": cmd_bound,
    "search": cmd_search,
    "table": cmd_table,
    "analyze": cmd_analyze,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.WARNING - 10 * min(args.verbose, 2),
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    try:
        return COMMANDS[args.command](args)
    except (UsageError, ConstructionError, BoundError, ValueError) as exc:
        sys.stderr.write(f"dsramsey {args.command}: error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
