"""Command-line front end.

Exit status is 0 on success, 1 when a computation finds nothing (no
dependence, not a Riordan array, failed table row) and 2 on bad input.
Failures print one line ``error: <Kind>: <reason>`` on stderr.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Sequence

from ecomat import exp_riordan as er
from ecomat import prodmat, rational, riordan
from ecomat.expr import ExprError, ExprSyntaxError, eval_series
from ecomat.polynomial import format_rational
from ecomat.rules import RuleError
from ecomat.series import InsufficientTerms, PowerSeries, SeriesError
from ecomat.specfile import SpecError, load, parse_triangle

COMPUTATION_ERRORS = (rational.NotFound, rational.Inconsistent, riordan.NotRiordan, InsufficientTerms)
INPUT_ERRORS = (
    SpecError,
    RuleError,
    ExprSyntaxError,
    ExprError,
    SeriesError,
    prodmat.EntryError,
    prodmat.UnboundedSupport,
    prodmat.TruncationError,
    OSError,
    KeyError,
    ValueError,
)


class Failure(Exception):
    """A computation ran to completion and the answer is negative."""


class UsageError(ValueError):
    """Bad command line."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _positive(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"{value} is not positive")
    return value


def _ints(values) -> str:
    return " ".join(str(v) for v in values)


def _finite(spec):
    if not isinstance(spec.matrix, prodmat.ExplicitMatrix):
        raise SpecError(f"this command needs a finite matrix (explicit or rule), got {spec.kind}")
    return spec.matrix


def _fields_series(spec, key: str, order: int) -> PowerSeries:
    return eval_series(spec.fields[key], order)


# -- commands --------------------------------------------------------------


def cmd_seq(args) -> list[str]:
    P = load(args.spec[0], max(args.order, args.terms)).matrix
    return [_ints(prodmat.sequence(P, args.terms))]


def cmd_eco(args) -> list[str]:
    P = load(args.spec[0], max(args.order, args.levels)).matrix
    return [_ints(r) for r in prodmat.eco_matrix(P, args.levels).rows]


def cmd_labels(args) -> list[str]:
    P = load(args.spec[0], max(args.order, args.terms)).matrix
    return [_ints(prodmat.labels(P, args.terms))]


def cmd_gf(args) -> list[str]:
    spec = load(args.spec[0], max(args.order, 2 * args.window + args.max_order))
    P = spec.matrix
    out = [str(PowerSeries(prodmat.sequence(P, args.order + 1)))]
    if args.rational:
        if isinstance(P, prodmat.ExplicitMatrix):
            out.append(f"f_P = {rational.rational_gf(P)}")
        else:
            out.append(f"f_P = {rational.krylov_detect(P, args.max_order, args.window).gf}")
    return out


def cmd_egf(args) -> list[str]:
    P = load(args.spec[0], args.order).matrix
    return [str(prodmat.egf_coefficients(P, args.order + 1))]


def cmd_riordan_detect(args) -> list[str]:
    if args.triangle:
        rows = parse_triangle(Path(args.triangle).read_text())
    elif args.spec:
        P = load(args.spec[0], max(args.order, args.levels)).matrix
        rows = [list(r) for r in prodmat.eco_matrix(P, args.levels).rows]
    else:
        raise SpecError("give --spec or --triangle")
    za = riordan.detect_zeta_alpha(rows)
    return [f"zeta: {za.zeta}", f"alpha: {za.alpha}"]


def cmd_riordan_build(args) -> list[str]:
    spec = load(args.spec[0], args.order)
    if spec.kind != "riordan":
        raise SpecError(f"riordan-build needs a riordan spec, got {spec.kind}")
    za = riordan.ZetaAlpha(spec.matrix.zeta, spec.matrix.alpha)
    res = riordan.gf_pipeline(za, args.order)
    out = ["P:"] + [_ints(r) for r in spec.matrix.rows(min(args.levels, args.order + 1))]
    out += [f"h: {res.h}", f"d: {res.d}", f"f: {res.f}"]
    return out


def cmd_er_roundtrip(args) -> list[str]:
    spec = load(args.spec[0], args.order)
    if spec.kind != "exp-riordan":
        raise SpecError(f"er-roundtrip needs an exp-riordan spec, got {spec.kind}")
    n = args.order
    if "c" in spec.fields:
        cr = er.CRPair(_fields_series(spec, "c", n + 1), _fields_series(spec, "r", n + 1))
        dh = er.dh_from_cr(cr, n + 1)
        back = er.cr_from_dh(dh, n)
        return [
            f"d: {dh.d.truncate(n)}",
            f"h: {dh.h.truncate(n)}",
            f"residual c: {back.c - cr.c.truncate(n)}",
            f"residual r: {back.r - cr.r.truncate(n)}",
        ]
    pair = er.ExpRiordanPair(_fields_series(spec, "d", n + 1), _fields_series(spec, "h", n + 1))
    cr = er.cr_from_dh(pair, n)
    back = er.dh_from_cr(cr, n)
    return [
        f"c: {cr.c}",
        f"r: {cr.r}",
        f"residual d: {back.d - pair.d.truncate(n)}",
        f"residual h: {back.h - pair.h.truncate(n)}",
    ]


def cmd_recurrence(args) -> list[str]:
    chain = rational.divisor_chain(_finite(load(args.spec[0])))
    return [
        f"characteristic: {chain.characteristic}",
        f"minimal: {chain.minimal}",
        f"annihilator: {chain.annihilator}",
        f"divisor chain: {'holds' if chain.holds else 'BROKEN'}",
        f"recurrence: {chain.recurrence}",
    ]


def cmd_krylov(args) -> list[str]:
    P = load(args.spec[0], max(args.order, 2 * args.window + args.max_order)).matrix
    rep = rational.krylov_detect(P, args.max_order, args.window)
    return [
        f"polynomial: {rep.charpoly_divisor}",
        f"coefficients: {' '.join(format_rational(c) for c in rep.coefficients)}",
        f"initial: {_ints(rep.initial_terms)}",
        f"gf: {rep.gf}",
    ]


def cmd_equiv(args) -> list[str]:
    if len(args.spec) != 2:
        raise SpecError("equiv needs exactly two --spec files")
    P1, P2 = (_finite(load(s)) for s in args.spec)
    return ["EQUIVALENT" if rational.equivalent(P1, P2) else "DIFFERENT"]


def check_table_row(row: riordan.TableRow, terms: int) -> str | None:
    """``None`` if the row passes, else the first disagreement."""
    printed = list(row.terms[:terms])
    order = max(terms, 2) + 1
    za = riordan.ZetaAlpha.from_exprs(row.zeta, row.alpha, order)
    eco = prodmat.sequence(riordan.production_from_zeta_alpha(za), len(printed))
    if eco != printed:
        return f"ECO iteration gives {_ints(eco)}"
    f = riordan.gf_pipeline(za, order).f.coeffs[: len(printed)]
    if list(f) != printed:
        return f"gf pipeline gives {_ints(format_rational(c) for c in f)}"
    closed = eval_series(row.f, order).coeffs[: len(printed)]
    if list(closed) != printed:
        return f"f_P expression gives {_ints(format_rational(c) for c in closed)}"
    return None


def cmd_table_verify(args) -> list[str]:
    rows = riordan.parse_table(Path(args.table).read_text()) if args.table else riordan.bundled_table()
    out = []
    failed = 0
    for row in rows:
        problem = check_table_row(row, args.terms)
        if problem is None:
            out.append(f"row {row.number} {row.anumber} PASS")
        else:
            failed += 1
            out.append(f"row {row.number} {row.anumber} FAIL {problem}")
    out.append(f"{len(rows) - failed}/{len(rows)} rows pass")
    if failed:
        raise Failure("\n".join(out))
    return out


COMMANDS = {
    "seq": (cmd_seq, "first terms of the induced sequence"),
    "eco": (cmd_eco, "rows of the ECO matrix"),
    "labels": (cmd_labels, "row sums of the production matrix"),
    "gf": (cmd_gf, "generating function f_P as a series (optionally rational)"),
    "egf": (cmd_egf, "exponential generating function of the sequence"),
    "riordan-detect": (cmd_riordan_detect, "recover zeta and alpha from a triangle"),
    "riordan-build": (cmd_riordan_build, "production matrix and h, d, f from zeta and alpha"),
    "er-roundtrip": (cmd_er_roundtrip, "convert between c, r and d, h and back"),
    "recurrence": (cmd_recurrence, "minimal polynomial, annihilator of e and sequence recurrence"),
    "krylov": (cmd_krylov, "detect a Krylov dependence and a rational gf"),
    "equiv": (cmd_equiv, "compare two finite matrices by their generating functions"),
    "table-verify": (cmd_table_verify, "check every row of the bundled Riordan table"),
}


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="ecomat", description="Production matrices, ECO matrices and their generating functions.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, help_text) in COMMANDS.items():
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--spec", action="append", default=[], help="matrix spec or rule file")
        p.add_argument("--terms", type=_positive, default=12)
        p.add_argument("--order", type=_positive, default=12)
        p.add_argument("--levels", type=_positive, default=8)
        p.add_argument("--window", type=_positive, default=24)
        p.add_argument("--max-order", type=_positive, default=8)
        if name == "gf":
            p.add_argument("--rational", action="store_true")
        if name == "riordan-detect":
            p.add_argument("--triangle", help="file with one row of integers per line")
        if name == "table-verify":
            p.add_argument("--table", help="table file instead of the bundled one")
    return parser


def run(argv: Sequence[str]) -> tuple[int, str, str]:
    """Execute one invocation; returns ``(exit code, stdout, stderr)``."""
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        return 2, "", f"error: UsageError: {exc}\n"
    except SystemExit as exc:  # --help
        return int(exc.code or 0), "", ""
    handler = COMMANDS[args.command][0]
    needs_spec = args.command not in ("table-verify", "riordan-detect")
    if needs_spec and not args.spec:
        return 2, "", "error: SpecError: --spec is required\n"
    try:
        lines = handler(args)
    except Failure as exc:
        return 1, f"{exc}\n", "error: Failure: table rows failed\n"
    except COMPUTATION_ERRORS as exc:
        return 1, "", f"error: {type(exc).__name__}: {exc}\n"
    except INPUT_ERRORS as exc:
        return 2, "", f"error: {type(exc).__name__}: {exc}\n"
    return 0, "".join(line + "\n" for line in lines), ""


def main(argv: Sequence[str] | None = None) -> int:
    code, out, err = run(sys.argv[1:] if argv is None else argv)
    sys.stdout.write(out)
    sys.stderr.write(err)
    return code


if __name__ == "__main__":
    sys.exit(main())
