"""Loading production matrices from small text files.

A matrix file is a list of ``key: value`` lines::

    kind: rowexpr
    entry: [j==0]*(i+1) + [j>=1]*[j<=i+1]
    support: i+1

Recognised kinds and keys:

* ``explicit``: ``rows: [[0,1],[1,1]]``
* ``rowexpr``: ``entry``, ``support`` and optionally ``params: a=1, b=2``
* ``riordan``: ``zeta``, ``alpha``
* ``exp-riordan``: either ``c`` and ``r`` or ``d`` and ``h``

Indented lines continue the previous value and ``#`` starts a comment.  A
file whose first word is ``axiom`` is read as a succession rule instead.
"""

from __future__ import annotations

import ast
import re
from dataclasses import dataclass
from pathlib import Path

from ecomat.expr import ExprError, ExprSyntaxError, eval_series
from ecomat.exp_riordan import CRPair, ExpRiordanPair, cr_from_dh
from ecomat.prodmat import ExplicitMatrix, ExpRiordanMatrix, ProductionMatrix, RiordanMatrix, RowExprMatrix
from ecomat.rules import SuccessionRule, parse_rule, to_production_matrix
from ecomat.series import SeriesError

KINDS = ("explicit", "rowexpr", "riordan", "exp-riordan")
_KEYS = {
    "explicit": ({"rows"}, set()),
    "rowexpr": ({"entry", "support"}, {"params"}),
    "riordan": ({"zeta", "alpha"}, set()),
    "exp-riordan": (set(), {"c", "r", "d", "h"}),
}


class SpecError(ValueError):
    pass


@dataclass(frozen=True)
class LoadedSpec:
    kind: str  # one of KINDS or "rule"
    fields: dict
    matrix: ProductionMatrix
    rule: SuccessionRule | None = None


def parse_fields(text: str) -> dict[str, str]:
    fields: dict[str, str] = {}
    last = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        if line[0].isspace():
            if last is None:
                raise SpecError(f"line {lineno}: continuation line with nothing to continue")
            fields[last] += " " + line.strip()
            continue
        key, sep, value = line.partition(":")
        key = key.strip()
        if not sep or not re.fullmatch(r"[A-Za-z][A-Za-z_-]*", key):
            raise SpecError(f"line {lineno}: expected 'key: value'")
        if key in fields:
            raise SpecError(f"line {lineno}: duplicate key {key!r}")
        fields[key] = value.strip()
        last = key
    return fields


def _params(text: str) -> dict[str, int]:
    out = {}
    for item in filter(None, (s.strip() for s in text.split(","))):
        name, sep, value = item.partition("=")
        if not sep or not re.fullmatch(r"-?\d+", value.strip()):
            raise SpecError(f"bad parameter {item!r}; expected name=integer")
        out[name.strip()] = int(value)
    return out


def _series(fields: dict, key: str, order: int):
    try:
        return eval_series(fields[key], order)
    except (ExprError, ExprSyntaxError, SeriesError) as exc:
        raise SpecError(f"{key}: {exc}") from exc


def is_rule(text: str) -> bool:
    stripped = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    first = next((ln for ln in stripped if ln), "")
    return first.startswith("axiom")


def load_text(text: str, order: int = 12) -> LoadedSpec:
    """Build the production matrix described by ``text``.

    ``order`` is the truncation order for series-defined kinds: rows
    ``0..order`` are realisable.
    """
    if is_rule(text):
        rule = parse_rule(text)
        return LoadedSpec("rule", {}, to_production_matrix(rule), rule)
    fields = parse_fields(text)
    kind = fields.pop("kind", None)
    if kind not in KINDS:
        raise SpecError(f"kind must be one of {', '.join(KINDS)}; got {kind!r}")
    required, optional = _KEYS[kind]
    missing = required - fields.keys()
    unknown = fields.keys() - required - optional
    if missing:
        raise SpecError(f"{kind}: missing {', '.join(sorted(missing))}")
    if unknown:
        raise SpecError(f"{kind}: unknown key {', '.join(sorted(unknown))}")

    if kind == "explicit":
        try:
            rows = ast.literal_eval(fields["rows"])
        except (ValueError, SyntaxError) as exc:
            raise SpecError(f"rows: not a list of integer lists ({exc})") from None
        if not isinstance(rows, list) or not all(
            isinstance(r, list) and all(isinstance(v, int) for v in r) for r in rows
        ):
            raise SpecError("rows: not a list of integer lists")
        return LoadedSpec(kind, fields, ExplicitMatrix(rows))
    if kind == "rowexpr":
        params = _params(fields.get("params", ""))
        try:
            matrix = RowExprMatrix(fields["entry"], fields["support"], params)
        except ExprSyntaxError as exc:
            raise SpecError(str(exc)) from exc
        return LoadedSpec(kind, fields, matrix)
    if kind == "riordan":
        return LoadedSpec(kind, fields, RiordanMatrix(_series(fields, "zeta", order), _series(fields, "alpha", order)))

    keys = set(fields)
    if keys == {"c", "r"}:
        cr = CRPair(_series(fields, "c", order), _series(fields, "r", order))
    elif keys == {"d", "h"}:
        pair = ExpRiordanPair(_series(fields, "d", order + 1), _series(fields, "h", order + 1))
        cr = cr_from_dh(pair, order)
    else:
        raise SpecError("exp-riordan: give either c and r, or d and h")
    return LoadedSpec(kind, fields, ExpRiordanMatrix(cr.c, cr.r))


def load(path: str | Path, order: int = 12) -> LoadedSpec:
    return load_text(Path(path).read_text(), order)


def parse_triangle(text: str) -> list[list[int]]:
    """Rows of integers separated by spaces or commas, one row per line."""
    rows = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            rows.append([int(tok) for tok in re.split(r"[\s,]+", line)])
        except ValueError:
            raise SpecError(f"line {lineno}: expected integers") from None
    return rows
