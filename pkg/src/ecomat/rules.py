"""Finite succession rules: parsing, printing and level-by-level expansion.

Concrete syntax::

    # Fibonacci
    axiom (1);
    (1) -> (2);
    (2) -> (1)(2)

A label is ``(k)`` or ``(k<letter>)``; the letter colours labels that share
the value ``k``.  Each label that appears anywhere must head exactly one
production, and a label of value ``k`` has exactly ``k`` successors.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Sequence

from ecomat.prodmat import ExplicitMatrix


class RuleError(ValueError):
    pass


class RuleSyntaxError(RuleError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class ArityMismatch(RuleError):
    pass


class UndefinedLabel(RuleError):
    pass


@dataclass(frozen=True)
class Label:
    id: int
    value: int
    display: str  # e.g. "2" or "2a"

    def __post_init__(self):
        if self.value < 1:
            raise RuleError(f"label ({self.display}) must have a positive value")

    def __str__(self) -> str:
        return f"({self.display})"


@dataclass(frozen=True)
class SuccessionRule:
    labels: tuple[Label, ...]
    axiom: int
    productions: tuple[tuple[int, ...], ...]  # indexed by label id

    def __post_init__(self):
        if not 0 <= self.axiom < len(self.labels):
            raise RuleError("axiom is not a label of the rule")
        if len(self.productions) != len(self.labels):
            raise RuleError("every label needs exactly one production")
        for label, succ in zip(self.labels, self.productions):
            if len(succ) != label.value:
                raise ArityMismatch(f"label {label} has {len(succ)} successors, expected {label.value}")
            for s in succ:
                if not 0 <= s < len(self.labels):
                    raise UndefinedLabel(f"successor id {s} of {label} does not exist")

    def __str__(self) -> str:
        return format_rule(self)


@dataclass(frozen=True)
class LevelProfile:
    level: int
    counts: tuple[int, ...]  # per label id

    @property
    def total(self) -> int:
        return sum(self.counts)


_TOKEN = re.compile(
    r"(?P<ws>[ \t\r\n]+)|(?P<comment>#[^\n]*)|(?P<axiom>axiom\b)|(?P<arrow>->)|(?P<semi>;)"
    r"|(?P<label>\(\s*(?P<value>\d+)\s*(?P<color>[A-Za-z])?\s*\))"
)


def _tokens(text: str):
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        col = pos - line_start + 1
        if not m:
            raise RuleSyntaxError(f"unexpected {text[pos]!r}", line, col)
        kind = m.lastgroup if m.lastgroup not in ("value", "color") else "label"
        if m.group("label"):
            kind = "label"
        if kind not in ("ws", "comment"):
            yield kind, m, line, col
        chunk = m.group(0)
        if "\n" in chunk:
            line += chunk.count("\n")
            line_start = pos + chunk.rindex("\n") + 1
        pos = m.end()
    yield "end", None, line, pos - line_start + 1


def parse_rule(text: str) -> SuccessionRule:
    toks = list(_tokens(text))
    k = 0

    def expect(kind: str):
        nonlocal k
        tok = toks[k]
        if tok[0] != kind:
            found = tok[1].group(0) if tok[1] else "end of input"
            raise RuleSyntaxError(f"expected {kind}, found {found!r}", tok[2], tok[3])
        k += 1
        return tok

    def label_of(tok) -> tuple[str, int, int, int]:
        m = tok[1]
        value = int(m.group("value"))
        if value < 1:
            raise RuleSyntaxError("label values must be positive", tok[2], tok[3])
        return m.group("value").lstrip("0") + (m.group("color") or ""), value, tok[2], tok[3]

    expect("axiom")
    axiom = label_of(expect("label"))
    heads: list[tuple[str, int, int, int]] = []
    bodies: list[list[tuple[str, int, int, int]]] = []
    while True:
        expect("semi")
        if toks[k][0] == "end":  # trailing semicolon
            break
        heads.append(label_of(expect("label")))
        expect("arrow")
        body = [label_of(expect("label"))]
        while toks[k][0] == "label":
            body.append(label_of(toks[k]))
            k += 1
        bodies.append(body)
        if toks[k][0] == "end":
            break
    if not heads:
        tok = toks[k]
        raise RuleSyntaxError("a rule needs at least one production", tok[2], tok[3])

    seen: dict[str, int] = {}
    for name, value, line, col in heads:
        if name in seen:
            raise RuleSyntaxError(f"label ({name}) heads more than one production", line, col)
        seen[name] = value

    for name, _, line, col in [axiom] + [lab for body in bodies for lab in body]:
        if name not in seen:
            raise UndefinedLabel(f"label ({name}) at line {line}, column {col} has no production")

    order = [axiom[0]] + [h[0] for h in heads if h[0] != axiom[0]]
    ids = {name: n for n, name in enumerate(order)}
    labels = tuple(Label(ids[name], seen[name], name) for name in order)
    productions: list[tuple[int, ...]] = [()] * len(order)
    for (name, value, line, col), body in zip(heads, bodies):
        if len(body) != value:
            raise ArityMismatch(
                f"label ({name}) at line {line}, column {col} has {len(body)} successors, expected {value}"
            )
        productions[ids[name]] = tuple(ids[b[0]] for b in body)
    return SuccessionRule(labels, 0, tuple(productions))


def format_rule(rule: SuccessionRule) -> str:
    lines = [f"axiom {rule.labels[rule.axiom]};"]
    for label, succ in zip(rule.labels, rule.productions):
        lines.append(f"{label} -> {''.join(str(rule.labels[s]) for s in succ)};")
    return "\n".join(lines) + "\n"


def _axiom_first(rule: SuccessionRule) -> list[int]:
    return [rule.axiom] + [n for n in range(len(rule.labels)) if n != rule.axiom]


def to_production_matrix(rule: SuccessionRule) -> ExplicitMatrix:
    """``p[k][i]`` counts occurrences of label ``i`` among the successors of label ``k``."""
    perm = _axiom_first(rule)
    pos = {lab: n for n, lab in enumerate(perm)}
    q = len(perm)
    rows = []
    for lab in perm:
        row = [0] * q
        for s in rule.productions[lab]:
            row[pos[s]] += 1
        rows.append(row)
    return ExplicitMatrix(rows)


def level_profiles(rule: SuccessionRule, levels: int) -> list[LevelProfile]:
    """Label counts at levels ``0..levels`` of the generating tree."""
    q = len(rule.labels)
    counts = [0] * q
    counts[rule.axiom] = 1
    out = [LevelProfile(0, tuple(counts))]
    for level in range(1, levels + 1):
        nxt = [0] * q
        for lab, c in enumerate(counts):
            if c:
                for s in rule.productions[lab]:
                    nxt[s] += c
        counts = nxt
        out.append(LevelProfile(level, tuple(counts)))
    return out


def level_totals(rule: SuccessionRule, levels: int) -> list[int]:
    return [p.total for p in level_profiles(rule, levels)]


def rule_from_rows(rows: Sequence[Sequence[int]]) -> SuccessionRule:
    """Inverse of :func:`to_production_matrix`: row sums become label values."""
    q = len(rows)
    values = [sum(r) for r in rows]
    displays = []
    used: dict[int, int] = {}
    for v in values:
        n = used.get(v, 0)
        used[v] = n + 1
        displays.append(str(v) if n == 0 else f"{v}{chr(ord('a') + n - 1)}")
    labels = tuple(Label(n, values[n], displays[n]) for n in range(q))
    productions = tuple(tuple(i for i in range(q) for _ in range(rows[k][i])) for k in range(q))
    return SuccessionRule(labels, 0, productions)
