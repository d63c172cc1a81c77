"""Parser and evaluators for the two small expression languages.

Integer expressions describe production-matrix entries in terms of the row
index ``i`` and column index ``j``::

    [j==0]*(i+1)*(i+2)/2 + [j==i+1]

Series expressions describe truncated power series in ``z`` (``y`` is an
alias)::

    (1-z)^2/(1-2*z)        (C-1)/z - 1/(1-z)        exp(z)        C(2*z)

Both share one grammar; each evaluator rejects the constructs it does not
support.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Mapping, Union

from ecomat import series as ps
from ecomat.series import PowerSeries


class ExprSyntaxError(ValueError):
    def __init__(self, message: str, text: str, pos: int):
        super().__init__(f"{message} at column {pos + 1} in {text!r}")
        self.pos = pos


class ExprError(ValueError):
    """Evaluation failure: inexact division, bad exponent, unknown name, ..."""


@dataclass(frozen=True)
class Num:
    value: int


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Neg:
    arg: "Node"


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class Call:
    name: str
    args: tuple


@dataclass(frozen=True)
class Iverson:
    cond: "Node"


@dataclass(frozen=True)
class Compare:
    op: str
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class Logic:
    op: str
    left: "Node"
    right: "Node"


Node = Union[Num, Var, Neg, BinOp, Call, Iverson, Compare, Logic]

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(==|!=|<=|>=|[-+*/^()\[\],<>=]))")
_COMPARE = {"==", "!=", "<", "<=", ">", ">=", "="}


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    text_end = len(text.rstrip())
    while pos < text_end:
        m = _TOKEN.match(text, pos)
        if not m:
            raise ExprSyntaxError("unexpected character", text, pos + len(text[pos:]) - len(text[pos:].lstrip()))
        start = m.start(m.lastindex)
        if m.group(1):
            tokens.append(("num", m.group(1), start))
        elif m.group(2):
            word = m.group(2)
            kind = "op" if word in ("mod", "and", "or", "not") else "name"
            tokens.append((kind, word, start))
        else:
            tokens.append(("op", m.group(3), start))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.k = 0

    def peek(self) -> tuple[str, str, int]:
        return self.tokens[self.k]

    def take(self, value: str | None = None) -> tuple[str, str, int]:
        tok = self.tokens[self.k]
        if value is not None and tok[1] != value:
            raise ExprSyntaxError(f"expected {value!r}, found {tok[1] or 'end of input'!r}", self.text, tok[2])
        self.k += 1
        return tok

    def parse(self) -> Node:
        node = self.sum()
        tok = self.peek()
        if tok[0] != "end":
            raise ExprSyntaxError(f"unexpected {tok[1]!r}", self.text, tok[2])
        return node

    def condition(self) -> Node:
        node = self.comparison()
        while self.peek()[1] in ("and", "or"):
            op = self.take()[1]
            node = Logic(op, node, self.comparison())
        return node

    def comparison(self) -> Node:
        if self.peek()[1] == "not":
            self.take()
            return Logic("not", self.comparison(), Num(0))
        left = self.sum()
        if self.peek()[1] in _COMPARE:
            op = self.take()[1]
            return Compare("==" if op == "=" else op, left, self.sum())
        return left

    def sum(self) -> Node:
        node = self.term()
        while self.peek()[1] in ("+", "-"):
            op = self.take()[1]
            node = BinOp(op, node, self.term())
        return node

    def term(self) -> Node:
        node = self.unary()
        while self.peek()[1] in ("*", "/", "mod"):
            op = self.take()[1]
            node = BinOp(op, node, self.unary())
        return node

    def unary(self) -> Node:
        if self.peek()[1] == "-":
            self.take()
            return Neg(self.unary())
        if self.peek()[1] == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self) -> Node:
        base = self.atom()
        if self.peek()[1] == "^":
            self.take()
            return BinOp("^", base, self.unary())
        return base

    def atom(self) -> Node:
        kind, value, pos = self.take()
        if kind == "num":
            return Num(int(value))
        if kind == "name":
            if self.peek()[1] == "(":
                self.take("(")
                args = [self.sum()]
                while self.peek()[1] == ",":
                    self.take()
                    args.append(self.sum())
                self.take(")")
                return Call(value, tuple(args))
            return Var(value)
        if value == "(":
            node = self.sum()
            self.take(")")
            return node
        if value == "[":
            node = self.condition()
            self.take("]")
            return Iverson(node)
        raise ExprSyntaxError(f"unexpected {value or 'end of input'!r}", self.text, pos)


def parse(text: str) -> Node:
    return _Parser(text).parse()


def free_variables(node: Node) -> set[str]:
    if isinstance(node, Var):
        return {node.name}
    if isinstance(node, Num):
        return set()
    if isinstance(node, (Neg, Iverson)):
        return free_variables(node.arg if isinstance(node, Neg) else node.cond)
    if isinstance(node, Call):
        return set().union(*(free_variables(a) for a in node.args))
    return free_variables(node.left) | free_variables(node.right)


# -- integer evaluation ----------------------------------------------------


def _binom(n: int, k: int) -> int:
    if k < 0 or n < 0 or k > n:
        return 0
    return math.comb(n, k)


def _fact(n: int) -> int:
    if n < 0:
        raise ExprError(f"fact of negative number {n}")
    return math.factorial(n)


_INT_FUNCS = {"binom": _binom, "fact": _fact, "min": min, "max": max, "abs": abs}


def eval_int(node: Node, env: Mapping[str, int]) -> int:
    """Exact integer evaluation.

    ``/`` must divide exactly.  ``*`` does not evaluate its right operand
    when the left one is zero, so ``[j<=i]*binom(i-j, 2)`` is safe.
    """
    if isinstance(node, Num):
        return node.value
    if isinstance(node, Var):
        try:
            return env[node.name]
        except KeyError:
            raise ExprError(f"unbound variable {node.name!r}") from None
    if isinstance(node, Neg):
        return -eval_int(node.arg, env)
    if isinstance(node, Iverson):
        return int(bool(eval_int(node.cond, env)))
    if isinstance(node, Compare):
        a, b = eval_int(node.left, env), eval_int(node.right, env)
        return int(
            {"==": a == b, "!=": a != b, "<": a < b, "<=": a <= b, ">": a > b, ">=": a >= b}[node.op]
        )
    if isinstance(node, Logic):
        a = eval_int(node.left, env)
        if node.op == "not":
            return int(not a)
        if node.op == "and":
            return int(bool(a) and bool(eval_int(node.right, env)))
        return int(bool(a) or bool(eval_int(node.right, env)))
    if isinstance(node, Call):
        fn = _INT_FUNCS.get(node.name)
        if fn is None:
            raise ExprError(f"unknown function {node.name!r}")
        return fn(*(eval_int(a, env) for a in node.args))
    left = eval_int(node.left, env)
    if node.op == "*" and left == 0:
        return 0
    right = eval_int(node.right, env)
    if node.op == "+":
        return left + right
    if node.op == "-":
        return left - right
    if node.op == "*":
        return left * right
    if node.op == "/":
        if right == 0:
            raise ExprError("division by zero")
        q, r = divmod(left, right)
        if r:
            raise ExprError(f"inexact division {left}/{right}")
        return q
    if node.op == "mod":
        if right == 0:
            raise ExprError("mod by zero")
        return left % right
    if node.op == "^":
        if right < 0:
            raise ExprError(f"negative exponent {right}")
        return left**right
    raise ExprError(f"unsupported operator {node.op!r}")


class IntExpr:
    """A parsed integer expression, callable with keyword bindings."""

    def __init__(self, text: str, params: Mapping[str, int] | None = None):
        self.text = text
        self.node = parse(text)
        self.params = dict(params or {})

    def __call__(self, **env: int) -> int:
        return eval_int(self.node, {**self.params, **env})

    def __repr__(self) -> str:
        return f"IntExpr({self.text!r})"


# -- series evaluation -----------------------------------------------------

_SERIES_VARS = ("z", "y")


def _int_exponent(node: Node) -> int:
    if isinstance(node, Num):
        return node.value
    if isinstance(node, Neg):
        return -_int_exponent(node.arg)
    raise ExprError("series exponents must be integer literals")


def _series_div(f: PowerSeries, g: PowerSeries) -> PowerSeries:
    if g.coeffs[0] != 0:
        return ps.div(f, g)
    v = g.valuation()
    if v is None:
        raise ExprError("division by a series that vanishes to the working order")
    if f.valuation() is not None and f.valuation() < v:
        raise ExprError(f"quotient is not a power series: numerator is not divisible by z^{v}")
    return ps.div(f.shift(-v), g.shift(-v))


def _eval_series(node: Node, order: int) -> PowerSeries:
    if isinstance(node, Num):
        return PowerSeries.constant(node.value, order)
    if isinstance(node, Var):
        if node.name in _SERIES_VARS:
            return PowerSeries.z(order)
        if node.name in ps.NAMED_SERIES:
            return ps.named_series(node.name, order)
        raise ExprError(f"unknown name {node.name!r}")
    if isinstance(node, Neg):
        return -_eval_series(node.arg, order)
    if isinstance(node, Call):
        if len(node.args) != 1:
            raise ExprError(f"{node.name} takes one argument")
        arg = _eval_series(node.args[0], order)
        try:
            if node.name == "exp":
                return ps.exp(arg)
            if node.name == "log":
                return ps.log(arg)
            if node.name == "sqrt":
                return ps.sqrt(arg)
            if node.name in ps.NAMED_SERIES:
                return ps.compose(ps.named_series(node.name, arg.order), arg)
        except ps.SeriesError as exc:
            raise ExprError(f"{node.name}(...): {exc}") from exc
        raise ExprError(f"unknown function {node.name!r}")
    if isinstance(node, BinOp):
        if node.op == "^":
            return _eval_series(node.left, order) ** _int_exponent(node.right)
        left = _eval_series(node.left, order)
        right = _eval_series(node.right, order)
        if node.op == "+":
            return left + right
        if node.op == "-":
            return left - right
        if node.op == "*":
            return left * right
        if node.op == "/":
            return _series_div(left, right)
    raise ExprError("comparisons, brackets and mod are not available in series expressions")


def eval_series(text_or_node: str | Node, order: int) -> PowerSeries:
    """Evaluate a series expression to exactly ``order``.

    Divisions by powers of ``z`` cost precision, so evaluation is retried at
    a higher working order until the result is known to ``order``.
    """
    node = parse(text_or_node) if isinstance(text_or_node, str) else text_or_node
    work = order
    for _ in range(64):
        result = _eval_series(node, work)
        if result.order >= order:
            return result.truncate(order)
        work += order - result.order
    raise ExprError("could not reach the requested order")

