"""Ordinary Riordan arrays and Riordan production matrices.

A proper Riordan array ``(d, h)`` has column ``k`` generated by
``d(z) (z h(z))^k``.  Its rows obey a fixed linear rule: column 0 of each new
row is the zeta-combination of the previous row, every other entry the
alpha-combination starting one column to the left.  Those two sequences are
exactly columns 0 and 1 of the production matrix.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from typing import Sequence

from ecomat import series as ps
from ecomat.expr import eval_series
from ecomat.prodmat import RiordanMatrix
from ecomat.series import PowerSeries


class NotRiordan(ValueError):
    def __init__(self, row: int, column: int, detail: str = ""):
        super().__init__(f"row {row}, column {column}" + (f": {detail}" if detail else ""))
        self.row = row
        self.column = column


@dataclass(frozen=True)
class RiordanPair:
    d: PowerSeries
    h: PowerSeries

    def __post_init__(self):
        if self.d[0] == 0:
            raise ValueError("d(0) must be nonzero")

    @property
    def proper(self) -> bool:
        return self.h[0] != 0


@dataclass(frozen=True)
class ZetaAlpha:
    zeta: PowerSeries
    alpha: PowerSeries

    def __post_init__(self):
        if self.alpha[0] == 0:
            raise ValueError("alpha(0) must be nonzero")

    @property
    def order(self) -> int:
        return min(self.zeta.order, self.alpha.order)

    @classmethod
    def from_exprs(cls, zeta: str, alpha: str, order: int) -> ZetaAlpha:
        return cls(eval_series(zeta, order), eval_series(alpha, order))


@dataclass(frozen=True)
class PipelineResult:
    h: PowerSeries
    d: PowerSeries
    f: PowerSeries
    table: tuple[tuple[Fraction, ...], ...]  # table[n][k] = [z^n] d (z h)^k


def _column_powers(d: PowerSeries, h: PowerSeries, n: int) -> list[list[Fraction]]:
    """Columns ``[z^m] d (z h)^k`` for ``0 <= k <= m < n``."""
    zh = h.truncate(n - 1).shift(1).truncate(n - 1)
    col = d.truncate(n - 1)
    table = [[Fraction(0)] * n for _ in range(n)]
    for k in range(n):
        for m in range(k, n):
            table[m][k] = col[m]
        col = col * zh
    return table


def build_riordan_matrix(pair: RiordanPair, n: int) -> list[list[Fraction]]:
    """The ``n x n`` leading block; entry ``(m, k) = [z^m] d (z h)^k``."""
    if min(pair.d.order, pair.h.order) < n - 1:
        raise ValueError(f"d and h must be known to order {n - 1}")
    return _column_powers(pair.d, pair.h, n)


def production_from_zeta_alpha(za: ZetaAlpha) -> RiordanMatrix:
    return RiordanMatrix(za.zeta, za.alpha)


def detect_zeta_alpha(rows: Sequence[Sequence], n: int | None = None) -> ZetaAlpha:
    """Recover zeta and alpha from the first ``n`` rows of a lower-triangular array.

    Row ``m+1`` pins ``alpha_m`` (from column 1) and ``zeta_m`` (from column
    0), each through the diagonal entry ``d[m][m]``; every other entry of the
    row is a consistency check.  The result has order ``n - 2``: nothing is
    claimed about coefficients the rows cannot see.
    """
    n = len(rows) if n is None else n
    if n < 3 or len(rows) < n:
        raise ValueError("need at least three rows")

    def d(m: int, k: int) -> Fraction:
        r = rows[m]
        return Fraction(r[k]) if k < len(r) else Fraction(0)

    for k in range(1, len(rows[0])):
        if d(0, k) != 0:
            raise NotRiordan(0, k, "row 0 must be (1, 0, 0, ...)")
    if d(0, 0) != 1:
        raise NotRiordan(0, 0, "row 0 must be (1, 0, 0, ...)")
    for m in range(n):
        for k in range(m + 1, len(rows[m])):
            if d(m, k) != 0:
                raise NotRiordan(m, k, "array is not lower triangular")

    alpha: list[Fraction] = []
    zeta: list[Fraction] = []
    for m in range(n - 1):
        diag = d(m, m)
        if diag == 0:
            raise NotRiordan(m, m, "zero diagonal entry; the array is not proper")
        # column 1 of row m+1 determines alpha_m
        known = sum((alpha[i] * d(m, i) for i in range(m)), Fraction(0))
        alpha.append((d(m + 1, 1) - known) / diag)
        known = sum((zeta[i] * d(m, i) for i in range(m)), Fraction(0))
        zeta.append((d(m + 1, 0) - known) / diag)
    if alpha[0] == 0:
        raise NotRiordan(1, 1, "alpha_0 = 0")

    # verify every equation the rows provide
    for m in range(n - 1):
        if d(m + 1, 0) != sum((zeta[i] * d(m, i) for i in range(m + 1)), Fraction(0)):
            raise NotRiordan(m + 1, 0)
        for k in range(m + 1):
            expected = sum((alpha[i] * d(m, k + i) for i in range(m - k + 1)), Fraction(0))
            if d(m + 1, k + 1) != expected:
                raise NotRiordan(m + 1, k + 1)
    return ZetaAlpha(PowerSeries(zeta), PowerSeries(alpha))


def gf_pipeline(za: ZetaAlpha, order: int) -> PipelineResult:
    """``h = alpha(z h)``, ``d = 1/(1 - z zeta(z h))``, ``f = d/(1 - z h)`` and ``G(t, z)`` coefficients."""
    if za.order < order:
        raise ValueError(f"zeta/alpha known only to order {za.order}")
    zeta = za.zeta.truncate(order)
    h = ps.solve_h_fixed_point(za.alpha, order)
    zh = h.shift(1)
    d = ps.div(PowerSeries.constant(1, order + 1), 1 - ps.compose(zeta, zh).shift(1))
    f = ps.div(d, 1 - zh)
    d, f = d.truncate(order), f.truncate(order)
    table = tuple(tuple(r) for r in _column_powers(d, h, order + 1))
    return PipelineResult(h=h, d=d, f=f, table=table)


def check_d_equals_h(za: ZetaAlpha, order: int) -> bool:
    """Whether ``alpha - z zeta == 1`` to ``order`` (equivalently ``d == h``)."""
    lhs = za.alpha.truncate(order) - za.zeta.shift(1).truncate(order)
    return lhs == PowerSeries.constant(1, order)


# -- the bundled table of Riordan production matrices -----------------------


@dataclass(frozen=True)
class TableRow:
    number: int
    zeta: str
    alpha: str
    f: str
    terms: tuple[int, ...]
    anumber: str


def parse_table(text: str) -> list[TableRow]:
    """Rows are ``zeta | alpha | f | t0,t1,... | A-number``; ``#`` starts a comment."""
    rows = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        fields = [f.strip() for f in line.split("|")]
        if len(fields) != 5:
            raise ValueError(f"bad table line: {line!r}")
        zeta, alpha, f, terms, anum = fields
        rows.append(TableRow(len(rows) + 1, zeta, alpha, f, tuple(int(t) for t in terms.split(",")), anum))
    return rows


def bundled_table() -> list[TableRow]:
    return parse_table(resources.files("ecomat.data").joinpath("table_s3.txt").read_text())
