"""Production matrices and the ECO matrices they induce.

A production matrix is realised lazily, row by row, from one of four
representations:

* :class:`ExplicitMatrix` -- a finite ``q x q`` table (a finite rule);
* :class:`RowExprMatrix` -- an integer formula in ``i, j`` plus a caller
  certified bound on the last nonzero column of row ``i``;
* :class:`RiordanMatrix` -- the zeta/alpha layout, row ``k`` being
  ``(zeta_k, alpha_k, alpha_{k-1}, ..., alpha_0, 0, ...)``;
* :class:`ExpRiordanMatrix` -- ``p[i][j] = i!/j! (c_{i-j} + j r_{i-j+1})``.

Row ``n`` of the ECO matrix is the label distribution at level ``n`` of the
generating tree: ``row_0 = (1, 0, ...)`` and ``row_{n+1} = row_n P``.
"""

from __future__ import annotations

import math
from abc import ABC, abstractmethod
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from ecomat.expr import ExprError, IntExpr
from ecomat.series import PowerSeries


class EntryError(ValueError):
    """A realised entry is not a nonnegative integer."""


class NegativeEntry(EntryError):
    pass


class NonIntegerEntry(EntryError):
    pass


class UnboundedSupport(ValueError):
    pass


class TruncationError(ValueError):
    """A row beyond the known precision of a series-defined matrix was requested."""


def _check_entry(value, where: str) -> int:
    if isinstance(value, Fraction):
        if value.denominator != 1:
            raise NonIntegerEntry(f"{where} = {value} is not an integer")
        value = value.numerator
    if value < 0:
        raise NegativeEntry(f"{where} = {value} is negative")
    return int(value)


class ProductionMatrix(ABC):
    kind: str = ""

    @property
    def max_row(self) -> int | None:
        """Index of the last realisable row, ``None`` when unbounded."""
        return None

    @abstractmethod
    def support(self, i: int) -> int:
        """Largest column index that may be nonzero in row ``i``."""

    @abstractmethod
    def _row(self, i: int) -> tuple[int, ...]:
        """Entries ``p[i][0..support(i)]``."""

    def row(self, i: int, upto: int | None = None) -> tuple[int, ...]:
        """Entries ``p[i][0..upto]`` (default: through the row's support)."""
        if self.max_row is not None and i > self.max_row:
            raise TruncationError(f"row {i} is beyond the realisable rows 0..{self.max_row}")
        full = self._row(i)
        if upto is None:
            return full
        return (full + (0,) * (upto + 1 - len(full)))[: upto + 1]

    def entry(self, i: int, j: int) -> int:
        full = self.row(i)
        return full[j] if j < len(full) else 0

    def rows(self, count: int) -> list[tuple[int, ...]]:
        return [self.row(i) for i in range(count)]

    def row_sum(self, i: int) -> int:
        return sum(self.row(i))


class ExplicitMatrix(ProductionMatrix):
    kind = "explicit"

    def __init__(self, rows: Sequence[Sequence[int]]):
        q = len(rows)
        if q == 0:
            raise ValueError("empty production matrix")
        clean = []
        for i, r in enumerate(rows):
            if len(r) != q:
                raise ValueError(f"row {i} has {len(r)} entries; a finite production matrix is square ({q}x{q})")
            clean.append(tuple(_check_entry(Fraction(v), f"p[{i}][{j}]") for j, v in enumerate(r)))
        self._rows = tuple(clean)

    @property
    def q(self) -> int:
        return len(self._rows)

    @property
    def max_row(self) -> int:
        return self.q - 1

    @property
    def matrix(self) -> tuple[tuple[int, ...], ...]:
        return self._rows

    def support(self, i: int) -> int:
        return self.q - 1

    def _row(self, i: int) -> tuple[int, ...]:
        return self._rows[i]

    def __eq__(self, other) -> bool:
        return isinstance(other, ExplicitMatrix) and self._rows == other._rows

    def __hash__(self) -> int:
        return hash(self._rows)

    def __repr__(self) -> str:
        return f"ExplicitMatrix({[list(r) for r in self._rows]})"


class RowExprMatrix(ProductionMatrix):
    """Entries from an integer expression in ``i`` and ``j``.

    ``support`` is an expression in ``i`` giving the last column that may be
    nonzero; columns beyond it are never evaluated.
    """

    kind = "rowexpr"

    def __init__(self, entry: str, support: str | None, params: Mapping[str, int] | None = None):
        self.entry_expr = IntExpr(entry, params)
        self.support_expr = IntExpr(support, params) if support is not None else None
        self.params = dict(params or {})
        self._cache: dict[int, tuple[int, ...]] = {}

    def support(self, i: int) -> int:
        if self.support_expr is None:
            raise UnboundedSupport("a row-expression matrix needs a support bound")
        s = self.support_expr(i=i)
        if s < 0:
            raise ValueError(f"support bound of row {i} is negative")
        return s

    def _row(self, i: int) -> tuple[int, ...]:
        cached = self._cache.get(i)
        if cached is None:
            vals = []
            for j in range(self.support(i) + 1):
                try:
                    v = self.entry_expr(i=i, j=j)
                except ExprError as exc:
                    raise NonIntegerEntry(f"p[{i}][{j}]: {exc}") from exc
                vals.append(_check_entry(v, f"p[{i}][{j}]"))
            cached = self._cache[i] = tuple(vals)
        return cached

    def __repr__(self) -> str:
        return f"RowExprMatrix({self.entry_expr.text!r}, support={self.support_expr.text if self.support_expr else None!r})"


class RiordanMatrix(ProductionMatrix):
    """Columns 0 and 1 are the zeta- and alpha-sequences; column ``k+1`` is alpha shifted down ``k``."""

    kind = "riordan"

    def __init__(self, zeta: PowerSeries, alpha: PowerSeries):
        self.zeta = zeta
        self.alpha = alpha
        m = self.max_row + 1
        self._zeta = [_check_entry(c, f"zeta_{n}") for n, c in enumerate(zeta.coeffs[:m])]
        self._alpha = [_check_entry(c, f"alpha_{n}") for n, c in enumerate(alpha.coeffs[:m])]

    @property
    def max_row(self) -> int:
        return min(self.zeta.order, self.alpha.order)

    def support(self, i: int) -> int:
        return i + 1

    def _row(self, i: int) -> tuple[int, ...]:
        return (self._zeta[i],) + tuple(self._alpha[i - k] for k in range(i + 1))

    def __repr__(self) -> str:
        return f"RiordanMatrix(zeta={self.zeta}, alpha={self.alpha})"


def exp_riordan_entry(c: PowerSeries, r: PowerSeries, i: int, j: int) -> Fraction:
    """``i!/j! (c_{i-j} + j r_{i-j+1})`` with ``c_{-1} = 0``; zero above the superdiagonal."""
    if j > i + 1:
        return Fraction(0)
    ci = c[i - j] if i - j >= 0 else Fraction(0)
    rj = r[i - j + 1] if j else Fraction(0)
    return Fraction(math.factorial(i), math.factorial(j)) * (ci + j * rj)


class ExpRiordanMatrix(ProductionMatrix):
    kind = "exp-riordan"

    def __init__(self, c: PowerSeries, r: PowerSeries):
        self.c = c
        self.r = r
        self._rows = tuple(
            tuple(_check_entry(exp_riordan_entry(c, r, i, j), f"p[{i}][{j}]") for j in range(i + 2))
            for i in range(self.max_row + 1)
        )

    @property
    def max_row(self) -> int:
        return min(self.c.order, self.r.order)

    def support(self, i: int) -> int:
        return i + 1

    def _row(self, i: int) -> tuple[int, ...]:
        return self._rows[i]

    def __repr__(self) -> str:
        return f"ExpRiordanMatrix(c={self.c}, r={self.r})"


# -- ECO iteration ---------------------------------------------------------


@dataclass(frozen=True)
class EcoMatrix:
    rows: tuple[tuple[int, ...], ...]

    @property
    def levels(self) -> int:
        return len(self.rows)

    def row_sums(self) -> list[int]:
        return [sum(r) for r in self.rows]

    def column(self, k: int) -> list[int]:
        return [r[k] if k < len(r) else 0 for r in self.rows]

    def entry(self, n: int, k: int) -> int:
        r = self.rows[n]
        return r[k] if k < len(r) else 0


def _trim(row: list[int]) -> tuple[int, ...]:
    end = len(row)
    while end > 1 and row[end - 1] == 0:
        end -= 1
    return tuple(row[:end])


def step(P: ProductionMatrix, dist: Sequence[int]) -> list[int]:
    """One level of the generating tree: ``dist * P``."""
    out: list[int] = []
    for i, d in enumerate(dist):
        if not d:
            continue
        row = P.row(i)
        if len(row) > len(out):
            out.extend([0] * (len(row) - len(out)))
        for k, p in enumerate(row):
            if p:
                out[k] += d * p
    return out


def eco_matrix(P: ProductionMatrix, levels: int) -> EcoMatrix:
    """The first ``levels`` rows of the ECO matrix of ``P``."""
    if levels < 1:
        raise ValueError("levels must be positive")
    if isinstance(P, ExplicitMatrix):
        first = [1] + [0] * (P.q - 1)
        rows = [tuple(first)]
        for _ in range(levels - 1):
            nxt = step(P, rows[-1])
            rows.append(tuple(nxt + [0] * (P.q - len(nxt))))
        return EcoMatrix(tuple(rows))
    rows = [(1,)]
    for _ in range(levels - 1):
        rows.append(_trim(step(P, rows[-1]) or [0]))
    return EcoMatrix(tuple(rows))


def sequence(P: ProductionMatrix, terms: int) -> list[int]:
    """``a_0 .. a_{terms-1}`` with ``a_n = u^T P^n e`` (ECO row sums)."""
    return eco_matrix(P, terms).row_sums()


def labels(P: ProductionMatrix, count: int) -> list[int]:
    """Row sums of rows ``0..count-1``: the labels of the generating tree."""
    return [P.row_sum(i) for i in range(count)]


def bivariate_table(P: ProductionMatrix, levels: int, exponential: bool = False) -> list[list[Fraction]]:
    """``table[n][k] = [t^k z^n] G(t, z)``.

    With ``exponential=True`` row ``n`` is divided by ``n!`` (ordinary in
    ``t``, exponential in ``z``), the natural view for exponential Riordan
    matrices.
    """
    eco = eco_matrix(P, levels)
    out = []
    for n, row in enumerate(eco.rows):
        scale = Fraction(1, math.factorial(n)) if exponential else Fraction(1)
        out.append([Fraction(v) * scale for v in row])
    return out


def egf_coefficients(P: ProductionMatrix, terms: int) -> PowerSeries:
    """The series ``sum a_n z^n / n!`` to order ``terms - 1``."""
    seq = sequence(P, terms)
    return PowerSeries(Fraction(a, math.factorial(n)) for n, a in enumerate(seq))
