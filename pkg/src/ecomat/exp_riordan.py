"""Exponential Riordan arrays and their production matrices.

Column ``k`` of ``[d, h]`` has exponential generating function
``d(z) (z h(z))^k / k!``.  The c- and r-sequences play the role of zeta and
alpha; they are tied to ``d, h`` by ``r(z h) = (z h)'`` and
``c(z h) = d'/d``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from ecomat import series as ps
from ecomat.prodmat import ExpRiordanMatrix, ProductionMatrix, exp_riordan_entry
from ecomat.series import PowerSeries


@dataclass(frozen=True)
class ExpRiordanPair:
    d: PowerSeries
    h: PowerSeries

    def __post_init__(self):
        if self.d[0] == 0 or self.h[0] == 0:
            raise ValueError("an exponential Riordan pair needs d(0) != 0 and h(0) != 0")

    @property
    def order(self) -> int:
        return min(self.d.order, self.h.order)


@dataclass(frozen=True)
class CRPair:
    c: PowerSeries
    r: PowerSeries

    @property
    def order(self) -> int:
        return min(self.c.order, self.r.order)


def build_exp_riordan(pair: ExpRiordanPair, n: int) -> list[list[Fraction]]:
    """Leading ``n x n`` block: ``a[m][k] = m!/k! [z^m] d (z h)^k``."""
    if pair.order < n - 1:
        raise ValueError(f"d and h must be known to order {n - 1}")
    zh = pair.h.truncate(n - 1).shift(1).truncate(n - 1)
    col = pair.d.truncate(n - 1)
    out = [[Fraction(0)] * n for _ in range(n)]
    for k in range(n):
        for m in range(k, n):
            out[m][k] = col[m] * Fraction(math.factorial(m), math.factorial(k))
        col = col * zh
    return out


def production_from_cr(cr: CRPair) -> ExpRiordanMatrix:
    return ExpRiordanMatrix(cr.c, cr.r)


def cr_from_dh(pair: ExpRiordanPair, order: int) -> CRPair:
    """Solve ``r(w) = w'`` and ``c(w) = d'/d`` for ``w = z h`` via the reversion of ``w``.

    Needs ``d`` and ``h`` to order ``order + 1``.
    """
    if pair.order < order + 1:
        raise ValueError(f"d and h must be known to order {order + 1}")
    w = pair.h.truncate(order + 1).shift(1)
    g = ps.reversion(w)
    r = ps.compose(ps.derivative(w), g)
    d = pair.d.truncate(order + 1)
    c = ps.compose(ps.div(ps.derivative(d), d.truncate(order)), g)
    return CRPair(c.truncate(order), r.truncate(order))


def dh_from_cr(cr: CRPair, order: int) -> ExpRiordanPair:
    """Integrate ``w' = r(w), w(0) = 0`` and ``d' = d c(w), d(0) = 1``; ``h = w / z``."""
    if cr.order < order:
        raise ValueError(f"c and r must be known to order {order}")
    if cr.r[0] == 0:
        raise ValueError("r(0) = 0 gives h(0) = 0")
    r = cr.r.truncate(order)
    # every pass fixes the next coefficient of w
    w = ps.fixed_point(lambda cur: ps.integral(ps.compose(r, cur.truncate(order))), PowerSeries([0], order + 1))
    h = w.shift(-1)
    d = ps.exp(ps.integral(ps.compose(cr.c.truncate(order), w.truncate(order))))
    return ExpRiordanPair(d.truncate(order), h.truncate(order))


def phi_bivariate(cr: CRPair, order: int) -> list[list[Fraction]]:
    """``table[n][k] = [t^k z^n] e^{tz} (c(z) + t r(z))`` for ``n <= order``.

    Built as a product of bivariate series (``e^{tz}`` has ``1/k!`` at
    ``(k, k)``); multiplying row ``n`` by ``n!`` recovers ``p[n][k]``.
    """
    if cr.order < order:
        raise ValueError(f"c and r must be known to order {order}")
    n_max = order
    # factor: c(z) contributes t^0 z^m, t r(z) contributes t^1 z^m
    factor = {(m, 0): cr.c[m] for m in range(n_max + 1)}
    for m in range(n_max + 1):
        factor[(m, 1)] = factor.get((m, 1), Fraction(0)) + cr.r[m]
    table = [[Fraction(0)] * (n_max + 2) for _ in range(n_max + 1)]
    for k in range(n_max + 1):
        e = Fraction(1, math.factorial(k))
        for (m, tk), v in factor.items():
            if v and k + m <= n_max:
                table[k + m][k + tk] += e * v
    return table


def phi_labels(cr: CRPair, count: int) -> list[int]:
    """Row sums of ``P`` read off ``phi(1, z) = e^z (c(z) + r(z))``."""
    z = PowerSeries.z(count - 1)
    egf = ps.exp(z) * (cr.c.truncate(count - 1) + cr.r.truncate(count - 1))
    out = []
    for n in range(count):
        v = egf[n] * math.factorial(n)
        if v.denominator != 1:
            raise ValueError(f"label {n} = {v} is not an integer")
        out.append(v.numerator)
    return out


def diag_characterization_check(P: ProductionMatrix, depth: int, c: PowerSeries | None = None,
                                r: PowerSeries | None = None) -> bool:
    """Check the diagonal structure of an exponential Riordan production matrix.

    ``diag(-1)`` is constant; for ``0 <= m <= depth``, ``diag(m)`` divided by
    ``(k+1)(k+2)...(k+m)`` is an arithmetic progression; everything above
    the superdiagonal vanishes.  When ``c`` and ``r`` are given (default: taken
    from ``P`` if it carries them) the first terms must be ``c_m`` and the
    ratios ``r_{m+1}``.
    """
    if c is None and isinstance(P, ExpRiordanMatrix):
        c, r = P.c, P.r
    last = P.max_row if P.max_row is not None else depth + 4
    if last < depth + 2:
        raise ValueError("not enough rows to test that depth")

    for i in range(last + 1):
        row = P.row(i)
        if any(row[j] for j in range(i + 2, len(row))):
            return False

    sup = [P.entry(k - 1, k) for k in range(1, last + 2)]
    if len(set(sup)) != 1:
        return False
    if r is not None and sup[0] != r[0]:
        return False

    for m in range(depth + 1):
        quotients = []
        for k in range(last - m + 1):
            scale = math.prod(range(k + 1, k + m + 1))
            quotients.append(Fraction(P.entry(m + k, k), scale))
        diffs = {b - a for a, b in zip(quotients, quotients[1:])}
        if len(diffs) > 1:
            return False
        if c is not None and quotients[0] != c[m]:
            return False
        if r is not None and diffs and m + 1 <= r.order and diffs.pop() != r[m + 1]:
            return False
    return True


def check_formula_entries(P: ProductionMatrix, cr: CRPair, rows: int) -> bool:
    return all(
        Fraction(P.entry(i, j)) == exp_riordan_entry(cr.c, cr.r, i, j) for i in range(rows) for j in range(i + 3)
    )


def ordinary_to_exponential(rows: Sequence[Sequence]) -> list[list[Fraction]]:
    """``alpha[n][k] = n!/k! a[n][k]`` turns ``(d, h)`` into ``[d, h]``."""
    out = []
    for n, row in enumerate(rows):
        for k in range(n + 1, len(row)):
            if row[k] != 0:
                raise ValueError("input must be lower triangular")
        out.append([Fraction(v) * Fraction(math.factorial(n), math.factorial(k)) if k <= n else Fraction(0)
                    for k, v in enumerate(row)])
    return out
