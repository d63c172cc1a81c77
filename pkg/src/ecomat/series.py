"""Truncated formal power series over the rationals.

A :class:`PowerSeries` of order ``N`` carries the coefficients of
``z^0 .. z^N``; everything beyond is unknown.  Binary operations return the
smaller of the operand orders, so precision is never silently invented.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Union

from ecomat.linalg import solve
from ecomat.polynomial import Polynomial, RationalGF, format_terms

Scalar = Union[int, Fraction]


class SeriesError(ArithmeticError):
    """Base class for power-series precondition failures."""


class ZeroConstantTerm(SeriesError):
    pass


class NonzeroInnerConstant(SeriesError):
    pass


class NotReversible(SeriesError):
    pass


class DomainError(SeriesError):
    pass


class UnknownName(KeyError):
    pass


class InsufficientTerms(ValueError):
    pass


class PowerSeries:
    """Immutable truncated power series ``c_0 + c_1 z + ... + c_N z^N + O(z^{N+1})``."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Scalar], order: int | None = None):
        cs = [Fraction(c) for c in coeffs]
        if order is not None:
            if order < 0:
                raise ValueError("order must be nonnegative")
            cs = (cs + [Fraction(0)] * (order + 1))[: order + 1]
        if not cs:
            raise ValueError("a power series needs at least one coefficient")
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("PowerSeries is immutable")

    # -- construction helpers ---------------------------------------------

    @classmethod
    def constant(cls, c: Scalar, order: int) -> PowerSeries:
        return cls([c], order)

    @classmethod
    def z(cls, order: int) -> PowerSeries:
        return cls([0, 1], order)

    @classmethod
    def from_polynomial(cls, p: Polynomial, order: int) -> PowerSeries:
        return cls(p.coeffs or [0], order)

    # -- basic protocol ----------------------------------------------------

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, n: int) -> Fraction:
        if n < 0:
            return Fraction(0)
        if n > self.order:
            raise IndexError(f"coefficient {n} is beyond the truncation order {self.order}")
        return self.coeffs[n]

    def __len__(self) -> int:
        return len(self.coeffs)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PowerSeries):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"PowerSeries({str(self)!r})"

    def __str__(self) -> str:
        body = format_terms([(c, k) for k, c in enumerate(self.coeffs)], "z")
        return f"{body} + O(z^{self.order + 1})"

    def truncate(self, order: int) -> PowerSeries:
        if order > self.order:
            raise ValueError(f"cannot extend a series of order {self.order} to {order}")
        return PowerSeries(self.coeffs[: order + 1])

    def integers(self) -> list[int]:
        """Coefficients as Python ints; raises if any is fractional."""
        out = []
        for c in self.coeffs:
            if c.denominator != 1:
                raise ValueError(f"non-integer coefficient {c}")
            out.append(c.numerator)
        return out

    def valuation(self) -> int | None:
        """Index of the first nonzero coefficient, ``None`` if all known ones vanish."""
        return next((k for k, c in enumerate(self.coeffs) if c != 0), None)

    def shift(self, k: int) -> PowerSeries:
        """Multiply by ``z^k``; negative ``k`` divides and needs the low coefficients to vanish."""
        if k >= 0:
            return PowerSeries([0] * k + list(self.coeffs))
        k = -k
        if any(self.coeffs[:k]):
            raise ZeroConstantTerm(f"cannot divide by z^{k}: low coefficients are nonzero")
        if k > self.order:
            raise ValueError("division by z exhausts the known coefficients")
        return PowerSeries(self.coeffs[k:])

    # -- arithmetic --------------------------------------------------------

    def _coerce(self, other) -> PowerSeries:
        if isinstance(other, PowerSeries):
            return other
        if isinstance(other, (int, Fraction)):
            return PowerSeries.constant(other, self.order)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return add(self, other)

    __radd__ = __add__

    def __neg__(self) -> PowerSeries:
        return PowerSeries(-c for c in self.coeffs)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return add(self, -other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return PowerSeries(c * other for c in self.coeffs)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return mul(self, other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("series divided by zero scalar")
            return PowerSeries(c / Fraction(other) for c in self.coeffs)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return div(self, other)

    def __rtruediv__(self, other):
        return div(self._coerce(other), self)

    def __pow__(self, n: int) -> PowerSeries:
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return div(PowerSeries.constant(1, self.order), self ** (-n))
        result = PowerSeries.constant(1, self.order)
        base = self
        while n:
            if n & 1:
                result = mul(result, base)
            base = mul(base, base)
            n >>= 1
        return result

    def __call__(self, inner: PowerSeries) -> PowerSeries:
        return compose(self, inner)


def add(f: PowerSeries, g: PowerSeries) -> PowerSeries:
    n = min(f.order, g.order)
    return PowerSeries(f.coeffs[k] + g.coeffs[k] for k in range(n + 1))


def mul(f: PowerSeries, g: PowerSeries) -> PowerSeries:
    n = min(f.order, g.order)
    a, b = f.coeffs, g.coeffs
    out = [Fraction(0)] * (n + 1)
    for i in range(n + 1):
        ai = a[i]
        if ai == 0:
            continue
        for j in range(n + 1 - i):
            out[i + j] += ai * b[j]
    return PowerSeries(out)


def div(f: PowerSeries, g: PowerSeries) -> PowerSeries:
    """``f / g`` for ``g(0) != 0``."""
    if g.coeffs[0] == 0:
        raise ZeroConstantTerm("divisor has zero constant term")
    n = min(f.order, g.order)
    a, b = f.coeffs, g.coeffs
    inv0 = 1 / b[0]
    out: list[Fraction] = []
    for k in range(n + 1):
        acc = a[k]
        for j in range(1, k + 1):
            acc -= b[j] * out[k - j]
        out.append(acc * inv0)
    return PowerSeries(out)


def compose(f: PowerSeries, g: PowerSeries) -> PowerSeries:
    """``f(g(z))`` by Horner's scheme; requires ``g(0) == 0``."""
    if g.coeffs[0] != 0:
        raise NonzeroInnerConstant("inner series must have zero constant term")
    n = min(f.order, g.order)
    g = g.truncate(n)
    acc = PowerSeries.constant(f.coeffs[n], n)
    for k in range(n - 1, -1, -1):
        acc = mul(acc, g) + f.coeffs[k]
    return acc


def derivative(f: PowerSeries) -> PowerSeries:
    if f.order == 0:
        raise ValueError("derivative of an order-0 series has no known coefficients")
    return PowerSeries(k * f.coeffs[k] for k in range(1, f.order + 1))


def integral(f: PowerSeries, constant: Scalar = 0) -> PowerSeries:
    return PowerSeries([Fraction(constant)] + [c / (k + 1) for k, c in enumerate(f.coeffs)])


def exp(f: PowerSeries) -> PowerSeries:
    """``exp(f)`` for ``f(0) == 0`` via ``n g_n = sum_k k f_k g_{n-k}``."""
    if f.coeffs[0] != 0:
        raise DomainError("exp needs a zero constant term")
    a = f.coeffs
    out = [Fraction(1)]
    for n in range(1, f.order + 1):
        acc = sum((k * a[k] * out[n - k] for k in range(1, n + 1)), Fraction(0))
        out.append(acc / n)
    return PowerSeries(out)


def log(f: PowerSeries) -> PowerSeries:
    if f.coeffs[0] != 1:
        raise DomainError("log needs constant term 1")
    if f.order == 0:
        return PowerSeries([0])
    return integral(div(derivative(f), f.truncate(f.order - 1)))


def sqrt(f: PowerSeries) -> PowerSeries:
    """Principal square root for ``f(0) == 1``."""
    if f.coeffs[0] != 1:
        raise DomainError("sqrt needs constant term 1")
    a = f.coeffs
    out = [Fraction(1)]
    for n in range(1, f.order + 1):
        acc = a[n] - sum((out[k] * out[n - k] for k in range(1, n)), Fraction(0))
        out.append(acc / 2)
    return PowerSeries(out)


def solve_h_fixed_point(alpha: PowerSeries, order: int) -> PowerSeries:
    """The unique ``h`` with ``h = alpha(z h)`` modulo ``z^{order+1}``."""
    if alpha.coeffs[0] == 0:
        raise ZeroConstantTerm("alpha(0) must be nonzero")
    if alpha.order < order:
        raise ValueError(f"alpha is known only to order {alpha.order} < {order}")
    alpha = alpha.truncate(order)
    h = PowerSeries.constant(alpha.coeffs[0], order)
    # each pass pins at least one more coefficient
    for _ in range(order + 1):
        nxt = compose(alpha, h.shift(1))
        if nxt == h:
            break
        h = nxt
    return h


def reversion(f: PowerSeries) -> PowerSeries:
    """Compositional inverse of ``f`` with ``f(0) = 0`` and ``f'(0) != 0``.

    Writing ``f = z u`` the inverse is ``g = z w`` where ``w = (1/u)(z w)``.
    """
    if f.order < 1 or f.coeffs[0] != 0 or f.coeffs[1] == 0:
        raise NotReversible("need f(0) = 0 and f'(0) != 0")
    u = f.shift(-1)
    w = solve_h_fixed_point(div(PowerSeries.constant(1, u.order), u), u.order)
    return w.shift(1)


def fixed_point(step, start: PowerSeries) -> PowerSeries:
    """Iterate ``step`` from ``start`` until it stabilises (at most order + 2 passes)."""
    cur = start
    for _ in range(start.order + 2):
        nxt = step(cur)
        if nxt == cur:
            return cur
        cur = nxt
    return cur


# -- named series ----------------------------------------------------------

NAMED_SERIES = "CMRSTFB"


@lru_cache(maxsize=None)
def named_series(name: str, order: int) -> PowerSeries:
    """Catalan, Motzkin, large/small Schroeder, ternary, Fine or central binomial gf."""
    if name not in NAMED_SERIES or len(name) != 1:
        raise UnknownName(name)
    z = PowerSeries.z(order + 2)
    one = PowerSeries.constant(1, order + 2)
    if name == "C":
        out = (one - sqrt(one - 4 * z)).shift(-1) / 2
    elif name == "M":
        out = (one - z - sqrt(one - 2 * z - 3 * z * z)).shift(-2) / 2
    elif name == "R":
        out = (one - z - sqrt(one - 6 * z + z * z)).shift(-1) / 2
    elif name == "S":
        out = (one + z - sqrt(one - 6 * z + z * z)).shift(-1) / 4
    elif name == "T":
        zt = PowerSeries.z(order)
        out = fixed_point(lambda t: 1 + zt * t**3, PowerSeries.constant(1, order))
    elif name == "F":
        root = sqrt(one - 4 * z)
        out = (one - root).shift(-1) / (3 - root)
    else:
        out = 1 / sqrt(one - 4 * z)
    return out.truncate(order)


# -- rational fitting ------------------------------------------------------


def fit_rational(series: PowerSeries, max_den_degree: int) -> RationalGF | None:
    """Smallest-denominator rational function reproducing every known coefficient.

    For each candidate denominator degree ``d`` the numerator degree is at
    most ``d``, so the recurrence must hold for ``n > d``; the exact system
    is solved over all available coefficients.
    """
    N = series.order
    if N < 2 * max_den_degree + 2:
        raise InsufficientTerms(f"need order >= {2 * max_den_degree + 2}, have {N}")
    a = series.coeffs
    for d in range(max_den_degree + 1):
        # unknowns q_1..q_d with a_n + sum q_k a_{n-k} = 0 for d < n <= N
        A = [[a[n - k] for k in range(1, d + 1)] for n in range(d + 1, N + 1)]
        b = [-a[n] for n in range(d + 1, N + 1)]
        q = solve(A, b) if d else ([] if not any(b) else None)
        if q is None:
            continue
        den = Polynomial([1] + q)
        num_coeffs = [sum((den[k] * a[n - k] for k in range(0, min(n, d) + 1)), Fraction(0)) for n in range(d + 1)]
        return RationalGF(Polynomial(num_coeffs), den)
    return None
