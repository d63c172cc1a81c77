"""Dense univariate polynomials over the rationals, and rational generating functions."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence, Union

Scalar = Union[int, Fraction]


def _trim(coeffs: Iterable[Scalar]) -> tuple[Fraction, ...]:
    out = [Fraction(c) for c in coeffs]
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


def format_rational(c: Fraction) -> str:
    """``p/q`` for proper fractions, plain ``p`` for integers."""
    c = Fraction(c)
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


def format_terms(terms: Sequence[tuple[Fraction, int]], var: str) -> str:
    """Join ``(coefficient, exponent)`` pairs as ``a + b*x + c*x^2``.

    Unit coefficients are elided in front of a power of ``var``.
    """
    parts: list[str] = []
    for c, e in terms:
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        if e == 0:
            body = format_rational(mag)
        else:
            power = var if e == 1 else f"{var}^{e}"
            body = power if mag == 1 else f"{format_rational(mag)}*{power}"
        if not parts:
            parts.append(body if sign == "+" else f"-{body}")
        else:
            parts.append(f"{sign} {body}")
    return " ".join(parts) if parts else "0"


class Polynomial:
    """Immutable dense polynomial; ``coeffs[k]`` is the coefficient of degree ``k``.

    The zero polynomial has an empty coefficient tuple and degree -1.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Scalar] = ()):
        object.__setattr__(self, "coeffs", _trim(coeffs))

    def __setattr__(self, name, value):
        raise AttributeError("Polynomial is immutable")

    @classmethod
    def monomial(cls, degree: int, coeff: Scalar = 1) -> Polynomial:
        return cls([0] * degree + [coeff])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, k: int) -> Fraction:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return Fraction(0)

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Polynomial([other])
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"Polynomial({[format_rational(c) for c in self.coeffs]})"

    def __str__(self) -> str:
        return self.format()

    def format(self, var: str = "t", descending: bool = True) -> str:
        terms = [(c, k) for k, c in enumerate(self.coeffs)]
        if descending:
            terms.reverse()
        return format_terms(terms, var)

    @staticmethod
    def _coerce(other) -> Polynomial:
        if isinstance(other, Polynomial):
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial([other])
        return NotImplemented

    def __add__(self, other) -> Polynomial:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        n = max(len(self.coeffs), len(other.coeffs))
        return Polynomial(self[k] + other[k] for k in range(n))

    __radd__ = __add__

    def __neg__(self) -> Polynomial:
        return Polynomial(-c for c in self.coeffs)

    def __sub__(self, other) -> Polynomial:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> Polynomial:
        return (-self) + other

    def __mul__(self, other) -> Polynomial:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not self or not other:
            return Polynomial()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Polynomial(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> Polynomial:
        if n < 0:
            raise ValueError("negative polynomial power")
        result = Polynomial([1])
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __divmod__(self, other) -> tuple[Polynomial, Polynomial]:
        other = self._coerce(other)
        if not other:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = other.degree
        lead = other.coeffs[-1]
        quot = [Fraction(0)] * max(len(rem) - dq, 0)
        for k in range(len(rem) - 1, dq - 1, -1):
            c = rem[k] / lead
            if c == 0:
                continue
            quot[k - dq] = c
            for i, b in enumerate(other.coeffs):
                rem[k - dq + i] -= c * b
        return Polynomial(quot), Polynomial(rem[:dq] if dq > 0 else [])

    def __floordiv__(self, other) -> Polynomial:
        return divmod(self, other)[0]

    def __mod__(self, other) -> Polynomial:
        return divmod(self, other)[1]

    def exact_div(self, other) -> Polynomial:
        q, r = divmod(self, other)
        if r:
            raise ArithmeticError(f"{self!r} is not divisible by {other!r}")
        return q

    def divides(self, other: Polynomial) -> bool:
        return not (other % self)

    def monic(self) -> Polynomial:
        if not self:
            return self
        lead = self.coeffs[-1]
        return Polynomial(c / lead for c in self.coeffs)

    def __call__(self, x):
        """Horner evaluation; ``x`` may be any ring element supporting ``*`` and ``+``."""
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def reverse(self, degree: int | None = None) -> Polynomial:
        """``x^degree * p(1/x)``; ``degree`` defaults to ``self.degree``."""
        d = self.degree if degree is None else degree
        padded = list(self.coeffs) + [Fraction(0)] * (d + 1 - len(self.coeffs))
        return Polynomial(reversed(padded[: d + 1]))


def poly_gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    """Monic gcd by Euclid over the rationals; gcd(0, 0) = 0."""
    while b:
        a, b = b, a % b
    return a.monic()


class RationalGF:
    """A reduced fraction ``num/den`` of polynomials in ``z`` with ``den(0) = 1``."""

    __slots__ = ("num", "den")

    def __init__(self, num: Polynomial | Sequence[Scalar], den: Polynomial | Sequence[Scalar]):
        num = num if isinstance(num, Polynomial) else Polynomial(num)
        den = den if isinstance(den, Polynomial) else Polynomial(den)
        if not den:
            raise ZeroDivisionError("zero denominator")
        g = poly_gcd(num, den) if num else Polynomial([1])
        if g.degree > 0:
            num, den = num.exact_div(g), den.exact_div(g)
        if not num:
            den = Polynomial([1])
        c0 = den[0]
        if c0 == 0:
            raise ValueError("denominator vanishes at z = 0; not a power series")
        object.__setattr__(self, "num", Polynomial(c / c0 for c in num.coeffs))
        object.__setattr__(self, "den", Polynomial(c / c0 for c in den.coeffs))

    def __setattr__(self, name, value):
        raise AttributeError("RationalGF is immutable")

    def __eq__(self, other) -> bool:
        if not isinstance(other, RationalGF):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def __repr__(self) -> str:
        return f"RationalGF({self})"

    def __str__(self) -> str:
        return f"({self.num.format('z', descending=False)})/({self.den.format('z', descending=False)})"

    def coefficients(self, count: int) -> list[Fraction]:
        """First ``count`` Taylor coefficients of ``num/den``."""
        den = self.den.coeffs
        out: list[Fraction] = []
        for n in range(count):
            acc = self.num[n]
            for k in range(1, min(n, len(den) - 1) + 1):
                acc -= den[k] * out[n - k]
            out.append(acc)
        return out

    def series(self, order: int):
        from ecomat.series import PowerSeries

        return PowerSeries(self.coefficients(order + 1))
