"""Rational generating functions of production matrices.

A finite production matrix always induces a rational ``f_P``; this module
computes it exactly from the resolvent ``(I - zP)^{-1}``, and relates the
characteristic polynomial, the minimal polynomial, the ``P``-annihilator of
``e`` and the minimal recurrence of the sequence, each dividing the next.

For infinite matrices a linear dependence among ``e, Pe, P^2 e, ...`` also
forces rationality.  Such dependencies can only be observed on a finite
window, so every candidate is certified against ECO iteration before it is
reported.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from ecomat.linalg import bareiss_det, first_dependence, identity, mat_mul, solve
from ecomat.polynomial import Polynomial, RationalGF
from ecomat.prodmat import ExplicitMatrix, ProductionMatrix, RowExprMatrix, sequence
from ecomat.series import InsufficientTerms

FiniteMatrix = ExplicitMatrix


class NotFound(LookupError):
    """No dependence of order at most ``max_order`` exists on the window."""


class Inconsistent(ArithmeticError):
    """A dependence seen on the window fails against ECO iteration."""


def _as_finite(P) -> FiniteMatrix:
    return P if isinstance(P, ExplicitMatrix) else ExplicitMatrix(P)


def _det(rows: list[list[Polynomial]]) -> Polynomial:
    return bareiss_det(rows, Polynomial.exact_div, Polynomial([1]), Polynomial())


# -- finite matrices ---------------------------------------------------------


def rational_gf(P) -> RationalGF:
    """``u^T (I - zP)^{-1} e`` with ``u`` selecting the axiom (row 0).

    By Cramer's rule ``x_0 = det(M_0) / det(M)`` where ``M = I - zP`` and
    ``M_0`` is ``M`` with column 0 replaced by ``e``; both determinants are
    taken fraction-free over ``Q[z]``.
    """
    m = _as_finite(P).matrix
    q = len(m)
    M = [[Polynomial([int(i == j), -m[i][j]]) for j in range(q)] for i in range(q)]
    M0 = [[Polynomial([1])] + row[1:] for row in M]
    return RationalGF(_det(M0), _det(M))


def characteristic_polynomial(P) -> Polynomial:
    """``det(tI - P)``."""
    m = _as_finite(P).matrix
    q = len(m)
    return _det([[Polynomial([-m[i][j], int(i == j)]) for j in range(q)] for i in range(q)])


def minimal_polynomial(P) -> Polynomial:
    """First dependence among the flattened powers ``I, P, P^2, ...``."""
    m = [list(r) for r in _as_finite(P).matrix]
    q = len(m)

    def powers():
        cur = identity(q)
        for _ in range(q + 1):
            yield [x for row in cur for x in row]
            cur = mat_mul(cur, m)

    return Polynomial(first_dependence(powers()))


def krylov_vectors(P, count: int) -> list[list[int]]:
    """``e, Pe, ..., P^{count-1} e`` for a finite ``P``."""
    m = _as_finite(P).matrix
    v = [1] * len(m)
    out = []
    for _ in range(count):
        out.append(v)
        v = [sum(a * x for a, x in zip(row, v)) for row in m]
    return out


def annihilator_of_e(P) -> Polynomial:
    """Least-degree monic ``g`` with ``g(P) e = 0``."""
    q = _as_finite(P).q
    return Polynomial(first_dependence(krylov_vectors(P, q + 1)))


def minimal_sequence_recurrence(terms: Sequence[int]) -> Polynomial:
    """Least-order monic ``t^k + c_1 t^{k-1} + ... + c_k`` with
    ``a_n + c_1 a_{n-1} + ... + c_k a_{n-k} = 0`` for every ``k <= n < len(terms)``.

    Order ``k`` is only tried when ``2k + 1`` terms are available, so each
    fit is checked on at least one equation beyond the ones that pin it.
    """
    a = [Fraction(x) for x in terms]
    N = len(a)
    k = 0
    while 2 * k + 1 <= N:
        A = [[a[n - s] for s in range(1, k + 1)] for n in range(k, N)]
        b = [-a[n] for n in range(k, N)]
        c = solve(A, b) if k else ([] if not any(b) else None)
        if c is not None:
            return Polynomial(list(reversed(c)) + [1])
        k += 1
    raise InsufficientTerms(f"no recurrence of order <= {k - 1} fits {N} terms")


@dataclass(frozen=True)
class DivisorChain:
    characteristic: Polynomial
    minimal: Polynomial
    annihilator: Polynomial
    recurrence: Polynomial

    @property
    def holds(self) -> bool:
        """``recurrence | annihilator | minimal | characteristic``."""
        return (
            self.recurrence.divides(self.annihilator)
            and self.annihilator.divides(self.minimal)
            and self.minimal.divides(self.characteristic)
        )


def divisor_chain(P) -> DivisorChain:
    P = _as_finite(P)
    terms = sequence(P, 2 * P.q + 2)
    return DivisorChain(
        characteristic_polynomial(P),
        minimal_polynomial(P),
        annihilator_of_e(P),
        minimal_sequence_recurrence(terms),
    )


def equivalent(P1, P2) -> bool:
    """Same induced generating function, hence same sequence."""
    return rational_gf(P1) == rational_gf(P2)


# -- recurrences and Krylov detection -------------------------------------


@dataclass(frozen=True)
class RecurrenceReport:
    charpoly_divisor: Polynomial  # monic g with g(P) e = 0
    coefficients: tuple[Fraction, ...]  # c_1..c_k in a_n + c_1 a_{n-1} + ... = 0
    initial_terms: tuple[int, ...]  # a_0..a_{k-1}
    gf: RationalGF

    @property
    def order(self) -> int:
        return self.charpoly_divisor.degree


def report_from_polynomial(g: Polynomial, initial: Sequence[int]) -> RecurrenceReport:
    """Turn ``g`` and ``a_0..a_{k-1}`` into a recurrence and a gf.

    The denominator is the reciprocal polynomial of ``g``; the numerator is
    the product of the denominator and the initial terms, cut at ``z^k``.
    """
    k = g.degree
    if len(initial) < k:
        raise ValueError(f"need {k} initial terms")
    g = g.monic()
    den = g.reverse(k)
    num = [sum((den[s] * initial[n - s] for s in range(n + 1)), Fraction(0)) for n in range(k)]
    coeffs = tuple(g[k - s] for s in range(1, k + 1))
    return RecurrenceReport(g, coeffs, tuple(initial[:k]), RationalGF(Polynomial(num), den))


def _needed_lengths(P: ProductionMatrix, window: int, k: int) -> list[int]:
    """``lengths[s]``: how many entries of ``P^s e`` are needed to know ``P^k e`` on ``window`` entries."""
    lengths = [0] * (k + 1)
    lengths[k] = window
    for s in range(k, 0, -1):
        lengths[s - 1] = max(P.support(i) for i in range(lengths[s])) + 1
    return lengths


def truncated_krylov(P: ProductionMatrix, window: int, k: int) -> list[list[int]]:
    """The first ``window`` entries of ``e, Pe, ..., P^k e``, each computed exactly."""
    lengths = _needed_lengths(P, window, k)
    vectors = []
    v = [1] * lengths[0]
    vectors.append(v)
    for s in range(1, k + 1):
        v = [sum(p * v[j] for j, p in enumerate(P.row(i)) if p) for i in range(lengths[s])]
        vectors.append(v)
    return [vec[:window] for vec in vectors]


def krylov_detect(P: ProductionMatrix, max_order: int = 8, window: int = 24) -> RecurrenceReport:
    """Least ``k <= max_order`` with ``P^k e`` a combination of ``e, ..., P^{k-1} e`` on the window.

    The resulting gf is certified against ``2 * window`` terms of ECO
    iteration.  Raises :class:`NotFound` when no dependence exists on the
    window and :class:`Inconsistent` when the one found does not survive
    certification.
    """
    if max_order < 1:
        raise ValueError("max_order must be positive")
    if window < 2 * max_order + 4:
        raise ValueError(f"window must be at least {2 * max_order + 4} for max_order {max_order}")
    vectors = truncated_krylov(P, window, max_order)
    dep = first_dependence(vectors)
    if dep is None:
        raise NotFound(f"e, Pe, ..., P^{max_order} e are independent on the first {window} entries")
    g = Polynomial(dep)
    report = report_from_polynomial(g, [vec[0] for vec in vectors])
    expected = sequence(P, 2 * window)
    got = report.gf.coefficients(2 * window)
    for n, (x, y) in enumerate(zip(got, expected)):
        if x != y:
            raise Inconsistent(f"dependence {g} predicts a_{n} = {x}, ECO iteration gives {y}")
    return report


# -- the parametric families ---------------------------------------------


def quadratic_family_matrix(alpha: int, beta: int, gamma: int) -> RowExprMatrix:
    """First column ``alpha*i^2 + beta*i + gamma`` (``i`` counted from 1), identity band above."""
    return RowExprMatrix(
        "[j==0]*(a*(i+1)^2+b*(i+1)+g)+[j==i+1]",
        "i+1",
        {"a": alpha, "b": beta, "g": gamma},
    )


def quadratic_family_closed_form(alpha: int, beta: int, gamma: int) -> Polynomial:
    """``t^3 - (alpha+beta+gamma+3) t^2 - (alpha-beta-2gamma-3) t - (gamma+1)``."""
    return Polynomial([-(gamma + 1), -(alpha - beta - 2 * gamma - 3), -(alpha + beta + gamma + 3), 1])


def alpha_family_matrix(alpha: int) -> RowExprMatrix:
    """First column ``alpha, alpha, alpha+1, alpha+1, ...``, column 1 alternating ``0, 1``."""
    return RowExprMatrix(
        "[j==0]*(a+(i-i mod 2)/2)+[j==1]*(i mod 2)+[j==i+1]",
        "i+1",
        {"a": alpha},
    )


def alpha_family_closed_form(alpha: int) -> RationalGF:
    return RationalGF([1, -1], [1, -(alpha + 2), alpha])


def parametric_family_check(alpha: int, beta: int, gamma: int, max_order: int = 8,
                            window: int = 24) -> Polynomial:
    """Detected Krylov polynomial of the quadratic-column family."""
    return krylov_detect(quadratic_family_matrix(alpha, beta, gamma), max_order, window).charpoly_divisor


def alpha_family_check(alpha: int, max_order: int = 8, window: int = 24) -> RationalGF:
    """Detected gf of the alternating-column family."""
    return krylov_detect(alpha_family_matrix(alpha), max_order, window).gf
