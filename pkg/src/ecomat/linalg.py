"""Exact linear algebra over the rationals and over polynomial rings.

Everything here is elimination-based and exact; there is no pivoting for
stability because there is no rounding.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Iterable, Sequence, TypeVar

T = TypeVar("T")


def solve(A: Sequence[Sequence], b: Sequence) -> list[Fraction] | None:
    """Return one solution of ``A x = b``, or ``None`` if the system is inconsistent.

    ``A`` may be over- or under-determined; free variables are set to zero.
    """
    rows = len(A)
    cols = len(A[0]) if rows else 0
    M = [[Fraction(v) for v in A[r]] + [Fraction(b[r])] for r in range(rows)]
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        p = next((k for k in range(r, rows) if M[k][c] != 0), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        inv = 1 / M[r][c]
        M[r] = [v * inv for v in M[r]]
        for k in range(rows):
            if k != r and M[k][c] != 0:
                f = M[k][c]
                M[k] = [a - f * b_ for a, b_ in zip(M[k], M[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    if any(M[k][cols] != 0 for k in range(r, rows)):
        return None
    x = [Fraction(0)] * cols
    for k, c in enumerate(pivots):
        x[c] = M[k][cols]
    return x


def first_dependence(vectors: Iterable[Sequence]) -> list[Fraction] | None:
    """Find the first vector in the stream that lies in the span of its predecessors.

    Returns monic coefficients ``[c_0, ..., c_{k-1}, 1]`` with
    ``sum(c_i * v_i) == 0``, or ``None`` if the stream runs out first.
    """
    basis: list[tuple[int, list[Fraction], list[Fraction]]] = []
    for k, v in enumerate(vectors):
        vec = [Fraction(x) for x in v]
        combo = [Fraction(0)] * k + [Fraction(1)]
        for pivot, bvec, bcombo in basis:
            f = vec[pivot]
            if f != 0:
                vec = [a - f * b for a, b in zip(vec, bvec)]
                combo = [a - f * b for a, b in zip(combo, bcombo + [Fraction(0)] * (len(combo) - len(bcombo)))]
        pivot = next((i for i, x in enumerate(vec) if x != 0), None)
        if pivot is None:
            return [c / combo[k] for c in combo]
        inv = 1 / vec[pivot]
        basis.append((pivot, [x * inv for x in vec], [x * inv for x in combo]))
    return None


def bareiss_det(matrix: Sequence[Sequence[T]], exact_div: Callable[[T, T], T], one: T, zero: T) -> T:
    """Fraction-free determinant over an integral domain.

    ``exact_div(a, b)`` must return ``a / b`` when the division is exact in the
    ring; Bareiss guarantees it always is.
    """
    M = [list(row) for row in matrix]
    n = len(M)
    if n == 0:
        return one
    sign = 1
    prev = one
    for k in range(n - 1):
        if M[k][k] == zero:
            swap = next((r for r in range(k + 1, n) if M[r][k] != zero), None)
            if swap is None:
                return zero
            M[k], M[swap] = M[swap], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = exact_div(M[k][k] * M[i][j] - M[i][k] * M[k][j], prev)
        prev = M[k][k]
    det = M[n - 1][n - 1]
    return det if sign > 0 else -det


def mat_mul(A: Sequence[Sequence], B: Sequence[Sequence]) -> list[list]:
    cols = len(B[0]) if B else 0
    return [[sum(a * B[k][j] for k, a in enumerate(row)) for j in range(cols)] for row in A]


def mat_vec(A: Sequence[Sequence], v: Sequence) -> list:
    return [sum(a * x for a, x in zip(row, v)) for row in A]


def identity(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]
