from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from ecomat.linalg import bareiss_det, first_dependence, mat_mul, solve
from ecomat.polynomial import Polynomial, RationalGF, poly_gcd

t = sympy.Symbol("t")
ints = st.integers(-6, 6)


def to_sympy(p):
    return sum(sympy.Rational(c.numerator, c.denominator) * t**k for k, c in enumerate(p.coeffs))


def test_zero_polynomial():
    assert Polynomial([0, 0]).coeffs == ()
    assert Polynomial().degree == -1
    assert str(Polynomial()) == "0"


def test_format_descending():
    p = Polynomial([30, -55, 36, -10, 1])
    assert str(p) == "t^4 - 10*t^3 + 36*t^2 - 55*t + 30"
    assert Polynomial([-1, Fraction(1, 2)]).format("z", descending=False) == "-1 + 1/2*z"


def test_divmod_and_divides():
    m = Polynomial([30, -55, 36, -10, 1])
    g = Polynomial([-15, 20, -8, 1])
    q, r = divmod(m, g)
    assert q == Polynomial([-2, 1]) and r == Polynomial()
    assert g.divides(m)
    assert not m.divides(g)
    with pytest.raises(ArithmeticError):
        g.exact_div(Polynomial([1, 1]))


def test_gcd_is_monic():
    a = Polynomial([-2, 0, 2])  # 2(t-1)(t+1)
    b = Polynomial([3, -3])  # -3(t-1)
    assert poly_gcd(a, b) == Polynomial([-1, 1])


def test_rational_gf_reduces_and_normalizes():
    gf = RationalGF([2, -2], [2, -4, 2])  # 2(1-z) / 2(1-z)^2
    assert gf.num == Polynomial([1]) and gf.den == Polynomial([1, -1])
    assert str(gf) == "(1)/(1 - z)"
    assert gf.coefficients(4) == [1, 1, 1, 1]
    with pytest.raises(ValueError):
        RationalGF([1], [0, 1])


@settings(max_examples=60, deadline=None)
@given(st.lists(ints, max_size=5), st.lists(ints, min_size=1, max_size=4))
def test_divmod_against_sympy(a, b):
    A, B = Polynomial(a), Polynomial(b)
    if not B:
        return
    q, r = divmod(A, B)
    sq, sr = sympy.div(to_sympy(A), to_sympy(B), t)
    assert sympy.expand(to_sympy(q) - sq) == 0
    assert sympy.expand(to_sympy(r) - sr) == 0
    assert q * B + r == A


def test_solve_consistent_and_inconsistent():
    assert solve([[1, 1], [1, -1]], [3, 1]) == [2, 1]
    assert solve([[1, 1], [2, 2]], [1, 3]) is None
    x = solve([[1, 2]], [4])
    assert x[0] + 2 * x[1] == 4


def test_first_dependence():
    vecs = [[1, 0], [0, 1], [2, 3]]
    assert first_dependence(vecs) == [-2, -3, 1]
    assert first_dependence([[1, 0, 0], [0, 1, 0]]) is None


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 4).flatmap(lambda n: st.lists(st.lists(ints, min_size=n, max_size=n), min_size=n, max_size=n)))
def test_bareiss_matches_sympy(rows):
    det = bareiss_det(rows, lambda a, b: Fraction(a) / b, Fraction(1), Fraction(0))
    assert det == sympy.Matrix(rows).det()


def test_bareiss_over_polynomials():
    one = Polynomial([1])
    M = [[Polynomial([1]), Polynomial([0, -1])], [Polynomial([0, -1]), Polynomial([1, -1])]]
    assert bareiss_det(M, Polynomial.exact_div, one, Polynomial()) == Polynomial([1, -1, -1])


def test_mat_mul():
    assert mat_mul([[1, 2]], [[3], [4]]) == [[11]]
