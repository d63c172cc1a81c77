import math
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings

from ecomat import series as ps
from ecomat.expr import eval_series
from ecomat.prodmat import (
    ExplicitMatrix,
    ExpRiordanMatrix,
    NegativeEntry,
    NonIntegerEntry,
    RiordanMatrix,
    RowExprMatrix,
    TruncationError,
    UnboundedSupport,
    bivariate_table,
    eco_matrix,
    egf_coefficients,
    labels,
    sequence,
)
from ecomat.series import PowerSeries
from strategies import finite_matrices, integral_cr, zeta_alpha_coeffs

EXP = PowerSeries(Fraction(1, math.factorial(n)) for n in range(12))
BELL = RowExprMatrix("i*[j==i]+[j==i+1]", "i+1")
CENTRAL = RowExprMatrix("[j==0]*(i+1)+[j>=1]*[j<=i+1]", "i+1")
FALLING = ExpRiordanMatrix(eval_series("1/(1-y)^2", 10), eval_series("1/(1-y)", 10))
EULERIAN = RiordanMatrix(
    eval_series("(1/((1-z)*(1-2*z))-1)/z", 10), eval_series("1/((1-z)*(1-2*z))", 10)
)


def test_row_riordan_form():
    P = RiordanMatrix(PowerSeries([1, 2, 3, 4, 5]), PowerSeries([1, 1, 1, 1, 1]))
    assert P.row(2, upto=5) == (3, 1, 1, 1, 0, 0)


def test_row_exp_riordan_pascal():
    P = ExpRiordanMatrix(EXP, EXP)
    assert P.row(3, upto=6) == (1, 4, 6, 4, 1, 0, 0)


def test_row_rowexpr():
    P = RowExprMatrix("[j==0]*(i+1)*(i+2)/2+[j==i+1]", "i+1")
    assert P.row(2) == (6, 0, 0, 1)


def test_entry_errors():
    with pytest.raises(NegativeEntry):
        RowExprMatrix("j-1", "i").row(0)
    with pytest.raises(NonIntegerEntry):
        RowExprMatrix("(i+j)/2", "i+1").row(0)
    with pytest.raises(NonIntegerEntry):
        ExplicitMatrix([[Fraction(1, 2)]])
    with pytest.raises(UnboundedSupport):
        eco_matrix(RowExprMatrix("1", None), 3)
    with pytest.raises(ValueError):
        ExplicitMatrix([[1, 0]])


def test_series_forms_stop_at_their_order():
    P = RiordanMatrix(PowerSeries([1, 1]), PowerSeries([1, 1, 1]))
    assert P.max_row == 1
    with pytest.raises(TruncationError):
        P.row(2)


def test_eco_examples():
    assert eco_matrix(CENTRAL, 6).rows[-1] == (126, 70, 35, 15, 5, 1)
    assert eco_matrix(ExplicitMatrix([[1]]), 4).rows == ((1,),) * 4
    assert eco_matrix(FALLING, 6).rows[-1] == (945, 945, 420, 105, 15, 1)


def test_explicit_rows_have_width_q():
    eco = eco_matrix(ExplicitMatrix([[0, 1], [1, 1]]), 3)
    assert eco.rows == ((1, 0), (0, 1), (1, 1))


def test_sequence_examples():
    assert sequence(CENTRAL, 8) == [1, 2, 6, 20, 70, 252, 924, 3432]
    assert sequence(ExplicitMatrix([[0, 1], [1, 1]]), 6) == [1, 1, 2, 3, 5, 8]


def test_bell_sequence_is_the_bell_numbers():
    # independent oracle; the 8th term is 877 (see the acceptance suite)
    assert sequence(BELL, 10) == [sympy.bell(n) for n in range(10)]


def test_labels():
    assert labels(EULERIAN, 5) == [4, 11, 26, 57, 120]
    assert labels(ExpRiordanMatrix(EXP, EXP), 5) == [2, 4, 8, 16, 32]
    assert labels(FALLING, 5) == [sum(FALLING.row(i)) for i in range(5)] == [2, 5, 16, 65, 326]


def test_bivariate_column_zero_is_eco_column_zero():
    table = bivariate_table(CENTRAL, 6)
    assert [row[0] for row in table] == eco_matrix(CENTRAL, 6).column(0)


def test_bivariate_riordan_ones():
    P = RiordanMatrix(PowerSeries.constant(1, 8), PowerSeries.constant(1, 8))
    table = bivariate_table(P, 7)
    assert all(table[n][k] == 1 for n in range(7) for k in range(n + 1))


def test_bivariate_exponential_stirling():
    x, t = sympy.symbols("x t")
    G = sympy.series(sympy.exp(-t * sympy.log(1 - x)) / (1 - x), x, 0, 7).removeO().expand()
    table = bivariate_table(ExpRiordanMatrix(EXP, EXP), 7, exponential=True)
    for n in range(7):
        for k in range(n + 1):
            assert table[n][k] == Fraction(str(G.coeff(x, n).coeff(t, k)))


def test_egf_coefficients():
    z = PowerSeries.z(10)
    assert egf_coefficients(BELL, 11) == ps.compose(ps.exp(z), ps.exp(z) - 1)
    assert egf_coefficients(ExplicitMatrix([[1]]), 8) == ps.exp(PowerSeries.z(7))
    seq = [1, 2, 7, 37, 266, 2431]
    assert egf_coefficients(FALLING, 6) == PowerSeries(Fraction(a, math.factorial(n)) for n, a in enumerate(seq))


def _two_derivations(P, n):
    eco = eco_matrix(P, n + 1)
    seq = eco.row_sums()
    for m in range(n):
        assert seq[m + 1] == sum(d * P.row_sum(k) for k, d in enumerate(eco.rows[m]) if d)


def test_sequence_two_derivations():
    for P in (CENTRAL, BELL, FALLING, EULERIAN, ExplicitMatrix([[2, 1, 1, 0], [0, 3, 0, 0], [0, 1, 2, 1], [0, 1, 1, 3]])):
        _two_derivations(P, 7)


@settings(max_examples=50, deadline=None)
@given(zeta_alpha_coeffs())
def test_riordan_eco_is_lower_triangular(za):
    zeta, alpha = za
    eco = eco_matrix(RiordanMatrix(PowerSeries(zeta), PowerSeries(alpha)), 8)
    for n, row in enumerate(eco.rows):
        assert len(row) <= n + 1
        assert eco.entry(n, n) == alpha[0] ** n
        assert all(v >= 0 for v in row)


@settings(max_examples=50, deadline=None)
@given(finite_matrices(max_q=5, max_entry=3))
def test_finite_two_derivations(rows):
    _two_derivations(ExplicitMatrix(rows), 6)


@settings(max_examples=50, deadline=None)
@given(integral_cr())
def test_exp_riordan_superdiagonal(cr):
    P = ExpRiordanMatrix(*cr)
    for i in range(P.max_row + 1):
        row = P.row(i, upto=i + 3)
        assert row[i + 1] == cr[1][0]
        assert row[i + 2:] == (0, 0)
