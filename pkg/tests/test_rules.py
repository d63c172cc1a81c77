import pytest
from hypothesis import given, settings

from ecomat.prodmat import ExplicitMatrix, sequence
from ecomat.rules import (
    ArityMismatch,
    RuleSyntaxError,
    UndefinedLabel,
    format_rule,
    level_profiles,
    level_totals,
    parse_rule,
    rule_from_rows,
    to_production_matrix,
)
from ecomat.polynomial import RationalGF
from strategies import finite_matrices

FIB = "axiom (1); (1) -> (2); (2) -> (1)(2)"
PARITY_FINITE = """
# finite equivalent of the parity-pattern matrix
axiom (2);
(2) -> (2)(3);
(3) -> (2)(3)(4);
(4) -> (2)(2)(3)(4);
"""


def test_fibonacci_rule():
    rule = parse_rule(FIB)
    assert [lab.value for lab in rule.labels] == [1, 2]
    assert rule.axiom == 0
    assert to_production_matrix(rule).matrix == ((0, 1), (1, 1))
    assert level_totals(rule, 7) == [1, 1, 2, 3, 5, 8, 13, 21]


def test_constant_rule():
    rule = parse_rule("axiom (1); (1) -> (1)")
    assert to_production_matrix(rule).matrix == ((1,),)
    assert level_totals(rule, 5) == [1] * 6


def test_undeclared_successor():
    with pytest.raises(UndefinedLabel):
        parse_rule("axiom (2); (2) -> (2)(3)")


def test_arity_mismatch():
    with pytest.raises(ArityMismatch):
        parse_rule("axiom (2); (2) -> (2)")


def test_syntax_error_position():
    with pytest.raises(RuleSyntaxError) as err:
        parse_rule("axiom (1);\n(1) => (1)")
    assert (err.value.line, err.value.column) == (2, 5)
    with pytest.raises(RuleSyntaxError):
        parse_rule("axiom (1); (1) -> (1); (1) -> (1)")
    with pytest.raises(RuleSyntaxError):
        parse_rule("axiom (1);")


def test_colored_labels_are_distinct():
    rule = parse_rule("axiom (2); (2) -> (2)(2a); (2a) -> (2a)(2a)")
    assert [str(lab) for lab in rule.labels] == ["(2)", "(2a)"]
    assert to_production_matrix(rule).matrix == ((1, 1), (0, 2))
    assert level_totals(rule, 4) == [1, 2, 4, 8, 16]
    assert rule_from_rows([[1, 1], [0, 2]]).labels[1].display == "2a"


def test_three_label_rule():
    rule = parse_rule(PARITY_FINITE)
    P = to_production_matrix(rule)
    assert P.matrix == ((1, 1, 0), (1, 1, 1), (2, 1, 1))
    gf = RationalGF([1, -1], [1, -3, 1, -1])
    assert level_totals(rule, 9) == gf.coefficients(10)


def test_axiom_is_row_zero_even_if_declared_later():
    rule = parse_rule("axiom (2); (1) -> (2); (2) -> (1)(2)")
    assert to_production_matrix(rule).matrix == ((1, 1), (1, 0))
    assert level_totals(rule, 4) == [1, 2, 3, 5, 8]


def test_level_profile_zero():
    profiles = level_profiles(parse_rule(PARITY_FINITE), 3)
    assert profiles[0].counts == (1, 0, 0)
    assert profiles[1].counts == (1, 1, 0)
    assert [p.total for p in profiles] == [1, 2, 5, 14]


def test_format_parse_round_trip():
    rule = parse_rule(PARITY_FINITE)
    assert parse_rule(format_rule(rule)) == rule


@settings(max_examples=80, deadline=None)
@given(finite_matrices(max_q=5, max_entry=3))
def test_rule_paths_agree(rows):
    if any(sum(r) == 0 for r in rows):
        return  # a label of value 0 is not a succession rule
    rule = rule_from_rows(rows)
    P = to_production_matrix(rule)
    assert P == ExplicitMatrix(rows)
    totals = level_totals(rule, 7)
    assert totals == sequence(P, 8)
    assert all(t >= 1 for t in totals)
    assert parse_rule(format_rule(rule)) == rule
