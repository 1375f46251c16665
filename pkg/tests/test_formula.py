from contextlib import nullcontext as does_not_raise

import hypothesis
import hypothesis.strategies as strat
import pytest

from partialprob.exceptions import (
    FormulaArityError,
    FormulaLogicError,
    FormulaSyntaxError,
)
from partialprob.formula import (
    N,
    ONE,
    ZERO,
    And,
    Not,
    Or,
    Var,
    conjunction,
    disjunction,
    parse,
)


def formulas(n: int = 2, constants=(ZERO, ONE, N), max_depth: int = 5):
    """Formulas over p0, ..., p{n-1} nested at most max_depth deep."""
    leaves = strat.sampled_from([*constants, *(Var(i) for i in range(n))])
    if max_depth == 0:
        return leaves
    children = formulas(n, constants, max_depth - 1)
    return strat.one_of(
        leaves,
        children.map(Not),
        strat.builds(And, children, children),
        strat.builds(Or, children, children),
    )


@pytest.mark.parametrize(
    "text,expected",
    [
        ("p0", Var(0)),
        ("~~p1", Not(Not(Var(1)))),
        ("p0 | p1 & n", Or(Var(0), And(Var(1), N))),
        ("(p0 | p1) & 0", And(Or(Var(0), Var(1)), ZERO)),
        ("p0 & p1 & p2", And(And(Var(0), Var(1)), Var(2))),
        ("~(p0&1)", Not(And(Var(0), ONE))),
    ],
)
def test_parse(text, expected):
    assert parse(text) == expected


@pytest.mark.parametrize(
    "formula,text",
    [
        (And(Var(0), Not(Var(0))), "p0 & ~p0"),
        (Or(Var(0), And(Var(1), N)), "p0 | p1 & n"),
        (And(Or(Var(0), Var(1)), ZERO), "(p0 | p1) & 0"),
        (And(Var(0), And(Var(1), Var(2))), "p0 & (p1 & p2)"),
        (Not(Or(Var(0), ONE)), "~(p0 | 1)"),
    ],
)
def test_minimal_parentheses(formula, text):
    assert str(formula) == text


@pytest.mark.parametrize(
    "text,n,logic,expectation",
    [
        ("p0 &", None, "kleene", pytest.raises(FormulaSyntaxError)),
        ("p0 ^ p1", None, "kleene", pytest.raises(FormulaSyntaxError)),
        ("p2", 2, "kleene", pytest.raises(FormulaArityError)),
        ("p0 | n", 1, "classical", pytest.raises(FormulaLogicError)),
        ("p1 | 0", 2, "classical", does_not_raise()),
    ],
)
def test_parse_errors(text, n, logic, expectation):
    with expectation:
        parse(text, n, logic)


def test_syntax_error_position():
    with pytest.raises(FormulaSyntaxError) as error:
        parse("p0 & )")
    assert error.value.position == 5


def test_formula_attributes():
    f = parse("~(p0 & n) | p3")
    assert f.depth == 3
    assert f.arity == 4
    assert f.uses_n
    assert ONE.arity == 0
    assert (Var(0) & ~Var(1)) == And(Var(0), Not(Var(1)))


def test_conjunction_and_disjunction():
    assert conjunction([]) == ONE
    assert disjunction([]) == ZERO
    assert conjunction([Var(0), Var(1), Var(2)]) == And(And(Var(0), Var(1)), Var(2))
    assert disjunction([Var(0)]) == Var(0)


@hypothesis.given(formulas())
@hypothesis.settings(max_examples=1000, deadline=None)
def test_printed_text_parses_back(formula):
    assert formula.depth <= 5
    assert parse(str(formula)) == formula
