import hypothesis
import pytest

from partialprob.exceptions import (
    CapExceededError,
    FormulaArityError,
    FormulaLogicError,
    InvalidConfigurationError,
)
from partialprob.formula import N, ONE, ZERO, Var, parse
from partialprob.kleene import (
    consequence,
    equivalent,
    eval_classical,
    eval_kleene,
    formula_corpus,
    kleene_lindenbaum_algebra,
    kleene_space,
    meaning,
    meaning_classical,
    meaning_from_eval,
    meaning_kleene,
    value_from_meaning,
    world_label,
    worlds,
)
from test_formula import formulas


def test_worlds():
    assert worlds(1) == ("0", "n", "1")
    assert worlds(2)[:4] == ("00", "0n", "01", "n0")
    assert worlds(2, "classical") == ("00", "01", "10", "11")
    assert worlds(0) == ("",)
    assert world_label("") == "()"
    assert kleene_space(1).points == ("0", "n", "1")
    with pytest.raises(InvalidConfigurationError):
        worlds(1, "fuzzy")


@pytest.mark.parametrize(
    "text,world,value",
    [
        ("p0 & ~p0", "n", "n"),
        ("1", "0", "1"),
        ("1", "()", "1"),
        ("p0 | p1", "0n", "n"),
        ("p0 | p1", "n1", "1"),
        ("~p1 & p0", "1n", "n"),
        ("n | ~n", "", "n"),
    ],
)
def test_eval_kleene(text, world, value):
    assert eval_kleene(parse(text), world) == value


def test_eval_errors():
    with pytest.raises(FormulaArityError):
        eval_kleene(Var(2), "01")
    with pytest.raises(InvalidConfigurationError):
        eval_kleene(Var(0), "x")
    with pytest.raises(InvalidConfigurationError):
        eval_classical(Var(0), "n")
    with pytest.raises(FormulaLogicError):
        eval_classical(N, "0")
    assert eval_classical(parse("p0 | ~p1"), "01") == "0"


def test_meaning_kleene():
    assert meaning_kleene(Var(0), 1).label == "{1}|{0}"
    assert meaning_kleene(N, 1).label == "{}|{}"
    assert meaning_kleene(ONE, 1).label == "{0,n,1}|{}"
    assert meaning_kleene(parse("p0 | ~p0"), 1).label == "{0,1}|{}"
    assert meaning(Var(0), 1, "classical") == frozenset({"1"})
    assert meaning_classical(Var(0), 2) == frozenset({"10", "11"})


def test_equivalence():
    assert equivalent(parse("~(p0 & p1)"), parse("~p0 | ~p1"), 2)
    assert equivalent(parse("~~p0"), Var(0), 1)
    assert not equivalent(ONE, parse("p0 | ~p0"), 1)
    assert equivalent(ONE, parse("p0 | ~p0"), 1, "classical")


@pytest.mark.parametrize(
    "premises,conclusion,logic,holds,counter_world",
    [
        (["p0 & ~p0"], "n", "kleene", True, None),
        (["n"], "p0 | ~p0", "kleene", True, None),
        ([], "p0 | ~p0", "kleene", False, "n"),
        ([], "p0 | ~p0", "classical", True, None),
        (["p0", "p1"], "p0 & p1", "kleene", True, None),
        (["p0 | p1"], "p0", "classical", False, "01"),
    ],
)
def test_consequence(premises, conclusion, logic, holds, counter_world):
    result = consequence(
        [parse(p, logic=logic) for p in premises], parse(conclusion, logic=logic), 2, logic
    )
    assert bool(result) is holds
    if counter_world is not None:
        assert result.counter_world.startswith(counter_world)


def test_consequence_counter_world_arity_one():
    result = consequence([], parse("p0 | ~p0"), 1)
    assert result.counter_world == "n"


@hypothesis.given(formulas(2))
@hypothesis.settings(max_examples=500, deadline=None)
def test_meaning_agrees_with_truth_values(formula):
    m = meaning_kleene(formula, 2)
    assert meaning_from_eval(formula, 2) == m
    for s in worlds(2):
        assert value_from_meaning(m, s) == eval_kleene(formula, s)


def test_lindenbaum_algebra_of_one_variable():
    field, witnesses = kleene_lindenbaum_algebra(1)
    assert field.size == 11
    for i, member in enumerate(field.members):
        assert meaning_kleene(witnesses[i], 1) == member
    with pytest.raises(CapExceededError):
        kleene_lindenbaum_algebra(3)


def test_formula_corpus():
    corpus = formula_corpus(1)
    assert corpus[:4] == [ZERO, ONE, N, Var(0)]
    assert len(corpus) == 11
    assert len(formula_corpus(1, logic="classical")) == 4
    assert len(formula_corpus(1, depth=1, distinct=False)) > len(formula_corpus(1, depth=1))
    extra = formula_corpus(0, depth=0, extra=[parse("n | 1")])
    assert [str(f) for f in extra] == ["0", "1", "n", "n | 1"]
