from contextlib import nullcontext as does_not_raise
from fractions import Fraction

import pytest

from partialprob.exceptions import (
    InvalidConfigurationError,
    NotInNablaError,
    PreconditionError,
    UndefinedValueError,
    ZeroConditionError,
)
from partialprob.formula import N, ONE, Var, parse
from partialprob.kleene import formula_corpus, kleene_lindenbaum_algebra, meaning_kleene
from partialprob.partial_set import TValue, associated_partial_space
from partialprob.partial_valuation import conditional_partial_valuation
from partialprob.sentences import (
    AuditProbability,
    SentenceProbability,
    WorldWeights,
    check_partial_probability_axioms,
    check_probability_axioms,
    check_relative_probability_axioms,
    classical_bayes,
    classical_pi,
    conditional_partial_pi,
    conditional_pi,
    is_compatible_pi,
    is_isotone_pi,
    partial_pi,
    partial_posneg_identity,
    partial_weak_bayes,
)


@pytest.mark.parametrize(
    "text,value",
    [
        ("p0", TValue(Fraction(1, 4), Fraction(1, 2))),
        ("~p0", TValue(Fraction(1, 2), Fraction(1, 4))),
        ("n", TValue(0, 0)),
        ("1", TValue(1, 0)),
        ("0", TValue(0, 1)),
        ("p0 | ~p0", TValue(Fraction(3, 4), 0)),
        ("p0 & n", TValue(0, Fraction(1, 2))),
    ],
)
def test_partial_pi(kleene_weights, text, value):
    assert partial_pi(kleene_weights, parse(text)) == value


def test_conditional_partial_pi(kleene_weights):
    value = conditional_partial_pi(kleene_weights, Var(0), parse("p0 | ~p0"))
    assert value == TValue(Fraction(1, 3), Fraction(2, 3))
    pi = SentenceProbability(kleene_weights).given(parse("p0 | ~p0"))
    assert pi.kind == "partial"
    assert pi(Var(0)) == value


@pytest.mark.parametrize("delta", ["p0 | ~p0", "p0 | n", "1"])
def test_conditioning_matches_the_lindenbaum_field(kleene_weights, delta):
    field, _ = kleene_lindenbaum_algebra(1)
    mu = associated_partial_space(field, kleene_weights.point_weights())
    d = field.index(meaning_kleene(parse(delta), 1))
    given = conditional_partial_valuation(field.algebra, mu, d)
    for formula in formula_corpus(1):
        a = field.index(meaning_kleene(formula, 1))
        assert conditional_partial_pi(kleene_weights, formula, parse(delta)) == given(a)


def test_partial_conditioning_preconditions(kleene_weights):
    pi = SentenceProbability(kleene_weights)
    with pytest.raises(ZeroConditionError):
        pi.given(N)(Var(0))
    with pytest.raises(NotInNablaError):
        pi.given(parse("p0 & ~p0"))(Var(0))


def test_classical_pi(classical_weights):
    pi = SentenceProbability(classical_weights)
    assert pi.kind == "classical"
    assert pi.n == 2
    assert pi(Var(0)) == Fraction(3, 4)
    assert classical_pi(classical_weights, parse("p0 & p1")) == Fraction(1, 2)
    assert pi.given(Var(1))(Var(0)) == Fraction(4, 5)
    assert classical_bayes(classical_weights, Var(0), Var(1)) == (
        Fraction(4, 5),
        Fraction(4, 5),
    )
    with pytest.raises(ZeroConditionError):
        conditional_pi(classical_weights, parse("p0 & ~p0"))


def test_logic_of_weights_is_checked(classical_weights, kleene_weights):
    with pytest.raises(InvalidConfigurationError):
        partial_pi(classical_weights, Var(0))
    with pytest.raises(InvalidConfigurationError):
        classical_pi(kleene_weights, Var(0))


@pytest.mark.parametrize(
    "candidate,expectation",
    [
        ({"n": 1, "logic": "kleene", "weights": {"0": "1/2", "1": "1/2"}}, does_not_raise()),
        ({"n": 0, "logic": "kleene", "weights": {"()": 1}}, does_not_raise()),
        (
            {"n": 1, "logic": "kleene", "weights": {"0": "1/2"}},
            pytest.raises(InvalidConfigurationError),
        ),
        (
            {"n": 1, "logic": "classical", "weights": {"n": 1}},
            pytest.raises(InvalidConfigurationError),
        ),
        (
            {"n": 1, "logic": "kleene", "weights": {"0": "3/2", "1": "-1/2"}},
            pytest.raises(InvalidConfigurationError),
        ),
        ({"n": 1, "weights": {"0": 1}}, pytest.raises(InvalidConfigurationError)),
        (
            {"n": 1, "logic": "kleene", "weights": {"0": 0.5, "1": 0.5}},
            pytest.raises(InvalidConfigurationError),
        ),
    ],
)
def test_world_weights_from_dict(candidate, expectation):
    with expectation:
        WorldWeights.from_dict(candidate)


def test_world_weights(kleene_weights):
    assert kleene_weights.weight("n") == Fraction(1, 4)
    assert kleene_weights.to_dict()["weights"] == {"0": "1/2", "n": "1/4", "1": "1/4"}
    assert WorldWeights.from_dict(kleene_weights.to_dict()) == kleene_weights
    assert WorldWeights.uniform(1).weights == (Fraction(1, 3),) * 3
    assert WorldWeights.uniform(2, "classical").point_weights()["01"] == Fraction(1, 4)


def test_bayes_on_sentences(kleene_weights):
    lhs, rhs = partial_weak_bayes(kleene_weights, ONE, parse("p0 | ~p0"))
    assert lhs == rhs == TValue(1, 0)

    identity = partial_posneg_identity(kleene_weights, Var(0), Var(0))
    assert identity.holds
    assert identity.lhs == TValue(1, 0)
    assert identity.given_nabla == TValue(Fraction(1, 3), Fraction(2, 3))
    assert identity.given_negative == TValue(0, 1)
    assert identity.bias == 2


def test_induced_functions_satisfy_the_axioms(classical_weights, kleene_weights):
    corpus = formula_corpus(2, 2, "classical")
    pi = SentenceProbability(classical_weights)
    assert check_probability_axioms(pi, corpus, 2)
    assert check_relative_probability_axioms(pi.given(Var(1)), Var(1), corpus, 2)

    corpus = formula_corpus(1)
    pi = SentenceProbability(kleene_weights)
    assert check_partial_probability_axioms(pi, 1, corpus)
    assert is_isotone_pi(pi, 1, corpus)
    assert is_compatible_pi(pi, corpus, 1)


def test_inconsistent_condition(classical_weights):
    pi = SentenceProbability(classical_weights)
    with pytest.raises(PreconditionError):
        check_relative_probability_axioms(pi, parse("p0 & ~p0"), [Var(0)], 2)


def test_audit_table_lookup():
    audit = AuditProbability.from_dict(
        {"n": 1, "logic": "kleene", "values": {"p0": ["1/4", "1/2"]}}
    )
    assert audit.kind == "partial"
    assert audit.corpus == [Var(0)]
    assert audit(parse("~~p0")) == TValue(Fraction(1, 4), Fraction(1, 2))
    with pytest.raises(UndefinedValueError):
        audit(parse("~p0"))
    with pytest.raises(InvalidConfigurationError):
        AuditProbability.from_dict({"n": 1, "values": {}})


def test_audit_skips_undefined_instances():
    audit = AuditProbability.from_dict(
        {"n": 1, "logic": "classical", "values": {"p0": "1/2", "~p0": "1/3"}}
    )
    result = check_probability_axioms(audit, audit.corpus, 1)
    assert not result
    assert result.law == "negation"
    assert result.witness == ("~p0",)


def test_audit_failures():
    not_isotone = AuditProbability.from_dict(
        {
            "n": 1,
            "logic": "kleene",
            "values": {"p0": ["1/2", "0"], "p0 | n": ["1/4", "0"]},
        }
    )
    result = is_isotone_pi(not_isotone, 1, not_isotone.corpus)
    assert not result
    assert result.witness == ("p0", "p0 | n")

    incompatible = AuditProbability.from_dict(
        {
            "n": 1,
            "logic": "kleene",
            "values": {"p0": ["1/4", "1/2"], "~~p0": ["1/2", "1/4"]},
        }
    )
    result = is_compatible_pi(incompatible, incompatible.corpus, 1)
    assert not result
    assert result.witness == ("p0", "~~p0")
