from fractions import Fraction

import hypothesis
import hypothesis.strategies as strat
import pytest

from partialprob.dmf import kleene_algebra, nabla, phi_I
from partialprob.exceptions import (
    LawViolationError,
    NotInNablaError,
    NotIsotoneError,
    ZeroConditionError,
)
from partialprob.lattice import FiniteLattice, Valuation
from partialprob.partial_set import (
    PartialMeasure,
    TValue,
    associated_partial_space,
    enumerate_DS,
)
from partialprob.partial_valuation import (
    bias,
    boolean_values_linearly_ordered,
    check_condition,
    conditional_partial_valuation,
    decompose,
    equal_indetermination_comparable,
    extract_nabla_valuation,
    indetermination,
    induced_partial_valuation,
    is_isotone,
    is_partial_valuation,
    nabla_is_boolean,
    partial_valuation_report,
    posneg_conditional_identity,
    pullback_partial_valuation,
    recover_classical,
    relativized_partial_valuation,
    structural_properties,
    weak_bayes,
)
from partialprob.report import table_passes

DS3 = enumerate_DS(["a", "b", "c"])


def kleene_values(*pairs) -> PartialMeasure:
    return PartialMeasure(tuple(TValue(*pair) for pair in pairs))


def test_measure_of_points_is_partial_valuation(ds2_algebra, ds2_uniform):
    assert is_partial_valuation(ds2_algebra, ds2_uniform)
    assert table_passes(structural_properties(ds2_algebra, ds2_uniform))
    report = partial_valuation_report(ds2_algebra, ds2_uniform)
    assert table_passes(report)
    assert "split at n" in set(report["law"])


def test_broken_valuation_report(ds2_algebra, ds2_uniform):
    values = list(ds2_uniform.values)
    values[ds2_algebra.index("{a}|{b}")] = TValue(Fraction(1, 3), Fraction(1, 2))
    v = PartialMeasure(tuple(values))
    result = is_partial_valuation(ds2_algebra, v)
    assert not result
    assert result.law == "axiom 2"
    report = partial_valuation_report(ds2_algebra, v)
    assert not table_passes(report)
    assert "split at n" not in set(report["law"])


def test_decompose_and_recover(ds2, ds2_algebra, ds2_uniform):
    phi, induced = decompose(ds2_algebra, ds2_uniform)
    assert phi.is_injective
    for b in range(ds2_algebra.size):
        assert induced(phi(b)) == ds2_uniform(b)

    lattice, valuation = extract_nabla_valuation(ds2_algebra, ds2_uniform)
    assert lattice.size == 4
    assert valuation.values == (0, Fraction(1, 2), Fraction(1, 2), 1)

    assert recover_classical(ds2, ds2_uniform) == {
        "a": Fraction(1, 2),
        "b": Fraction(1, 2),
    }


def test_induced_and_pullback():
    K = kleene_algebra()
    induced = induced_partial_valuation(
        FiniteLattice.chain(2), Valuation((Fraction(0), Fraction(1)))
    )
    assert [str(value) for value in induced.values] == ["(0, 0)", "(0, 1)", "(1, 0)"]

    v = kleene_values((0, 1), (0, 0), (1, 0))
    pulled = pullback_partial_valuation(phi_I(K, [0]), v)
    assert pulled.values == v.values


def test_order_properties(ds2_algebra, ds2_uniform):
    A, v = ds2_algebra, ds2_uniform
    assert is_isotone(A, v)
    assert nabla_is_boolean(A)
    assert indetermination(v, A.fix) == 1
    assert indetermination(v, A.index("{a}|{b}")) == 0
    assert bias(v, A.index("{a}|{b}")) == 1
    with pytest.raises(ZeroConditionError):
        bias(v, A.fix)
    assert equal_indetermination_comparable(A, v)
    assert boolean_values_linearly_ordered(A, v)


def test_conditional_partial_valuation(ds2_algebra, ds2_uniform):
    A = ds2_algebra
    context = relativized_partial_valuation(A, ds2_uniform, "{a}|{}")
    assert context.interval.elements == ("{}|{a}", "{}|{}", "{a}|{}")
    assert [str(value) for value in context.valuation.values] == [
        "(0, 1)",
        "(0, 0)",
        "(1, 0)",
    ]

    given = conditional_partial_valuation(A, ds2_uniform, "{a}|{}")
    assert given(A.index("{a,b}|{}")) == TValue(1, 0)
    assert given(A.index("{a}|{b}")) == TValue(1, 0)
    assert given(A.index("{b}|{a}")) == TValue(0, 1)
    assert given(A.index("{b}|{}")) == TValue(0, 0)


def test_condition_preconditions_are_ordered():
    K = kleene_algebra()
    not_isotone = kleene_values((0, 1), (1, 0), (0, 0))
    with pytest.raises(NotInNablaError):
        check_condition(K, not_isotone, "0")
    with pytest.raises(NotIsotoneError):
        check_condition(K, not_isotone, "1")
    with pytest.raises(ZeroConditionError):
        check_condition(K, kleene_values((0, 1), (0, 0), (1, 0)), "n")


def test_weak_bayes(ds2_algebra, ds2_uniform):
    lhs, rhs = weak_bayes(ds2_algebra, ds2_uniform, "{a}|{}", "{a,b}|{}")
    assert lhs == rhs == TValue(Fraction(1, 2), 0)
    lhs, rhs = weak_bayes(ds2_algebra, ds2_uniform, "{b}|{}", "{a}|{}")
    assert lhs == rhs == TValue(0, 0)


def test_posneg_identity(ds2_algebra, ds2_uniform):
    identity = posneg_conditional_identity(
        ds2_algebra, ds2_uniform, "{a}|{}", "{a}|{b}"
    )
    assert identity.holds
    assert identity.lhs == TValue(1, 0)
    assert identity.given_nabla == TValue(Fraction(1, 2), 0)
    assert identity.given_negative == TValue(0, 0)
    assert identity.bias == 1
    with pytest.raises(ZeroConditionError):
        posneg_conditional_identity(ds2_algebra, ds2_uniform, "{a}|{}", "{a}|{}")


@pytest.mark.parametrize(
    "points,weights",
    [
        (["a", "b"], {"a": "1/2", "b": "1/2"}),
        (["a", "b", "c"], {"a": "1/2", "b": "1/3", "c": "1/6"}),
        (["a", "b", "c"], {"a": "1/5", "b": "2/5", "c": "2/5"}),
    ],
)
def test_posneg_identity_everywhere(points, weights):
    field = enumerate_DS(points)
    A = field.algebra
    v = associated_partial_space(field, weights)
    conditions = [
        e for e in range(A.size) if v(e).first != 0 and v(e).second != 0
    ]
    assert len(conditions) == 3 ** len(points) - 2 ** (len(points) + 1) + 1
    for e in conditions:
        for h in range(A.size):
            identity = posneg_conditional_identity(A, v, h, e)
            assert identity.lhs == identity.rhs, (A.label(h), A.label(e))
            assert identity.bias == v(e).second / v(e).first


def test_interval_bound_is_checked():
    K = kleene_algebra()
    with pytest.raises(LawViolationError):
        relativized_partial_valuation(
            K, kleene_values((0, 1), (0, 0), (Fraction(1, 2), 0)), "1"
        )


@hypothesis.given(
    strat.lists(strat.integers(min_value=0, max_value=6), min_size=3, max_size=3)
    .filter(sum)
    .map(lambda ws: {p: Fraction(w, sum(ws)) for p, w in zip("abc", ws)})
)
@hypothesis.settings(deadline=None, max_examples=25)
def test_weak_bayes_on_random_weights(weights):
    A = DS3.algebra
    v = associated_partial_space(DS3, weights)
    positive = [a for a in nabla(A) if v(a).first > 0]
    for h in positive:
        for e in positive:
            lhs, rhs = weak_bayes(A, v, h, e)
            assert lhs == rhs
