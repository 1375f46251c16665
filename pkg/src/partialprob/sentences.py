"""Probability functions on sentences.

Concrete probability functions are induced by a distribution of weights
over the worlds of the language. The axiom checkers accept any callable
from formulas to values and quantify over a finite formula corpus.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import product
from typing import Callable, Iterator, Mapping, Optional, Sequence, Union

from .exceptions import (
    InvalidConfigurationError,
    PreconditionError,
    UndefinedValueError,
    ZeroConditionError,
)
from .formula import N, ONE, ZERO, And, Formula, Not, Or, parse
from .globals import RationalLike, as_fraction, get_logic_values
from .kleene import (
    kleene_space,
    meaning,
    meaning_classical,
    meaning_kleene,
    world_label,
    worlds,
)
from .partial_set import (
    BOTTOM_VALUE,
    TOP_VALUE,
    ZERO_VALUE,
    PartialField,
    TValue,
    associated_partial_space,
)
from .partial_valuation import (
    PosNegIdentity,
    conditional_partial_valuation,
    posneg_conditional_identity,
    weak_bayes,
)
from .report import CheckResult, first_failure

Value = Union[Fraction, TValue]
ProbabilityFunction = Callable[[Formula], Value]


@dataclass(frozen=True)
class WorldWeights:
    """Exact probability distribution over the worlds of arity n.

    Parameters
    ----------
    n
        Arity of the language.
    logic
        ``"classical"`` for worlds in 2ⁿ, ``"kleene"`` for worlds in Kⁿ.
    weights
        Weight of every world, in world enumeration order.

    """

    n: int
    logic: str
    weights: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        get_logic_values(self.logic)
        object.__setattr__(self, "weights", tuple(map(as_fraction, self.weights)))
        if len(self.weights) != len(worlds(self.n, self.logic)):
            raise InvalidConfigurationError(
                f"expected {len(worlds(self.n, self.logic))} world weights"
            )
        if any(weight < 0 for weight in self.weights):
            raise InvalidConfigurationError("world weights must be nonnegative")
        if sum(self.weights) != 1:
            raise InvalidConfigurationError(
                f"world weights sum to {sum(self.weights)}, not 1"
            )

    @classmethod
    def from_mapping(
        cls, n: int, logic: str, weights: Mapping[str, RationalLike]
    ) -> WorldWeights:
        """Weights keyed by world string; missing worlds weigh 0."""
        index = {world_label(s): i for i, s in enumerate(worlds(n, logic))}
        result = [Fraction(0)] * len(index)
        for world, weight in weights.items():
            if world_label(str(world)) not in index:
                raise InvalidConfigurationError(f"{world!r} is not a world of arity {n}")
            result[index[world_label(str(world))]] = as_fraction(weight)
        return cls(n, logic, tuple(result))

    @classmethod
    def from_dict(cls, candidate: Mapping) -> WorldWeights:
        """Build from ``{"n": 2, "logic": "kleene", "weights": {"0n": "1/4"}}``."""
        try:
            return cls.from_mapping(
                int(candidate["n"]), candidate["logic"], candidate["weights"]
            )
        except KeyError as error:
            raise InvalidConfigurationError(f"weights file is missing {error}")

    @classmethod
    def uniform(cls, n: int, logic: str = "kleene") -> WorldWeights:
        size = len(worlds(n, logic))
        return cls(n, logic, (Fraction(1, size),) * size)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "logic": self.logic,
            "weights": {
                world_label(s): str(w)
                for s, w in zip(worlds(self.n, self.logic), self.weights)
            },
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def point_weights(self) -> dict[str, Fraction]:
        """Weights keyed by world label, the points of the sample space."""
        return {
            world_label(s): w for s, w in zip(worlds(self.n, self.logic), self.weights)
        }

    def weight(self, world: str) -> Fraction:
        return self.point_weights()[world_label(world)]

    def mass(self, mask: int) -> Fraction:
        """Total weight of the worlds in a bitmask over world positions."""
        return sum(
            (w for i, w in enumerate(self.weights) if mask >> i & 1), Fraction(0)
        )


def _expect_logic(w: WorldWeights, logic: str) -> None:
    if w.logic != logic:
        raise InvalidConfigurationError(
            f"{logic} probability needs {logic} world weights, got {w.logic}"
        )


# classical ====================================================================
def classical_pi(w: WorldWeights, formula: Formula) -> Fraction:
    """π(α) = Σ{w(s): s ∈ M(α)}."""
    _expect_logic(w, "classical")
    models = meaning_classical(formula, w.n)
    return sum((w.weight(s) for s in models), Fraction(0))


def conditional_pi(w: WorldWeights, delta: Formula) -> Callable[[Formula], Fraction]:
    """π(·|δ) = π(· ∧ δ)/π(δ)."""
    denominator = classical_pi(w, delta)
    if denominator == 0:
        raise ZeroConditionError(f"π({delta}) is zero")

    def pi_given(formula: Formula) -> Fraction:
        return classical_pi(w, And(formula, delta)) / denominator

    return pi_given


# partial ======================================================================
def partial_pi(w: WorldWeights, formula: Formula) -> TValue:
    """π(α) = (weight of the positive models, weight of the negative models)."""
    _expect_logic(w, "kleene")
    m = meaning_kleene(formula, w.n)
    return TValue(w.mass(m.positive), w.mass(m.negative))


def _generated_measure(w: WorldWeights, formulas: Sequence[Formula]):
    meanings = [meaning_kleene(f, w.n) for f in formulas]
    field, _ = PartialField.generated(kleene_space(w.n), meanings)
    mu = associated_partial_space(field, w.point_weights())
    return field, mu, [field.index(m) for m in meanings]


def conditional_partial_pi(w: WorldWeights, formula: Formula, delta: Formula) -> TValue:
    """π(α|δ), conditioning the associated measure of the field generated by
    M(α) and M(δ) on M(δ).

    The value only involves μ at M(δ) and at (M(α)∨¬M(δ))∧M(δ). Every subfield
    of D(Kⁿ) holding M(α) and M(δ) contains both with the same measure, so the
    result equals conditioning in D(Kⁿ) or in the Kleene Lindenbaum field.
    """
    _expect_logic(w, "kleene")
    field, mu, (a, d) = _generated_measure(w, [formula, delta])
    return conditional_partial_valuation(field.algebra, mu, d)(a)


def partial_weak_bayes(
    w: WorldWeights, hypothesis: Formula, evidence: Formula
) -> tuple[TValue, TValue]:
    _expect_logic(w, "kleene")
    field, mu, (h, e) = _generated_measure(w, [hypothesis, evidence])
    return weak_bayes(field.algebra, mu, h, e)


def partial_posneg_identity(
    w: WorldWeights, hypothesis: Formula, evidence: Formula
) -> PosNegIdentity:
    """Conditioning on the positive part of the evidence, in the field
    generated by the two meanings."""
    _expect_logic(w, "kleene")
    field, mu, (h, e) = _generated_measure(w, [hypothesis, evidence])
    return posneg_conditional_identity(field.algebra, mu, h, e)


def classical_bayes(
    w: WorldWeights, hypothesis: Formula, evidence: Formula
) -> tuple[Fraction, Fraction]:
    """Both sides of π(h|e) = π(e|h)·π(h)/π(e)."""
    lhs = conditional_pi(w, evidence)(hypothesis)
    rhs = (
        conditional_pi(w, hypothesis)(evidence)
        * classical_pi(w, hypothesis)
        / classical_pi(w, evidence)
    )
    return lhs, rhs


class SentenceProbability:
    """The probability function induced by world weights.

    Classical weights give rational values, Kleene weights give TValues.
    :meth:`given` returns the function conditioned on a formula.

    Parameters
    ----------
    weights
        The world weights.
    condition
        Optional condition δ.

    """

    def __init__(
        self, weights: WorldWeights, condition: Optional[Formula] = None
    ) -> None:
        self.weights = weights
        self.condition = condition
        if condition is not None and weights.logic == "classical":
            self._given = conditional_pi(weights, condition)

    @property
    def kind(self) -> str:
        return "classical" if self.weights.logic == "classical" else "partial"

    @property
    def n(self) -> int:
        return self.weights.n

    def given(self, delta: Formula) -> SentenceProbability:
        return SentenceProbability(self.weights, delta)

    def __call__(self, formula: Formula) -> Value:
        if self.condition is None:
            if self.kind == "classical":
                return classical_pi(self.weights, formula)
            return partial_pi(self.weights, formula)
        if self.kind == "classical":
            return self._given(formula)
        return conditional_partial_pi(self.weights, formula, self.condition)


class AuditProbability:
    """A finite table of probability values to audit.

    Formulas found in the table by text get their value; any other formula
    takes the value of the first table entry with the same meaning, and
    raises :class:`~partialprob.exceptions.UndefinedValueError` when there
    is none.
    """

    def __init__(self, n: int, logic: str, values: Mapping[Formula, Value]) -> None:
        get_logic_values(logic)
        self.n = n
        self.logic = logic
        self.values = dict(values)

    @classmethod
    def from_dict(cls, candidate: Mapping) -> AuditProbability:
        """Build from ``{"n": 1, "logic": "kleene", "values": {"p0": ["1/4", "1/2"]}}``."""
        try:
            n, logic, raw = int(candidate["n"]), candidate["logic"], candidate["values"]
        except KeyError as error:
            raise InvalidConfigurationError(f"probability table is missing {error}")
        values = {}
        for text, value in raw.items():
            formula = parse(text, n, logic)
            values[formula] = (
                as_fraction(value) if logic == "classical" else TValue.parse(value)
            )
        return cls(n, logic, values)

    @property
    def kind(self) -> str:
        return "classical" if self.logic == "classical" else "partial"

    @property
    def corpus(self) -> list[Formula]:
        return list(self.values)

    @cached_property
    def _by_meaning(self) -> dict:
        result = {}
        for formula, value in self.values.items():
            result.setdefault(meaning(formula, self.n, self.logic), value)
        return result

    def __call__(self, formula: Formula) -> Value:
        if formula in self.values:
            return self.values[formula]
        try:
            return self._by_meaning[meaning(formula, self.n, self.logic)]
        except KeyError:
            raise UndefinedValueError(f"no value for '{formula}'")


# axiom checkers ===============================================================
def _instances(check: Callable[..., Optional[tuple]], *pools) -> Optional[tuple]:
    """First witness returned by ``check`` over the product of the pools;
    instances touching undefined values are skipped."""
    for args in product(*pools):
        try:
            witness = check(*args)
        except UndefinedValueError:
            continue
        if witness is not None:
            return witness
    return None


def _result(law: str, witness: Optional[tuple]) -> CheckResult:
    return CheckResult(law, witness is None, witness or ())


def _imp(a: Formula, b: Formula) -> Formula:
    return Or(Not(a), b)


def relative_probability_laws(
    pi: ProbabilityFunction, delta: Formula, corpus: Sequence[Formula], n: int
) -> Iterator[CheckResult]:
    """Axioms of a probability function relative to δ, then their
    consequences: negation, equivalence, monotonicity and
    inclusion-exclusion. Consequence is classical."""
    models = {f: meaning_classical(f, n) for f in [delta, *corpus]}
    d = models[delta]
    if not d:
        raise PreconditionError("consistent", f"{delta} has no models")

    def entails(formula: Formula) -> bool:
        if formula not in models:
            models[formula] = meaning_classical(formula, n)
        return d <= models[formula]

    def axiom_1(a):
        if entails(a) and pi(a) != 1:
            return (str(a),)

    def axiom_2(a, b):
        if entails(Not(And(a, b))) and pi(Or(a, b)) != pi(a) + pi(b):
            return (str(Or(a, b)),)

    def negation(a):
        if pi(Not(a)) != 1 - pi(a):
            return (str(Not(a)),)

    def equivalence(a, b):
        if entails(And(_imp(a, b), _imp(b, a))) and pi(a) != pi(b):
            return (str(a), str(b))

    def monotonicity(a, b):
        if entails(_imp(a, b)) and pi(a) > pi(b):
            return (str(a), str(b))

    def inclusion_exclusion(a, b):
        if pi(Or(a, b)) != pi(a) + pi(b) - pi(And(a, b)):
            return (str(Or(a, b)),)

    yield _result("axiom 1", _instances(axiom_1, corpus))
    yield _result("axiom 2", _instances(axiom_2, corpus, corpus))
    yield _result("negation", _instances(negation, corpus))
    yield _result("equivalence", _instances(equivalence, corpus, corpus))
    yield _result("monotonicity", _instances(monotonicity, corpus, corpus))
    yield _result(
        "inclusion-exclusion", _instances(inclusion_exclusion, corpus, corpus)
    )


def check_relative_probability_axioms(
    pi: ProbabilityFunction, delta: Formula, corpus: Sequence[Formula], n: int
) -> CheckResult:
    return first_failure(
        relative_probability_laws(pi, delta, corpus, n), "relative probability"
    )


def check_probability_axioms(
    pi: ProbabilityFunction, corpus: Sequence[Formula], n: int
) -> CheckResult:
    """The axioms of a plain probability function, i.e. relative to 1."""
    return check_relative_probability_axioms(pi, ONE, corpus, n)


def partial_probability_laws(
    pi: ProbabilityFunction, n: int, corpus: Sequence[Formula]
) -> Iterator[CheckResult]:
    """The four axioms of a partial probability function over the corpus,
    then their consequences. Consequence is Kleene consequence."""
    m = {}

    def meaning_of(a: Formula):
        if a not in m:
            m[a] = meaning_kleene(a, n)
        return m[a]

    def axiom_1(a):
        if meaning_of(a) == meaning_of(ONE) and pi(a) != TOP_VALUE:
            return (str(a),)

    def axiom_2(a, b):
        if pi(Or(a, b)) != pi(a) + pi(b) - pi(And(a, b)):
            return (str(Or(a, b)),)

    def axiom_3(a):
        if pi(Not(a)) != pi(a).sigma():
            return (str(Not(a)),)

    def axiom_4(a):
        if meaning_of(a).negative == 0 and not ZERO_VALUE.precedes(pi(a)):
            return (str(a),)

    def contradiction(a):
        if meaning_of(a) == meaning_of(ZERO) and pi(a) != BOTTOM_VALUE:
            return (str(a),)

    def below_n(a):
        if meaning_of(a).positive == 0 and not pi(a).precedes(ZERO_VALUE):
            return (str(a),)

    def split(a):
        if pi(a) != pi(Or(a, N)) + pi(And(a, N)):
            return (str(a),)

    def value_of_n():
        if pi(N) != ZERO_VALUE:
            return ("n",)

    yield _result("axiom 1", _instances(axiom_1, corpus))
    yield _result("axiom 2", _instances(axiom_2, corpus, corpus))
    yield _result("axiom 3", _instances(axiom_3, corpus))
    yield _result("axiom 4", _instances(axiom_4, corpus))
    yield _result("value of n", _instances(value_of_n))
    yield _result("contradiction", _instances(contradiction, corpus))
    yield _result("below n", _instances(below_n, corpus))
    yield _result("split at n", _instances(split, corpus))


def check_partial_probability_axioms(
    pi: ProbabilityFunction, n: int, corpus: Sequence[Formula]
) -> CheckResult:
    return first_failure(
        partial_probability_laws(pi, n, corpus), "partial probability"
    )


def is_isotone_pi(
    pi: ProbabilityFunction, n: int, corpus: Sequence[Formula]
) -> CheckResult:
    """α ⊨ β implies π(α) ≼ π(β), over all corpus pairs."""
    m = {a: meaning_kleene(a, n) for a in corpus}

    def isotone(a, b):
        if m[a].leq(m[b]) and not pi(a).precedes(pi(b)):
            return (str(a), str(b))

    return _result("isotonicity", _instances(isotone, corpus, corpus))


def is_compatible_pi(
    pi: ProbabilityFunction, corpus: Sequence[Formula], n: int, logic: str = "kleene"
) -> CheckResult:
    """Formulas with equal meanings get equal values."""
    first_seen: dict = {}

    def compatible(a):
        key = meaning(a, n, logic)
        if key not in first_seen:
            first_seen[key] = a
            return None
        b = first_seen[key]
        if pi(a) != pi(b):
            return (str(b), str(a))

    return _result("compatibility", _instances(compatible, corpus))
