"""Translations between probabilities of sentences and probabilities of
events, in both directions, for classical and Kleene languages."""
from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field as dataclass_field
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Optional, Sequence, Union

import numpy as np
from pandas import DataFrame

from .dmf import DmfAlgebra, DmfMorphism, closure, saturate
from .exceptions import (
    CapExceededError,
    InvalidConfigurationError,
    LawViolationError,
    NotIsotoneError,
    PreconditionError,
    UnassignedVariableError,
)
from .formula import And, Const, Formula, Not, Or, Var, conjunction, disjunction
from .globals import (
    DEFAULT_CORPUS_DEPTH,
    MAX_CLASSICAL_SPACE,
    MAX_GENERATOR_FIELD,
    MAX_LINDENBAUM_ARITY,
    RationalLike,
    as_fraction,
)
from .kleene import (
    formula_corpus,
    kleene_lindenbaum_algebra,
    meaning_classical,
    meaning_kleene,
    world_label,
    worlds,
)
from .lattice import (
    FiniteLattice,
    LatticeMorphism,
    Valuation,
    check_boolean_valuation_additivity,
    is_valuation,
)
from .partial_set import PartialField, PartialMeasure, TValue, is_partial_measure
from .partial_valuation import is_partial_valuation
from .search import SubsetSearch
from .sentences import (
    AuditProbability,
    ProbabilityFunction,
    SentenceProbability,
    WorldWeights,
    check_partial_probability_axioms,
    is_compatible_pi,
    is_isotone_pi,
)

logger = logging.getLogger(__name__)

EQUALITY_COLUMNS = ["formula", "event", "sentence value", "event value", "equal"]


def _value_text(value: Union[Fraction, TValue]) -> str:
    return str(value)


@dataclass
class TranslationCertificate:
    """Outcome of a translation with its table of checked equalities.

    Parameters
    ----------
    direction
        ``"s2e"`` (sentences to events) or ``"e2s"``.
    logic
        ``"classical"`` or ``"partial"``.
    measure
        Value of every event, by event label.
    witnesses
        A formula denoting every event, by event label.
    table
        One row per checked equality π(α) = value of the event of α.
    details
        Direction specific numbers such as the arity of the language.
    probability
        The probability function on sentences, when it was constructed.
    event_of
        Label of the event a formula denotes.

    """

    direction: str
    logic: str
    measure: dict[str, Union[Fraction, TValue]]
    witnesses: dict[str, str]
    table: DataFrame
    details: dict = dataclass_field(default_factory=dict)
    probability: Optional[ProbabilityFunction] = None
    event_of: Optional[Callable[[Formula], str]] = None

    @property
    def passed(self) -> bool:
        return bool(self.table["equal"].all())

    @property
    def first_failure(self) -> Optional[dict]:
        failed = self.table[~self.table["equal"]]
        if failed.empty:
            return None
        return failed.iloc[0].to_dict()

    def in_preimage(self, formula: Formula, event: str) -> bool:
        """Whether the formula belongs to the preimage of the event."""
        if self.event_of is None:
            raise InvalidConfigurationError("certificate has no event map")
        return self.event_of(formula) == event

    def to_dict(self) -> dict:
        return {
            "direction": self.direction,
            "logic": self.logic,
            **self.details,
            "measure": {
                label: value.to_list() if isinstance(value, TValue) else str(value)
                for label, value in self.measure.items()
            },
            "witnesses": dict(self.witnesses),
            "equalities": [
                {**row, "equal": bool(row["equal"])}
                for row in self.table.to_dict(orient="records")
            ],
            "passed": self.passed,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, ensure_ascii=False)


def _table(rows: Iterable[tuple[Formula, str, object, object]]) -> DataFrame:
    records = [
        (str(f), event, _value_text(lhs), _value_text(rhs), lhs == rhs)
        for f, event, lhs, rhs in rows
    ]
    table = DataFrame(records, columns=EQUALITY_COLUMNS)
    table["equal"] = table["equal"].astype(bool)
    return table


# classical ====================================================================
def dnf_formula(event: Iterable[str], n: int) -> Formula:
    """The full disjunctive normal form of a set of worlds of 2ⁿ."""
    event = {"" if s == "()" else s for s in event}
    clauses = []
    for s in worlds(n, "classical"):
        if s not in event:
            continue
        literals = [Var(i) if v == "1" else Not(Var(i)) for i, v in enumerate(s)]
        clauses.append(conjunction(literals))
    return disjunction(clauses)


def _event_label(points: Sequence[str]) -> str:
    return "{" + ",".join(points) + "}"


def _world_mask(models: frozenset, n: int) -> int:
    return sum(1 << i for i, s in enumerate(worlds(n, "classical")) if s in models)


def _powerset(points: Sequence[str]) -> FiniteLattice:
    """P(points) with element index equal to the subset bitmask."""
    labels = [
        _event_label([p for i, p in enumerate(points) if mask >> i & 1])
        for mask in range(2 ** len(points))
    ]
    return FiniteLattice.boolean(len(points), labels)


def classical_sentences_to_space(
    pi: ProbabilityFunction,
    n: int,
    corpus: Optional[Sequence[Formula]] = None,
) -> TranslationCertificate:
    """Build p on P(2ⁿ) by p(X) = π(DNF of X) and check π(α) = p(M(α))."""
    points = [world_label(s) for s in worlds(n, "classical")]
    events = _powerset(points)
    witnesses = {}
    values = []
    for mask in range(events.size):
        formula = dnf_formula([p for i, p in enumerate(points) if mask >> i & 1], n)
        witnesses[events.label(mask)] = str(formula)
        values.append(as_fraction(pi(formula)))
    p = Valuation(tuple(values))
    failure = is_valuation(events, p)
    if not failure:
        raise LawViolationError(failure.law, failure.witness)
    is_boolean_valuation, is_additive = check_boolean_valuation_additivity(events, p)
    if is_boolean_valuation != is_additive:
        raise LawViolationError("additivity")

    if corpus is None:
        corpus = formula_corpus(n, DEFAULT_CORPUS_DEPTH, "classical")

    def event_of(formula: Formula) -> str:
        return events.label(_world_mask(meaning_classical(formula, n), n))

    rows = []
    for formula in corpus:
        mask = _world_mask(meaning_classical(formula, n), n)
        rows.append((formula, events.label(mask), pi(formula), p(mask)))
    certificate = TranslationCertificate(
        "s2e",
        "classical",
        {events.label(mask): value for mask, value in enumerate(p.values)},
        witnesses,
        _table(rows),
        {"n": n},
        pi,
        event_of,
    )
    logger.info(
        "classical s2e certificate over %d events, passed=%s",
        events.size,
        certificate.passed,
    )
    return certificate


def restriction_epimorphism(k: int, m: int) -> LatticeMorphism:
    """θ: 2^(2^k) → 2^m restricting a set of worlds to the first m worlds."""
    if m > 2**k:
        raise InvalidConfigurationError(f"cannot restrict {2**k} worlds to {m}")
    source = FiniteLattice.boolean(2**k)
    target = FiniteLattice.boolean(m)
    theta = LatticeMorphism(source, target, np.arange(source.size) & (2**m - 1))
    if not theta.is_surjective:
        raise LawViolationError("surjectivity")
    return theta


def _required_arity(m: int) -> int:
    """The least k with m ≤ 2^k."""
    return max(m - 1, 0).bit_length()


def classical_space_to_sentences(
    weights: Mapping[str, RationalLike],
    corpus_depth: int = DEFAULT_CORPUS_DEPTH,
    cap: int = MAX_CLASSICAL_SPACE,
) -> TranslationCertificate:
    """Express a classical probability space on m points as a probability
    function on the language with k variables, m ≤ 2^k.

    The point with index i corresponds to the i-th world of 2^k; the
    remaining worlds weigh 0.
    """
    points = [str(point) for point in weights]
    m = len(points)
    if m < 1:
        raise InvalidConfigurationError("the sample space needs a point")
    if m > cap:
        raise CapExceededError(f"sample space of {m} points exceeds the cap {cap}")
    p_points = [as_fraction(weights[point]) for point in points]
    if any(w < 0 for w in p_points) or sum(p_points) != 1:
        raise InvalidConfigurationError("weights must be nonnegative and sum to 1")

    k = _required_arity(m)
    theta = restriction_epimorphism(k, m)
    events = _powerset(points)
    p = Valuation(
        tuple(
            sum((w for i, w in enumerate(p_points) if mask >> i & 1), Fraction(0))
            for mask in range(events.size)
        )
    )
    world_weights = WorldWeights(
        k, "classical", tuple(p_points) + (Fraction(0),) * (2**k - m)
    )
    pi = SentenceProbability(world_weights)

    def eta(formula: Formula) -> int:
        return theta(_world_mask(meaning_classical(formula, k), k))

    witnesses = {}
    rows = []
    for mask in range(events.size):
        chosen = [w for i, w in enumerate(worlds(k, "classical")) if mask >> i & 1]
        formula = dnf_formula(chosen, k)
        witnesses[events.label(mask)] = str(formula)
        rows.append((formula, events.label(mask), pi(formula), p(eta(formula))))
    for formula in formula_corpus(k, corpus_depth, "classical"):
        rows.append((formula, events.label(eta(formula)), pi(formula), p(eta(formula))))

    certificate = TranslationCertificate(
        "e2s",
        "classical",
        {events.label(mask): value for mask, value in enumerate(p.values)},
        witnesses,
        _table(rows),
        {"m": m, "k": k},
        pi,
        lambda formula: events.label(eta(formula)),
    )
    logger.info("classical e2s certificate with k=%d, passed=%s", k, certificate.passed)
    return certificate


# partial ======================================================================
def _equivalent_variants(formulas: Iterable[Formula]) -> list[Formula]:
    """Each formula followed by α∧α, α∨α and ¬¬α."""
    return [g for f in formulas for g in (f, And(f, f), Or(f, f), Not(Not(f)))]


def partial_sentences_to_space(
    pi: ProbabilityFunction,
    n: int,
    corpus: Optional[Sequence[Formula]] = None,
) -> TranslationCertificate:
    """Build μ on the Kleene Lindenbaum algebra of arity n by
    μ(M(α)) = π(α), for an isotone π compatible with equivalence."""
    field, witness_terms = kleene_lindenbaum_algebra(n)
    if corpus is None:
        corpus = formula_corpus(n, DEFAULT_CORPUS_DEPTH, "kleene")
    sample = [*witness_terms.values(), *corpus]
    if isinstance(pi, AuditProbability):
        sample.extend(f for f in pi.corpus if f not in sample)

    isotone = is_isotone_pi(pi, n, sample)
    if not isotone:
        raise NotIsotoneError("probability function is not isotone", isotone.witness)
    compatible = is_compatible_pi(pi, _equivalent_variants(sample), n, "kleene")
    if not compatible:
        raise PreconditionError(
            "compatible",
            f"equivalent formulas {', '.join(compatible.witness)} get different values",
        )

    A = field.algebra
    mu = PartialMeasure(
        tuple(TValue.parse(pi(witness_terms[i])) for i in range(field.size))
    )
    failure = is_partial_valuation(A, mu)
    if not failure:
        raise LawViolationError(failure.law, failure.witness)

    def event_of(formula: Formula) -> str:
        return meaning_kleene(formula, n).label

    rows = [
        (
            formula,
            event_of(formula),
            pi(formula),
            mu(field.index(meaning_kleene(formula, n))),
        )
        for formula in corpus
    ]
    certificate = TranslationCertificate(
        "s2e",
        "partial",
        {A.label(i): mu(i) for i in range(field.size)},
        {A.label(i): str(witness_terms[i]) for i in range(field.size)},
        _table(rows),
        {"n": n, "size": field.size},
        pi,
        event_of,
    )
    logger.info(
        "partial s2e certificate over %d events, passed=%s",
        field.size,
        certificate.passed,
    )
    return certificate


GeneratorAssignment = Union[Sequence[int], Mapping[int, int]]


def free_extension(A: DmfAlgebra, g: GeneratorAssignment, formula: Formula) -> int:
    """Value of a formula in A when p_i denotes the element g[i]."""
    if isinstance(formula, Var):
        try:
            return int(g[formula.index])
        except (IndexError, KeyError):
            raise UnassignedVariableError(f"p{formula.index} has no assigned element")
    if isinstance(formula, Const):
        return {"0": A.bottom, "n": A.fix, "1": A.top}[formula.value]
    if isinstance(formula, Not):
        return int(A.neg[free_extension(A, g, formula.operand)])
    left = free_extension(A, g, formula.left)
    right = free_extension(A, g, formula.right)
    table = A.meet if isinstance(formula, And) else A.join
    return int(table[left, right])


def minimal_generating_set(
    A: Union[DmfAlgebra, PartialField],
    cap: int = MAX_GENERATOR_FIELD,
    should_stop: Optional[Callable[[], bool]] = None,
) -> tuple[int, tuple[int, ...]]:
    """The least number j of elements generating A and the first such
    generator set in lexicographic order of element indices."""
    if isinstance(A, PartialField):
        A = A.algebra
    search = SubsetSearch(
        A.size,
        lambda subset_id: bool(closure(A, subset_id).all()),
        cap=cap,
        should_stop=should_stop,
    )
    accepted = search.explore(["forward"], stop_at_first_accepted_layer=True)
    if not accepted:
        raise LawViolationError("generation")
    generators = accepted[0]
    return len(generators), generators


def partial_space_to_sentences(
    field: PartialField,
    mu: PartialMeasure,
    cap: int = MAX_GENERATOR_FIELD,
    corpus_depth: int = 2,
) -> TranslationCertificate:
    """Express a partial probability space as a partial probability function
    on the Kleene language with j variables, j the least number of
    generators of the field, p_i standing for the i-th generator."""
    failure = is_partial_measure(field, mu)
    if not failure:
        raise LawViolationError(failure.law, failure.witness)
    A = field.algebra
    j, generators = minimal_generating_set(A, cap)
    witness_terms = saturate(
        list(generators),
        A.bottom,
        A.fix,
        A.top,
        meet=lambda x, y: int(A.meet[x, y]),
        join=lambda x, y: int(A.join[x, y]),
        neg=lambda x: int(A.neg[x]),
    )

    def eta(formula: Formula) -> int:
        return free_extension(A, generators, formula)

    def pi(formula: Formula) -> TValue:
        return mu(eta(formula))

    rows = []
    for i in range(field.size):
        formula = witness_terms[i]
        if eta(formula) != i:
            raise LawViolationError("witness", (A.label(i), str(formula)))
        rows.append((formula, A.label(i), pi(formula), mu(i)))

    corpus = formula_corpus(j, corpus_depth, "kleene")
    axioms = check_partial_probability_axioms(pi, j, corpus)
    if not axioms:
        raise LawViolationError(axioms.law, axioms.witness)

    details = {"j": j, "generators": list(A.labels(generators))}
    if j <= MAX_LINDENBAUM_ARITY:
        lindenbaum, lindenbaum_witnesses = kleene_lindenbaum_algebra(j)
        mapping = [eta(lindenbaum_witnesses[i]) for i in range(lindenbaum.size)]
        eta_morphism = DmfMorphism(lindenbaum.algebra, A, mapping)
        if not eta_morphism.is_surjective:
            raise LawViolationError("surjectivity")
        details["eta_certified"] = True

    certificate = TranslationCertificate(
        "e2s",
        "partial",
        {A.label(i): mu(i) for i in range(field.size)},
        {A.label(i): str(witness_terms[i]) for i in range(field.size)},
        _table(rows),
        details,
        pi,
        lambda formula: A.label(eta(formula)),
    )
    logger.info("partial e2s certificate with j=%d, passed=%s", j, certificate.passed)
    return certificate


