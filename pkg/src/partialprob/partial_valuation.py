from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional, Sequence, Union

import numpy as np
from pandas import DataFrame

from .dmf import (
    DmfAlgebra,
    DmfMorphism,
    PiAlgebra,
    boolean_elements,
    embed_into_pi_nabla,
    interval_dmf,
    nabla_lattice,
)
from .exceptions import (
    InvalidConfigurationError,
    LawViolationError,
    NotInNablaError,
    NotIsotoneError,
    ZeroConditionError,
)
from .lattice import Element, FiniteLattice, Valuation, is_valuation
from .partial_set import (
    TOP_VALUE,
    ZERO_VALUE,
    PartialField,
    PartialMeasure,
    TValue,
    partial_value_laws,
)
from .report import CheckResult, audit_table, first_failure

logger = logging.getLogger(__name__)


class PartialValuation(PartialMeasure):
    """TValue valued map on a DMF-algebra, by element index.

    Certified partial valuations satisfy v̄(0) = (0, 1), additivity over
    ∨ and ∧, v̄(¬a) = σ(v̄(a)) and (0, 0) ≼ v̄(a) for every a ≥ n.
    """


def partial_valuation_laws(A: DmfAlgebra, v: PartialMeasure) -> Iterator[CheckResult]:
    yield from partial_value_laws(A, v, "bottom")


def is_partial_valuation(A: DmfAlgebra, v: PartialMeasure) -> CheckResult:
    return first_failure(partial_valuation_laws(A, v), "partial valuation")


def _certified(A: DmfAlgebra, v: PartialMeasure) -> PartialValuation:
    failure = is_partial_valuation(A, v)
    if not failure:
        raise LawViolationError(failure.law, failure.witness)
    return PartialValuation(tuple(v.values))


# structure ====================================================================
def positive_part(A: DmfAlgebra, a: int) -> int:
    """a⁺ = a∨n."""
    return int(A.join[a, A.fix])


def negative_part(A: DmfAlgebra, a: int) -> int:
    """a⁻ = ¬a∨n."""
    return int(A.join[A.neg[a], A.fix])


def nabla_part(A: DmfAlgebra, a: int) -> int:
    """∇a = a∨¬a."""
    return int(A.join[a, A.neg[a]])


def structural_laws(A: DmfAlgebra, v: PartialMeasure) -> Iterator[CheckResult]:
    """The consequences of the partial valuation axioms, element by element."""
    yield CheckResult("value of 1", v(A.top) == TOP_VALUE)
    yield CheckResult("value of n", v(A.fix) == ZERO_VALUE)
    below = [
        a
        for a in np.flatnonzero(A.order[:, A.fix])
        if not v(a).precedes(ZERO_VALUE)
    ]
    yield CheckResult("below n", not below, A.labels(below[:1]))
    split = [
        a
        for a in range(A.size)
        if v(a) != v(int(A.meet[a, A.fix])) + v(positive_part(A, a))
    ]
    yield CheckResult("split at n", not split, A.labels(split[:1]))
    parts = [
        a
        for a in range(A.size)
        if v(a) != TValue(v(positive_part(A, a)).first, v(negative_part(A, a)).first)
    ]
    yield CheckResult("positive and negative parts", not parts, A.labels(parts[:1]))


def structural_properties(A: DmfAlgebra, v: PartialMeasure) -> DataFrame:
    return audit_table(structural_laws(A, v))


def partial_valuation_report(A: DmfAlgebra, v: PartialMeasure) -> DataFrame:
    """Audit table of the four axioms followed by their consequences."""
    results = list(partial_valuation_laws(A, v))
    if first_failure(results):
        results.extend(structural_laws(A, v))
    return audit_table(results)


def pullback_partial_valuation(
    phi: DmfMorphism, v: PartialMeasure
) -> PartialValuation:
    """v̄∘φ, certified on the source of φ."""
    return _certified(phi.source, PartialMeasure(tuple(v(b) for b in phi.mapping)))


def induced_partial_valuation(
    L: Union[FiniteLattice, PiAlgebra], v: Valuation
) -> PartialValuation:
    """v̄(x, y) = (v(x), v(y)) on π(L), indexed as :class:`PiAlgebra` lays it out."""
    P = L if isinstance(L, PiAlgebra) else PiAlgebra(L)
    failure = is_valuation(P.source, v)
    if not failure:
        raise LawViolationError(failure.law, failure.witness)
    return _certified(P, PartialMeasure(tuple(TValue(v(x), v(y)) for x, y in P.pairs)))


def extract_nabla_valuation(
    A: DmfAlgebra, v: PartialMeasure
) -> tuple[FiniteLattice, Valuation]:
    """∇ with bottom n and top 1, and the valuation v(x) = v̄(x)₀ on it."""
    lattice, ids = nabla_lattice(A)
    result = Valuation(tuple(v(a).first for a in ids))
    failure = is_valuation(lattice, result)
    if not failure:
        raise LawViolationError(failure.law, failure.witness)
    return lattice, result


def decompose(
    A: DmfAlgebra, v: PartialMeasure
) -> tuple[DmfMorphism, PartialValuation]:
    """The embedding φ: A → π(∇) and the valuation v̄_v on π(∇) induced by
    the ∇ valuation, with v̄ = v̄_v∘φ."""
    phi = embed_into_pi_nabla(A)
    _, nabla_valuation = extract_nabla_valuation(A, v)
    induced = induced_partial_valuation(phi.target, nabla_valuation)
    mismatch = [b for b in range(A.size) if v(b) != induced(phi(b))]
    if mismatch:
        raise LawViolationError("decomposition", A.labels(mismatch[:1]))
    return phi, induced


def recover_classical(field: PartialField, v: PartialMeasure) -> dict[str, Fraction]:
    """Point weights p with v̄(A, B) = (p(A), p(B)) on the full D(S)."""
    if not field.is_full:
        raise InvalidConfigurationError("classical weights need the full D(S)")
    space = field.space
    weights = {
        point: v(field.index(space.partial_set(pos=[point]))).first
        for point in space.points
    }
    for i, member in enumerate(field.members):
        expected = TValue(
            sum((weights[p] for p in member.pos_points), Fraction(0)),
            sum((weights[p] for p in member.neg_points), Fraction(0)),
        )
        if v(i) != expected:
            raise LawViolationError("classical recovery", (member.label,))
    return weights


# order ========================================================================
def is_isotone_on(
    A: DmfAlgebra, v: PartialMeasure, elements: Optional[Sequence[int]] = None
) -> CheckResult:
    """x ≤ y implies v̄(x) ≼ v̄(y), for x, y among ``elements``."""
    first, second = v.components()
    precedes = np.asarray(
        (first[:, None] <= first[None, :]) & (second[None, :] <= second[:, None]),
        dtype=bool,
    )
    violations = A.order & ~precedes
    if elements is not None:
        inside = np.zeros(A.size, dtype=bool)
        inside[list(elements)] = True
        violations &= inside[:, None] & inside[None, :]
    hits = np.argwhere(violations)
    return CheckResult(
        "isotonicity", len(hits) == 0, A.labels(hits[0]) if len(hits) else ()
    )


def is_isotone(A: DmfAlgebra, v: PartialMeasure) -> CheckResult:
    return is_isotone_on(A, v)


def nabla_is_boolean(A: DmfAlgebra) -> bool:
    lattice, _ = nabla_lattice(A)
    return lattice.is_boolean


def indetermination(v: PartialMeasure, a: int) -> Fraction:
    """u(a) = 1 − (v̄(a)₀ + v̄(a)₁)."""
    return 1 - v(a).first - v(a).second


def bias(v: PartialMeasure, a: int) -> Fraction:
    """θ(a) = v̄(a)₁ / v̄(a)₀."""
    if v(a).first == 0:
        raise ZeroConditionError("bias needs a nonzero first component")
    return v(a).second / v(a).first


def equal_indetermination_comparable(A: DmfAlgebra, v: PartialMeasure) -> CheckResult:
    """Values of elements with the same indetermination are ≼-comparable."""
    for a in range(A.size):
        for b in range(a + 1, A.size):
            if indetermination(v, a) != indetermination(v, b):
                continue
            if not (v(a).precedes(v(b)) or v(b).precedes(v(a))):
                return CheckResult("equal indetermination", False, A.labels((a, b)))
    return CheckResult("equal indetermination", True)


def boolean_values_linearly_ordered(A: DmfAlgebra, v: PartialMeasure) -> CheckResult:
    """Boolean elements have no indetermination and ≼-comparable values."""
    ids = boolean_elements(A)
    undetermined = [a for a in ids if indetermination(v, a) != 0]
    if undetermined:
        return CheckResult("boolean values", False, A.labels(undetermined[:1]))
    for a in ids:
        for b in ids:
            if not (v(a).precedes(v(b)) or v(b).precedes(v(a))):
                return CheckResult("boolean values", False, A.labels((a, b)))
    return CheckResult("boolean values", True)


# conditioning =================================================================
def relativizing_map(A: DmfAlgebra, h: int) -> np.ndarray:
    """f(x) = (x∨¬h)∧h as an index array over A."""
    return A.meet[A.join[np.arange(A.size), A.neg[h]], h]


@dataclass(frozen=True)
class ConditionContext:
    """A valid condition h and the relativized partial valuation on [¬h, h].

    Parameters
    ----------
    algebra
        The DMF-algebra A.
    h
        Index of the condition in A.
    interval
        The DMF-algebra on [¬h, h].
    f
        The epimorphism x ↦ (x∨¬h)∧h onto the interval.
    valuation
        v̄_h(x) = v̄(x)/v̄(h)₀ on the interval.

    """

    algebra: DmfAlgebra
    h: int
    interval: DmfAlgebra
    f: DmfMorphism
    valuation: PartialValuation

    def conditional(self) -> PartialValuation:
        """v̄(·|h) = v̄_h∘f."""
        return pullback_partial_valuation(self.f, self.valuation)


def check_condition(A: DmfAlgebra, v: PartialMeasure, h: Element) -> int:
    """Index of h after checking the three conditioning preconditions in the
    order h ∈ ∇, isotonicity, nonzero first component."""
    h = A.index(h)
    if not A.order[A.fix, h]:
        raise NotInNablaError(f"condition {A.label(h)} is not in ∇")
    isotone = is_isotone(A, v)
    if not isotone:
        raise NotIsotoneError("partial valuation is not isotone", isotone.witness)
    if v(h).first == 0:
        raise ZeroConditionError(f"condition {A.label(h)} has first component 0")
    return h


def relativized_partial_valuation(
    A: DmfAlgebra, v: PartialMeasure, h: Element
) -> ConditionContext:
    """Relativize v̄ to the interval algebra [¬h, h]."""
    h = check_condition(A, v, h)
    scale = v(h).first
    ids = np.flatnonzero(A.order[A.neg[h], :] & A.order[:, h])
    too_large = [x for x in ids if v(x).first + v(x).second > scale]
    if too_large:
        raise LawViolationError("interval bound", A.labels(too_large[:1]))
    interval, f = interval_dmf(A, h)
    valuation = _certified(interval, PartialMeasure(tuple(v(x) / scale for x in ids)))
    return ConditionContext(A, h, interval, f, valuation)


def conditional_partial_valuation(
    A: DmfAlgebra, v: PartialMeasure, h: Element
) -> PartialValuation:
    """v̄(·|h) = v̄_h∘f, certified on A."""
    return relativized_partial_valuation(A, v, h).conditional()


def weak_bayes(
    A: DmfAlgebra, v: PartialMeasure, h: Element, e: Element
) -> tuple[TValue, TValue]:
    """Both sides of v̄(h|e) = v̄(e|h)·v̄(h)₀/v̄(e)₀."""
    h, e = A.index(h), A.index(e)
    lhs = conditional_partial_valuation(A, v, e)(h)
    rhs = conditional_partial_valuation(A, v, h)(e) * (v(h).first / v(e).first)
    logger.debug("weak Bayes at h=%s, e=%s: %s vs %s", A.label(h), A.label(e), lhs, rhs)
    return lhs, rhs


@dataclass(frozen=True)
class PosNegIdentity:
    """Both sides of v̄(h|e⁺) = v̄(h|∇e)·(1+θ(e)) − v̄(h|e⁻)·θ(e) and the
    three conditional values entering them."""

    lhs: TValue
    rhs: TValue
    given_nabla: TValue
    given_negative: TValue
    bias: Fraction

    @property
    def holds(self) -> bool:
        return self.lhs == self.rhs


def _check_part_identities(A: DmfAlgebra, v: PartialMeasure, e: int) -> None:
    plus, minus, both = positive_part(A, e), negative_part(A, e), nabla_part(A, e)
    firsts = (
        ("positive part", v(plus).first, v(e).first),
        ("negative part", v(minus).first, v(e).second),
        ("nabla part", v(both).first, v(e).first + v(e).second),
    )
    for law, value, expected in firsts:
        if value != expected:
            raise LawViolationError(law, (A.label(e),))
    f_plus = relativizing_map(A, plus)
    f_minus = relativizing_map(A, minus)
    f_both = relativizing_map(A, both)
    if (A.join[f_plus, f_minus] != A.join[f_both, A.fix]).any():
        raise LawViolationError("split join", (A.label(e),))
    if (A.meet[f_plus, f_minus] != A.meet[f_both, A.fix]).any():
        raise LawViolationError("split meet", (A.label(e),))
    for a in range(A.size):
        if v(int(f_both[a])) != v(int(f_plus[a])) + v(int(f_minus[a])):
            raise LawViolationError("split value", (A.label(e), A.label(a)))


def posneg_conditional_identity(
    A: DmfAlgebra, v: PartialMeasure, h: Element, e: Element
) -> PosNegIdentity:
    """Conditioning on e⁺ expressed through conditioning on ∇e and e⁻.

    Needs an isotone v̄ and both components of v̄(e) nonzero.
    """
    h, e = A.index(h), A.index(e)
    isotone = is_isotone(A, v)
    if not isotone:
        raise NotIsotoneError("partial valuation is not isotone", isotone.witness)
    if v(e).first == 0 or v(e).second == 0:
        raise ZeroConditionError(
            f"both components of the value of {A.label(e)} must be nonzero"
        )
    _check_part_identities(A, v, e)
    theta = bias(v, e)
    lhs = conditional_partial_valuation(A, v, positive_part(A, e))(h)
    given_nabla = conditional_partial_valuation(A, v, nabla_part(A, e))(h)
    given_negative = conditional_partial_valuation(A, v, negative_part(A, e))(h)
    rhs = given_nabla * (1 + theta) - given_negative * theta
    return PosNegIdentity(lhs, rhs, given_nabla, given_negative, theta)

