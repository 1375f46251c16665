from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterator, Mapping, Optional, Sequence, Union

import numpy as np
from numpy.typing import NDArray

from .exceptions import (
    InvalidConfigurationError,
    LawViolationError,
    MorphismError,
    PreconditionError,
    ZeroConditionError,
)
from .globals import RationalLike, as_fraction, format_fraction
from .report import CheckResult, first_failure

Element = Union[int, str]


def _first_hit(mask: NDArray) -> Optional[tuple[int, ...]]:
    """Row-major first index where ``mask`` is set."""
    hits = np.argwhere(np.asarray(mask, dtype=bool))
    if len(hits) == 0:
        return None
    return tuple(int(i) for i in hits[0])


def _law(
    law: str, mask: NDArray, elements: Sequence[str], required: bool = True
) -> CheckResult:
    hit = _first_hit(mask)
    if hit is None:
        return CheckResult(law, True, required=required)
    return CheckResult(law, False, tuple(elements[i] for i in hit), required)


def _frozen(table: NDArray) -> NDArray:
    table = np.array(table, dtype=np.int64)
    table.setflags(write=False)
    return table


def lattice_laws(
    elements: Sequence[str],
    meet: Sequence[Sequence[int]],
    join: Sequence[Sequence[int]],
    bottom: int,
    top: int,
) -> Iterator[CheckResult]:
    """Check the bounded lattice laws one at a time.

    Results come in the order nontriviality, totality, idempotency,
    commutativity, associativity, absorption, bounds, followed by the
    informational distributivity row. The stream stops early when the
    tables are too malformed for the remaining laws to be evaluated.
    """
    size = len(elements)
    yield CheckResult("nontriviality", size >= 2)
    if size < 2:
        return
    try:
        meet = np.asarray(meet, dtype=np.int64)
        join = np.asarray(join, dtype=np.int64)
    except (TypeError, ValueError):
        yield CheckResult("totality", False)
        return
    total = (
        meet.shape == (size, size)
        and join.shape == (size, size)
        and bool(((meet >= 0) & (meet < size)).all())
        and bool(((join >= 0) & (join < size)).all())
        and 0 <= bottom < size
        and 0 <= top < size
    )
    yield CheckResult("totality", total)
    if not total:
        return

    idx = np.arange(size)
    yield _law(
        "idempotency", (meet[idx, idx] != idx) | (join[idx, idx] != idx), elements
    )
    yield _law("commutativity", (meet != meet.T) | (join != join.T), elements)
    associativity = np.zeros((size, size, size), dtype=bool)
    for op in (meet, join):
        left = op[op[:, :, None], idx[None, None, :]]
        right = op[idx[:, None, None], op[None, :, :]]
        associativity |= left != right
    yield _law("associativity", associativity, elements)
    yield _law(
        "absorption",
        (meet[idx[:, None], join] != idx[:, None])
        | (join[idx[:, None], meet] != idx[:, None]),
        elements,
    )
    yield _law(
        "bounds", (join[bottom, idx] != idx) | (meet[top, idx] != idx), elements
    )
    yield _law("distributivity", _distributivity_mask(meet, join), elements, False)


def _distributivity_mask(meet: NDArray, join: NDArray) -> NDArray:
    idx = np.arange(len(meet))
    meet_over_join = meet[idx[:, None, None], join[None, :, :]] != join[
        meet[:, :, None], meet[:, None, :]
    ]
    join_over_meet = join[idx[:, None, None], meet[None, :, :]] != meet[
        join[:, :, None], join[:, None, :]
    ]
    return meet_over_join | join_over_meet


class FiniteLattice:
    """Finite bounded lattice given by its operation tables.

    Elements are addressed by index; ``elements`` holds their labels. The
    order is derived from the meet table, ``a <= b`` iff ``meet[a, b] == a``.

    Parameters
    ----------
    elements
        Distinct element labels.
    meet
        Square table of meet results.
    join
        Square table of join results.
    bottom
        Index of the least element.
    top
        Index of the greatest element.
    check_laws
        Certify all lattice laws on construction. Turned off only by
        constructors whose tables are correct by construction, which must
        then pass ``distributive``.
    distributive
        Known distributivity flag when ``check_laws`` is False.

    """

    def __init__(
        self,
        elements: Sequence[str],
        meet: Sequence[Sequence[int]],
        join: Sequence[Sequence[int]],
        bottom: int,
        top: int,
        check_laws: bool = True,
        distributive: Optional[bool] = None,
    ) -> None:
        self.elements = self._as_elements(elements)
        if check_laws:
            results = list(lattice_laws(self.elements, meet, join, bottom, top))
            failure = first_failure(results)
            if not failure:
                raise LawViolationError(failure.law, failure.witness)
            distributive = results[-1].holds
        elif distributive is None:
            raise InvalidConfigurationError(
                "distributive must be given when lattice laws are not checked"
            )
        self.meet = _frozen(meet)
        self.join = _frozen(join)
        self.bottom = int(bottom)
        self.top = int(top)
        self.distributive = bool(distributive)
        self._index = {label: i for i, label in enumerate(self.elements)}

    def _as_elements(self, elements: Sequence[str]) -> tuple[str, ...]:
        elements = tuple(map(str, elements))
        if len(set(elements)) != len(elements):
            raise InvalidConfigurationError("element labels must be distinct")
        return elements

    # constructors =============================================================
    @classmethod
    def chain(cls, k: int) -> FiniteLattice:
        """The k-element chain ``0 < 1 < ... < k-1``."""
        if k < 2:
            raise InvalidConfigurationError(f"a chain needs two elements, {k=:}")
        idx = np.arange(k)
        return cls(
            [str(i) for i in idx],
            np.minimum.outer(idx, idx),
            np.maximum.outer(idx, idx),
            0,
            k - 1,
            check_laws=False,
            distributive=True,
        )

    @classmethod
    def boolean(cls, k: int, labels: Optional[Sequence[str]] = None) -> FiniteLattice:
        """The powerset lattice 2^k; element index is the subset bitmask.

        Without ``labels`` an element is labelled by its bitmask written
        with atom 0 as the rightmost digit, e.g. ``"01"`` for atom 0 of 2^2.
        """
        if k < 1:
            raise InvalidConfigurationError(f"2^k needs k >= 1, {k=:}")
        idx = np.arange(2**k)
        if labels is None:
            labels = [format(i, f"0{k}b") for i in range(2**k)]
        return cls(
            labels,
            np.bitwise_and.outer(idx, idx),
            np.bitwise_or.outer(idx, idx),
            0,
            2**k - 1,
            check_laws=False,
            distributive=True,
        )

    @classmethod
    def from_dict(cls, candidate: Mapping) -> FiniteLattice:
        """Build a certified lattice from the JSON schema
        ``{"elements", "meet", "join", "bottom", "top"}``."""
        try:
            return cls(
                candidate["elements"],
                candidate["meet"],
                candidate["join"],
                candidate["bottom"],
                candidate["top"],
            )
        except KeyError as error:
            raise InvalidConfigurationError(f"lattice is missing {error}")

    def to_dict(self) -> dict:
        return {
            "elements": list(self.elements),
            "meet": self.meet.tolist(),
            "join": self.join.tolist(),
            "bottom": self.bottom,
            "top": self.top,
        }

    # element access ===========================================================
    @property
    def size(self) -> int:
        return len(self.elements)

    def index(self, element: Element) -> int:
        """Index of an element given by index or label."""
        if isinstance(element, (int, np.integer)):
            if not 0 <= element < self.size:
                raise InvalidConfigurationError(f"no element with index {element}")
            return int(element)
        try:
            return self._index[element]
        except KeyError:
            raise InvalidConfigurationError(f"{element!r} is not an element")

    def label(self, i: int) -> str:
        return self.elements[i]

    def labels(self, ids: Sequence[int]) -> tuple[str, ...]:
        return tuple(self.elements[i] for i in ids)

    @cached_property
    def order(self) -> NDArray:
        """Boolean matrix with ``order[a, b]`` iff ``a <= b``."""
        order = self.meet == np.arange(self.size)[:, None]
        order.setflags(write=False)
        return order

    def leq(self, a: Element, b: Element) -> bool:
        return bool(self.order[self.index(a), self.index(b)])

    # complements ==============================================================
    def complement(self, a: Element) -> Optional[int]:
        """The first b with a∧b = 0 and a∨b = 1, or None."""
        a = self.index(a)
        hits = np.flatnonzero(
            (self.meet[a] == self.bottom) & (self.join[a] == self.top)
        )
        return int(hits[0]) if len(hits) else None

    @cached_property
    def complements(self) -> Optional[NDArray]:
        """Complement of every element, or None when one is missing."""
        result = [self.complement(a) for a in range(self.size)]
        if any(c is None for c in result):
            return None
        return _frozen(result)

    @property
    def is_complemented(self) -> bool:
        return self.complements is not None

    @property
    def is_boolean(self) -> bool:
        return self.distributive and self.is_complemented

    def sublattice(
        self, ids: Sequence[int], bottom: int, top: int
    ) -> FiniteLattice:
        """Bounded lattice on a subset closed under meet and join.

        Element order follows ``ids``; ``bottom`` and ``top`` are indices of
        this lattice and must belong to ``ids``.
        """
        ids = np.asarray(ids, dtype=np.int64)
        where = np.full(self.size, -1, dtype=np.int64)
        where[ids] = np.arange(len(ids))
        meet = where[self.meet[np.ix_(ids, ids)]]
        join = where[self.join[np.ix_(ids, ids)]]
        if (meet < 0).any() or (join < 0).any() or where[bottom] < 0 or where[top] < 0:
            raise LawViolationError("closure", self.labels(ids[:1]))
        return FiniteLattice(
            self.labels(ids),
            meet,
            join,
            int(where[bottom]),
            int(where[top]),
            check_laws=False,
            distributive=self.distributive,
        )

    def __repr__(self) -> str:
        return (
            f"{type(self).__name__}(size={self.size}, "
            f"distributive={self.distributive})"
        )


def validate_lattice(candidate: Mapping) -> FiniteLattice:
    """Certify a raw lattice description, raising a
    :class:`~partialprob.exceptions.LawViolationError` naming the first
    violated law."""
    return FiniteLattice.from_dict(candidate)


def find_isomorphism(
    source: FiniteLattice,
    target: FiniteLattice,
    fixed: Optional[Mapping[int, int]] = None,
    source_neg: Optional[NDArray] = None,
    target_neg: Optional[NDArray] = None,
) -> Optional[NDArray]:
    """Search for an isomorphism by backtracking.

    Returns the map as an index array, or None. When negation tables are
    given they must be preserved too, and ``fixed`` pins images of
    distinguished elements such as n.
    """
    size = source.size
    if size != target.size:
        return None
    mapping = np.full(size, -1, dtype=np.int64)
    used = np.zeros(size, dtype=bool)
    pinned = {source.bottom: target.bottom, source.top: target.top}
    pinned.update(fixed or {})
    for a, b in pinned.items():
        if mapping[a] >= 0 and mapping[a] != b:
            return None
        mapping[a] = b
        used[b] = True
    below_source = source.order.sum(axis=0)
    below_target = target.order.sum(axis=0)

    def consistent() -> bool:
        ids = np.flatnonzero(mapping >= 0)
        images = mapping[ids]
        for src, tgt in ((source.meet, target.meet), (source.join, target.join)):
            mapped = mapping[src[np.ix_(ids, ids)]]
            expected = tgt[np.ix_(images, images)]
            if ((mapped >= 0) & (mapped != expected)).any():
                return False
        if source_neg is not None:
            mapped = mapping[source_neg[ids]]
            if ((mapped >= 0) & (mapped != target_neg[images])).any():
                return False
        return True

    free = [a for a in range(size) if mapping[a] < 0]

    def extend(k: int) -> bool:
        if k == len(free):
            return True
        a = free[k]
        for b in range(size):
            if used[b] or below_source[a] != below_target[b]:
                continue
            mapping[a], used[b] = b, True
            if consistent() and extend(k + 1):
                return True
            mapping[a], used[b] = -1, False
        return False

    if not consistent() or not extend(0):
        return None
    return mapping


# valuations ===================================================================
@dataclass(frozen=True)
class Valuation:
    """Rational valued map on the elements of a lattice, by element index."""

    values: tuple[Fraction, ...]

    def __call__(self, a: int) -> Fraction:
        return self.values[a]

    @classmethod
    def from_mapping(
        cls, lattice: FiniteLattice, values: Mapping[Element, RationalLike]
    ) -> Valuation:
        result = [None] * lattice.size
        for element, value in values.items():
            result[lattice.index(element)] = as_fraction(value)
        missing = [lattice.label(i) for i, value in enumerate(result) if value is None]
        if missing:
            raise InvalidConfigurationError(f"valuation is missing {missing}")
        return cls(tuple(result))

    def to_dict(self, lattice: FiniteLattice) -> dict:
        return {
            "values": {
                lattice.label(i): format_fraction(value)
                for i, value in enumerate(self.values)
            }
        }

    def as_array(self) -> NDArray:
        return np.array(self.values, dtype=object)


def valuation_laws(L: FiniteLattice, v: Valuation) -> Iterator[CheckResult]:
    """Laws of a bounded lattice valuation, plus an informational range row."""
    yield CheckResult("totality", len(v.values) == L.size)
    if len(v.values) != L.size:
        return
    for law, a, expected in (("bottom", L.bottom, 0), ("top", L.top, 1)):
        holds = v(a) == expected
        yield CheckResult(law, holds, () if holds else (L.label(a),))
    vals = v.as_array()
    mismatch = vals[L.join] + vals[L.meet] != vals[:, None] + vals[None, :]
    yield _law("modularity", mismatch, L.elements)
    yield _law("range", (vals < 0) | (vals > 1), L.elements, required=False)


def is_valuation(L: FiniteLattice, v: Valuation) -> CheckResult:
    """Check v(a∨b) = v(a) + v(b) − v(a∧b) for all pairs, v(0)=0 and v(1)=1."""
    return first_failure(valuation_laws(L, v), "valuation")


def check_boolean_valuation_additivity(
    L: FiniteLattice, v: Valuation
) -> tuple[bool, bool]:
    """Return whether v is a valuation and whether v is additive with v(1)=1.

    On a Boolean algebra the two answers always agree.
    """
    if not L.distributive or not L.is_complemented:
        raise PreconditionError("boolean", "lattice is not a Boolean algebra")
    vals = v.as_array()
    disjoint = L.meet == L.bottom
    sums = np.asarray(vals[L.join] != vals[:, None] + vals[None, :], dtype=bool)
    additive = v(L.top) == 1 and not bool((sums & disjoint).any())
    return bool(is_valuation(L, v)), additive


def is_isotone_valuation(L: FiniteLattice, v: Valuation) -> CheckResult:
    """a ≤ b implies v(a) ≤ v(b)."""
    vals = v.as_array()
    decreasing = np.asarray(vals[:, None] > vals[None, :], dtype=bool)
    return _law("isotonicity", L.order & decreasing, L.elements)


def is_strictly_isotone(L: FiniteLattice, v: Valuation) -> CheckResult:
    """a < b implies v(a) < v(b)."""
    vals = v.as_array()
    strict = L.order & ~np.eye(L.size, dtype=bool)
    not_increasing = np.asarray(vals[:, None] >= vals[None, :], dtype=bool)
    return _law("strict isotonicity", strict & not_increasing, L.elements)


# morphisms ====================================================================
class LatticeMorphism:
    """Map between finite bounded lattices preserving ∧, ∨, 0 and 1.

    Parameters
    ----------
    source
        Domain lattice.
    target
        Codomain lattice.
    mapping
        Image index of every source element.

    """

    def __init__(
        self,
        source: FiniteLattice,
        target: FiniteLattice,
        mapping: Sequence[int],
    ) -> None:
        self.source = source
        self.target = target
        self.mapping = self._as_mapping(mapping)
        failure = first_failure(self._laws())
        if not failure:
            raise MorphismError(failure.law, failure.witness)

    def _as_mapping(self, mapping: Sequence[int]) -> NDArray:
        mapping = np.asarray(mapping, dtype=np.int64)
        if mapping.shape != (self.source.size,):
            raise InvalidConfigurationError(
                f"map must give an image for each of {self.source.size} elements"
            )
        if ((mapping < 0) | (mapping >= self.target.size)).any():
            raise InvalidConfigurationError("map image outside the target")
        mapping.setflags(write=False)
        return mapping

    def _laws(self) -> Iterator[CheckResult]:
        m, src, tgt = self.mapping, self.source, self.target
        labels = src.elements
        yield _law(
            "preserves meet", m[src.meet] != tgt.meet[m[:, None], m[None, :]], labels
        )
        yield _law(
            "preserves join", m[src.join] != tgt.join[m[:, None], m[None, :]], labels
        )
        yield CheckResult("preserves bottom", m[src.bottom] == tgt.bottom)
        yield CheckResult("preserves top", m[src.top] == tgt.top)

    def __call__(self, a: int) -> int:
        return int(self.mapping[a])

    @property
    def is_injective(self) -> bool:
        return len(np.unique(self.mapping)) == self.source.size

    @property
    def is_surjective(self) -> bool:
        return len(np.unique(self.mapping)) == self.target.size

    @property
    def is_bijective(self) -> bool:
        return self.is_injective and self.is_surjective

    def inverse_mapping(self) -> NDArray:
        if not self.is_bijective:
            raise PreconditionError("bijective", "morphism is not bijective")
        inverse = np.empty(self.target.size, dtype=np.int64)
        inverse[self.mapping] = np.arange(self.source.size)
        return inverse


def pullback_valuation(phi: LatticeMorphism, v: Valuation) -> Valuation:
    """The valuation v∘φ on the source of φ."""
    result = Valuation(tuple(v(b) for b in phi.mapping))
    failure = is_valuation(phi.source, result)
    if not failure:
        raise LawViolationError(failure.law, failure.witness)
    return result


def induced_valuation(phi: LatticeMorphism, v: Valuation) -> Valuation:
    """The valuation v∘φ⁻¹ on the target of an isomorphism φ."""
    inverse = phi.inverse_mapping()
    return Valuation(tuple(v(a) for a in inverse))


# relativization ===============================================================
def _down_set(L: FiniteLattice, a: int) -> NDArray:
    return np.flatnonzero(L.order[:, a])


def relativize(
    L: FiniteLattice, a: Element
) -> tuple[FiniteLattice, LatticeMorphism]:
    """The interval [0, a] and the epimorphism f_a(x) = a∧x onto it."""
    if not L.distributive:
        raise PreconditionError(
            "distributive", "relativization needs a distributive lattice"
        )
    a = L.index(a)
    ids = _down_set(L, a)
    interval = L.sublattice(ids, L.bottom, a)
    where = np.full(L.size, -1, dtype=np.int64)
    where[ids] = np.arange(len(ids))
    f_a = LatticeMorphism(L, interval, where[L.meet[a]])
    return interval, f_a


def relativized_valuation(L: FiniteLattice, v: Valuation, a: Element) -> Valuation:
    """v_a(x) = v(x)/v(a) on the interval [0, a]."""
    a = L.index(a)
    if v(a) == 0:
        raise ZeroConditionError(f"valuation of {L.label(a)} is zero")
    return Valuation(tuple(v(x) / v(a) for x in _down_set(L, a)))


def conditional_valuation(L: FiniteLattice, v: Valuation, a: Element) -> Valuation:
    """v(·|a) = v_a∘f_a, i.e. v(x∧a)/v(a)."""
    a = L.index(a)
    v_a = relativized_valuation(L, v, a)
    _, f_a = relativize(L, a)
    return pullback_valuation(f_a, v_a)


def lattice_bayes(
    L: FiniteLattice, v: Valuation, h: Element, e: Element
) -> tuple[Fraction, Fraction]:
    """Both sides of v(h|e) = v(e|h)·v(h)/v(e)."""
    h, e = L.index(h), L.index(e)
    lhs = conditional_valuation(L, v, e)(h)
    rhs = conditional_valuation(L, v, h)(e) * v(h) / v(e)
    return lhs, rhs


def boolean_negation_in_interval(L: FiniteLattice, a: Element) -> CheckResult:
    """Inside [0, a] of a Boolean algebra the complement of x is a∧¬x."""
    if not L.is_boolean:
        raise PreconditionError("boolean", "lattice is not a Boolean algebra")
    a = L.index(a)
    ids = _down_set(L, a)
    relative = L.meet[a, L.complements[ids]]
    bad = (L.meet[ids, relative] != L.bottom) | (L.join[ids, relative] != a)
    return CheckResult(
        "interval complement", not bad.any(), L.labels(ids[bad][:1])
    )
