"""Partial sets over a finite sample space and partial probability measures.

A partial set is a pair ``(A, B)`` of disjoint subsets of the sample space,
its positive and negative part. Subsets are stored as bitmasks with sample
point ``i`` at bit ``i``. The members of D(S) are enumerated in ternary
counting order, point 0 being the least significant digit, with digit 0 for
a negative point, 1 for an undecided point and 2 for a positive point. The
bottom ``(∅, S)`` comes first and the top ``(S, ∅)`` last.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Iterator, Mapping, Optional, Sequence, Union

import numpy as np

from .dmf import DmfAlgebra, saturate
from .exceptions import CapExceededError, InvalidConfigurationError, LawViolationError
from .formula import Formula
from .globals import MAX_SAMPLE_SPACE, MAX_TRIPLE_CHECK, RationalLike, as_fraction
from .lattice import FiniteLattice
from .report import CheckResult, first_failure


@dataclass(frozen=True)
class SampleSpace:
    """Finite sample space with named points."""

    points: tuple[str, ...]

    def __post_init__(self) -> None:
        points = tuple(map(str, self.points))
        if len(set(points)) != len(points):
            raise InvalidConfigurationError("sample points must be distinct")
        object.__setattr__(self, "points", points)

    @property
    def size(self) -> int:
        return len(self.points)

    @property
    def full(self) -> int:
        return (1 << self.size) - 1

    @cached_property
    def _index(self) -> dict[str, int]:
        return {point: i for i, point in enumerate(self.points)}

    def mask(self, points: Iterable[str]) -> int:
        result = 0
        for point in points:
            try:
                result |= 1 << self._index[str(point)]
            except KeyError:
                raise InvalidConfigurationError(f"{point!r} is not a sample point")
        return result

    def subset(self, mask: int) -> tuple[str, ...]:
        return tuple(p for i, p in enumerate(self.points) if mask >> i & 1)

    def format_subset(self, mask: int) -> str:
        return "{" + ",".join(self.subset(mask)) + "}"

    # distinguished partial sets ===============================================
    @property
    def bottom(self) -> PartialSet:
        return PartialSet(self, 0, self.full)

    @property
    def top(self) -> PartialSet:
        return PartialSet(self, self.full, 0)

    @property
    def neither(self) -> PartialSet:
        return PartialSet(self, 0, 0)

    def partial_set(
        self, pos: Iterable[str] = (), neg: Iterable[str] = ()
    ) -> PartialSet:
        return PartialSet(self, self.mask(pos), self.mask(neg))

    def from_index(self, index: int) -> PartialSet:
        """Inverse of :attr:`PartialSet.index`."""
        pos = neg = 0
        for i in range(self.size):
            index, digit = divmod(index, 3)
            if digit == 2:
                pos |= 1 << i
            elif digit == 0:
                neg |= 1 << i
        return PartialSet(self, pos, neg)


@dataclass(frozen=True)
class PartialSet:
    """Disjoint pair (positive, negative) of subsets of a sample space.

    The connectives are available as operators: ``a & b`` is ⊓, ``a | b``
    is ⊔, ``-a`` is the negation and ``a <= b`` is ⊑.
    """

    space: SampleSpace
    positive: int
    negative: int

    def __post_init__(self) -> None:
        if self.positive & self.negative:
            raise InvalidConfigurationError(
                "positive and negative parts of a partial set must be disjoint"
            )
        if (self.positive | self.negative) & ~self.space.full:
            raise InvalidConfigurationError("partial set leaves the sample space")

    @classmethod
    def from_dict(cls, space: SampleSpace, candidate: Mapping) -> PartialSet:
        return space.partial_set(candidate.get("pos", ()), candidate.get("neg", ()))

    def to_dict(self) -> dict:
        return {
            "pos": list(self.space.subset(self.positive)),
            "neg": list(self.space.subset(self.negative)),
        }

    @property
    def pos_points(self) -> tuple[str, ...]:
        return self.space.subset(self.positive)

    @property
    def neg_points(self) -> tuple[str, ...]:
        return self.space.subset(self.negative)

    @property
    def label(self) -> str:
        return (
            f"{self.space.format_subset(self.positive)}|"
            f"{self.space.format_subset(self.negative)}"
        )

    @property
    def index(self) -> int:
        """Position of the partial set in the enumeration of D(S)."""
        result = 0
        for i in reversed(range(self.space.size)):
            digit = 2 if self.positive >> i & 1 else 0 if self.negative >> i & 1 else 1
            result = 3 * result + digit
        return result

    def _check_space(self, other: PartialSet) -> None:
        if self.space != other.space:
            raise InvalidConfigurationError("partial sets over different spaces")

    def meet(self, other: PartialSet) -> PartialSet:
        self._check_space(other)
        return PartialSet(
            self.space, self.positive & other.positive, self.negative | other.negative
        )

    def join(self, other: PartialSet) -> PartialSet:
        self._check_space(other)
        return PartialSet(
            self.space, self.positive | other.positive, self.negative & other.negative
        )

    def neg(self) -> PartialSet:
        return PartialSet(self.space, self.negative, self.positive)

    def leq(self, other: PartialSet) -> bool:
        self._check_space(other)
        return (
            self.positive & ~other.positive == 0
            and other.negative & ~self.negative == 0
        )

    __and__ = meet
    __or__ = join
    __neg__ = neg
    __invert__ = neg
    __le__ = leq

    @property
    def is_boolean(self) -> bool:
        """Whether (A, B) has B = S − A."""
        return self.positive | self.negative == self.space.full

    def __str__(self) -> str:
        return self.label


def ps_meet(a: PartialSet, b: PartialSet) -> PartialSet:
    return a.meet(b)


def ps_join(a: PartialSet, b: PartialSet) -> PartialSet:
    return a.join(b)


def ps_neg(a: PartialSet) -> PartialSet:
    return a.neg()


def ps_leq(a: PartialSet, b: PartialSet) -> bool:
    return a.leq(b)


# values =======================================================================
@dataclass(frozen=True)
class TValue:
    """Pair of exact rationals, the value of a partial event.

    Arithmetic is componentwise over Q²; membership in
    T = {(x, y): x, y ≥ 0, x + y ≤ 1} is a separate check, :attr:`in_t`.
    """

    first: Fraction
    second: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "first", as_fraction(self.first))
        object.__setattr__(self, "second", as_fraction(self.second))

    @classmethod
    def parse(cls, value: Union[TValue, Sequence[RationalLike]]) -> TValue:
        if isinstance(value, TValue):
            return value
        if isinstance(value, str) or len(value) != 2:
            raise InvalidConfigurationError(f"{value!r} is not a pair of rationals")
        return cls(*value)

    def __add__(self, other: TValue) -> TValue:
        return TValue(self.first + other.first, self.second + other.second)

    def __sub__(self, other: TValue) -> TValue:
        return TValue(self.first - other.first, self.second - other.second)

    def __mul__(self, scalar: RationalLike) -> TValue:
        scalar = as_fraction(scalar)
        return TValue(self.first * scalar, self.second * scalar)

    __rmul__ = __mul__

    def __truediv__(self, scalar: RationalLike) -> TValue:
        scalar = as_fraction(scalar)
        return TValue(self.first / scalar, self.second / scalar)

    def __getitem__(self, i: int) -> Fraction:
        return (self.first, self.second)[i]

    def sigma(self) -> TValue:
        return TValue(self.second, self.first)

    def precedes(self, other: TValue) -> bool:
        """(x, y) ≼ (w, z) iff x ≤ w and z ≤ y."""
        return self.first <= other.first and other.second <= self.second

    @property
    def in_t(self) -> bool:
        return self.first >= 0 and self.second >= 0 and self.first + self.second <= 1

    def to_list(self) -> list[str]:
        return [str(self.first), str(self.second)]

    def __str__(self) -> str:
        return f"({self.first}, {self.second})"


ZERO_VALUE = TValue(0, 0)
TOP_VALUE = TValue(1, 0)
BOTTOM_VALUE = TValue(0, 1)


def sigma(t: TValue) -> TValue:
    """σ(x, y) = (y, x)."""
    return t.sigma()


def tvalue_add(t: TValue, u: TValue) -> TValue:
    return t + u


def tvalue_sub(t: TValue, u: TValue) -> TValue:
    return t - u


def tvalue_scale(t: TValue, scalar: RationalLike) -> TValue:
    return t * scalar


# fields =======================================================================
class PartialField:
    """A field of partial sets: members of D(S) closed under ⊓, ⊔ and −,
    containing 0, n and 1.

    Members are kept in D(S) enumeration order and are addressed by their
    position in :attr:`members`.

    Parameters
    ----------
    space
        The sample space.
    members
        Partial sets of the field.
    check_closure
        Verify closure on construction.

    """

    def __init__(
        self,
        space: SampleSpace,
        members: Iterable[PartialSet],
        check_closure: bool = True,
    ) -> None:
        self.space = space
        self.members = self._as_members(members)
        self._where = {member: i for i, member in enumerate(self.members)}
        if check_closure:
            self._check_closure()

    def _as_members(self, members: Iterable[PartialSet]) -> tuple[PartialSet, ...]:
        members = set(members)
        if any(member.space != self.space for member in members):
            raise InvalidConfigurationError("field members over another space")
        return tuple(sorted(members, key=lambda member: member.index))

    def _check_closure(self) -> None:
        for constant in (self.space.bottom, self.space.neither, self.space.top):
            if constant not in self._where:
                raise LawViolationError("constants", (constant.label,))
        for a in self.members:
            if -a not in self._where:
                raise LawViolationError("closure", (a.label,))
            for b in self.members:
                if a & b not in self._where or a | b not in self._where:
                    raise LawViolationError("closure", (a.label, b.label))

    @classmethod
    def generated(
        cls, space: SampleSpace, generators: Sequence[PartialSet]
    ) -> tuple[PartialField, dict[int, Formula]]:
        """Least field containing the generators, with a witness term over
        ``p0, p1, ...`` for every member, keyed by member position."""
        witnesses = saturate(
            list(generators),
            space.bottom,
            space.neither,
            space.top,
            meet=PartialSet.meet,
            join=PartialSet.join,
            neg=PartialSet.neg,
        )
        field = cls(space, witnesses, check_closure=False)
        return field, {i: witnesses[member] for i, member in enumerate(field.members)}

    @classmethod
    def from_dict(cls, candidate: Mapping) -> PartialField:
        """Build from ``{"space": [...], "members": [{"pos", "neg"}, ...]}``;
        without ``"members"`` the field is all of D(S)."""
        try:
            space = SampleSpace(tuple(candidate["space"]))
        except KeyError:
            raise InvalidConfigurationError("partial field is missing 'space'")
        if "members" not in candidate:
            return enumerate_DS(space)
        members = [PartialSet.from_dict(space, m) for m in candidate["members"]]
        return cls(space, members)

    def to_dict(self) -> dict:
        return {
            "space": list(self.space.points),
            "members": [member.to_dict() for member in self.members],
        }

    @property
    def size(self) -> int:
        return len(self.members)

    def index(self, member: Union[int, str, PartialSet]) -> int:
        if isinstance(member, PartialSet):
            try:
                return self._where[member]
            except KeyError:
                raise InvalidConfigurationError(f"{member.label} is not in the field")
        return self.algebra.index(member)

    def __contains__(self, member: PartialSet) -> bool:
        return member in self._where

    def __iter__(self) -> Iterator[PartialSet]:
        return iter(self.members)

    def __len__(self) -> int:
        return self.size

    @cached_property
    def algebra(self) -> DmfAlgebra:
        """The field as a certified DMF-algebra."""
        size = self.size
        meet = np.empty((size, size), dtype=np.int64)
        join = np.empty((size, size), dtype=np.int64)
        for i, a in enumerate(self.members):
            for j, b in enumerate(self.members):
                meet[i, j] = self._where[a & b]
                join[i, j] = self._where[a | b]
        neg = [self._where[-a] for a in self.members]
        lattice = FiniteLattice(
            [member.label for member in self.members],
            meet,
            join,
            self._where[self.space.bottom],
            self._where[self.space.top],
            check_laws=size <= MAX_TRIPLE_CHECK,
            distributive=True,
        )
        return DmfAlgebra(lattice, neg, self._where[self.space.neither])

    @property
    def nabla_members(self) -> tuple[int, ...]:
        """Positions of the members (A, ∅)."""
        return tuple(i for i, m in enumerate(self.members) if m.negative == 0)

    @property
    def boolean_members(self) -> tuple[int, ...]:
        """Positions of the members (A, S − A)."""
        return tuple(i for i, m in enumerate(self.members) if m.is_boolean)

    @property
    def is_full(self) -> bool:
        return self.size == 3**self.space.size

    def __repr__(self) -> str:
        return f"{type(self).__name__}(points={self.space.size}, size={self.size})"


def enumerate_DS(
    space: Union[SampleSpace, Sequence[str]], cap: int = MAX_SAMPLE_SPACE
) -> PartialField:
    """D(S), the field of all 3^|S| partial sets, in enumeration order."""
    if not isinstance(space, SampleSpace):
        space = SampleSpace(tuple(space))
    if space.size > cap:
        raise CapExceededError(
            f"D(S) over {space.size} points exceeds the cap {cap}"
        )
    members = [space.from_index(i) for i in range(3**space.size)]
    return PartialField(space, members, check_closure=False)


def nabla_to_subset(member: PartialSet) -> int:
    """The isomorphism ∇ ≅ P(S), (A, ∅) ↦ A."""
    if member.negative:
        raise InvalidConfigurationError(f"{member.label} is not in ∇")
    return member.positive


# measures =====================================================================
@dataclass(frozen=True)
class PartialMeasure:
    """TValue valued map on a DMF-algebra, by element index."""

    values: tuple[TValue, ...]

    def __call__(self, a: int) -> TValue:
        return self.values[a]

    @classmethod
    def from_mapping(
        cls,
        algebra: Union[DmfAlgebra, PartialField],
        values: Mapping[Union[int, str, PartialSet], Union[TValue, Sequence[RationalLike]]],
    ) -> PartialMeasure:
        size = algebra.size
        result: list[Optional[TValue]] = [None] * size
        for element, value in values.items():
            result[algebra.index(element)] = TValue.parse(value)
        if any(value is None for value in result):
            raise InvalidConfigurationError(
                f"{cls.__name__} must give a value for each of {size} elements"
            )
        return cls(tuple(result))

    def to_dict(self, algebra: DmfAlgebra) -> dict:
        return {
            "values": {
                algebra.label(i): value.to_list() for i, value in enumerate(self.values)
            }
        }

    def components(self) -> tuple[np.ndarray, np.ndarray]:
        first = np.array([value.first for value in self.values], dtype=object)
        second = np.array([value.second for value in self.values], dtype=object)
        return first, second


def partial_value_laws(
    A: DmfAlgebra, v: PartialMeasure, normalization: str
) -> Iterator[CheckResult]:
    """The four axioms shared by partial measures and partial valuations.

    ``normalization`` selects the first axiom: ``"top"`` asks for
    v(1) = (1, 0), ``"bottom"`` for v(0) = (0, 1). The additivity axiom is
    checked as v(a∨b) = v(a) + v(b) − v(a∧b), componentwise over Q².
    """
    yield CheckResult("totality", len(v.values) == A.size)
    if len(v.values) != A.size:
        return
    labels = A.elements
    if normalization == "top":
        holds = v(A.top) == TOP_VALUE
        yield CheckResult("axiom 1", holds, () if holds else (A.label(A.top),))
    else:
        holds = v(A.bottom) == BOTTOM_VALUE
        yield CheckResult("axiom 1", holds, () if holds else (A.label(A.bottom),))

    mismatch = np.zeros((A.size, A.size), dtype=bool)
    for component in v.components():
        mismatch |= np.asarray(
            component[A.join] + component[A.meet]
            != component[:, None] + component[None, :],
            dtype=bool,
        )
    hits = np.argwhere(mismatch)
    yield CheckResult(
        "axiom 2", len(hits) == 0, A.labels(hits[0]) if len(hits) else ()
    )

    swapped = [a for a in range(A.size) if v(int(A.neg[a])) != v(a).sigma()]
    yield CheckResult("axiom 3", not swapped, A.labels(swapped[:1]))

    above_n = np.flatnonzero(A.order[A.fix, :])
    negative = [a for a in above_n if not ZERO_VALUE.precedes(v(a))]
    yield CheckResult("axiom 4", not negative, A.labels(negative[:1]))

    outside = [a for a in range(A.size) if not v(a).in_t]
    yield CheckResult("range", not outside, A.labels(outside[:1]), required=False)


def partial_measure_laws(
    field: PartialField, mu: PartialMeasure
) -> Iterator[CheckResult]:
    yield from partial_value_laws(field.algebra, mu, "top")


def is_partial_measure(field: PartialField, mu: PartialMeasure) -> CheckResult:
    """Check the four axioms of a measure of partial probability."""
    return first_failure(partial_measure_laws(field, mu), "partial measure")


def _as_point_weights(
    space: SampleSpace, weights: Mapping[str, RationalLike]
) -> tuple[Fraction, ...]:
    result = [Fraction(0)] * space.size
    for point, weight in weights.items():
        result[space.mask([point]).bit_length() - 1] = as_fraction(weight)
    if any(weight < 0 for weight in result):
        raise InvalidConfigurationError("weights must be nonnegative")
    if sum(result) != 1:
        raise InvalidConfigurationError(f"weights sum to {sum(result)}, not 1")
    return tuple(result)


def subset_weight(weights: Sequence[Fraction], mask: int) -> Fraction:
    return sum((w for i, w in enumerate(weights) if mask >> i & 1), Fraction(0))


def associated_partial_space(
    field: PartialField, weights: Mapping[str, RationalLike]
) -> PartialMeasure:
    """μ(A, B) = (p(A), p(B)) for the classical weights p on the points."""
    p = _as_point_weights(field.space, weights)
    mu = PartialMeasure(
        tuple(
            TValue(subset_weight(p, m.positive), subset_weight(p, m.negative))
            for m in field.members
        )
    )
    failure = is_partial_measure(field, mu)
    if not failure:
        raise LawViolationError(failure.law, failure.witness)
    return mu
