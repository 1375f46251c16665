from __future__ import annotations

import logging
from dataclasses import dataclass
from itertools import product
from typing import (
    Callable,
    Hashable,
    Iterator,
    Mapping,
    Optional,
    Sequence,
    TypeVar,
    Union,
)

import numpy as np
from numpy.typing import NDArray

from .exceptions import (
    InvalidConfigurationError,
    LawViolationError,
    NotInNablaError,
    PreconditionError,
)
from .formula import N, ONE, ZERO, And, Formula, Not, Or, Var
from .globals import KLEENE_VALUES, MAX_PRIME_IDEAL_ALGEBRA, MAX_TRIPLE_CHECK
from .lattice import (
    Element,
    FiniteLattice,
    LatticeMorphism,
    _frozen,
    _law,
    find_isomorphism,
)
from .report import CheckResult, first_failure
from .search import SubsetSearch

logger = logging.getLogger(__name__)

T = TypeVar("T", bound=Hashable)


def dmf_laws(
    lattice: FiniteLattice, neg: Sequence[int], fix: int
) -> Iterator[CheckResult]:
    """Check the DMF-algebra axioms over a certified lattice."""
    yield CheckResult("distributivity", lattice.distributive)
    if not lattice.distributive:
        return
    size = lattice.size
    neg = np.asarray(neg, dtype=np.int64)
    total = (
        neg.shape == (size,)
        and bool(((neg >= 0) & (neg < size)).all())
        and 0 <= fix < size
    )
    yield CheckResult("totality", total)
    if not total:
        return
    idx = np.arange(size)
    meet, join, labels = lattice.meet, lattice.join, lattice.elements
    yield _law("double negation", neg[neg] != idx, labels)
    yield _law(
        "de morgan", neg[meet] != join[neg[:, None], neg[None, :]], labels
    )
    contradictions = meet[idx, neg]
    tautologies = join[idx, neg]
    yield _law(
        "normality",
        meet[contradictions[:, None], tautologies[None, :]]
        != contradictions[:, None],
        labels,
    )
    yield CheckResult(
        "fixed point", neg[fix] == fix, () if neg[fix] == fix else (labels[fix],)
    )
    extra = [i for i in np.flatnonzero(neg == idx) if i != fix]
    yield CheckResult("unique fixed point", not extra, lattice.labels(extra[:1]))
    yield CheckResult("negation of bottom", neg[lattice.bottom] == lattice.top)


class DmfAlgebra:
    """Finite DMF-algebra: a bounded distributive lattice with an involutive
    De Morgan negation satisfying normality, and its unique negation fixed
    point n.

    Parameters
    ----------
    lattice
        Certified distributive lattice.
    neg
        Negation table.
    fix
        Index of the negation fixed point n.
    check_laws
        Certify the DMF axioms on construction.

    """

    def __init__(
        self,
        lattice: FiniteLattice,
        neg: Sequence[int],
        fix: int,
        check_laws: bool = True,
    ) -> None:
        self.lattice = lattice
        if check_laws:
            failure = first_failure(dmf_laws(lattice, neg, fix))
            if not failure:
                raise LawViolationError(failure.law, failure.witness)
        self.neg = _frozen(neg)
        self.fix = int(fix)

    @classmethod
    def from_dict(cls, candidate: Mapping) -> DmfAlgebra:
        """Build from the lattice JSON schema extended by "neg" and "fix"."""
        lattice = FiniteLattice.from_dict(candidate)
        try:
            return cls(lattice, candidate["neg"], candidate["fix"])
        except KeyError as error:
            raise InvalidConfigurationError(f"DMF-algebra is missing {error}")

    def to_dict(self) -> dict:
        return {**self.lattice.to_dict(), "neg": self.neg.tolist(), "fix": self.fix}

    # lattice structure ========================================================
    @property
    def elements(self) -> tuple[str, ...]:
        return self.lattice.elements

    @property
    def size(self) -> int:
        return self.lattice.size

    @property
    def meet(self) -> NDArray:
        return self.lattice.meet

    @property
    def join(self) -> NDArray:
        return self.lattice.join

    @property
    def bottom(self) -> int:
        return self.lattice.bottom

    @property
    def top(self) -> int:
        return self.lattice.top

    @property
    def order(self) -> NDArray:
        return self.lattice.order

    def index(self, element: Element) -> int:
        return self.lattice.index(element)

    def label(self, i: int) -> str:
        return self.lattice.label(i)

    def labels(self, ids: Sequence[int]) -> tuple[str, ...]:
        return self.lattice.labels(ids)

    def leq(self, a: Element, b: Element) -> bool:
        return self.lattice.leq(a, b)

    def subalgebra(self, ids: Sequence[int]) -> DmfAlgebra:
        """Subalgebra on a subset closed under ∧, ∨, ¬ containing 0, n, 1."""
        ids = np.asarray(sorted(set(map(int, ids))), dtype=np.int64)
        where = np.full(self.size, -1, dtype=np.int64)
        where[ids] = np.arange(len(ids))
        neg = where[self.neg[ids]]
        if (neg < 0).any() or where[self.fix] < 0:
            raise LawViolationError("closure", self.labels(ids[:1]))
        lattice = self.lattice.sublattice(ids, self.bottom, self.top)
        return DmfAlgebra(lattice, neg, int(where[self.fix]))

    def __repr__(self) -> str:
        return f"{type(self).__name__}(size={self.size}, n={self.label(self.fix)!r})"


def validate_dmf(candidate: Mapping) -> DmfAlgebra:
    """Certify a raw DMF description; failures raise
    :class:`~partialprob.exceptions.LawViolationError`."""
    return DmfAlgebra.from_dict(candidate)


def kleene_algebra() -> DmfAlgebra:
    """The three-element Kleene algebra K = {0, n, 1}."""
    idx = np.arange(3)
    lattice = FiniteLattice(
        KLEENE_VALUES,
        np.minimum.outer(idx, idx),
        np.maximum.outer(idx, idx),
        0,
        2,
        check_laws=False,
        distributive=True,
    )
    return DmfAlgebra(lattice, [2, 1, 0], 1)


class DmfMorphism(LatticeMorphism):
    """Map between DMF-algebras preserving ∧, ∨, ¬, 0, 1 and n."""

    source: DmfAlgebra
    target: DmfAlgebra

    def _laws(self) -> Iterator[CheckResult]:
        yield from super()._laws()
        m, src, tgt = self.mapping, self.source, self.target
        yield _law("preserves negation", m[src.neg] != tgt.neg[m], src.elements)
        yield CheckResult("preserves n", m[src.fix] == tgt.fix)


def find_dmf_isomorphism(A: DmfAlgebra, B: DmfAlgebra) -> Optional[DmfMorphism]:
    mapping = find_isomorphism(
        A.lattice, B.lattice, {A.fix: B.fix}, A.neg, B.neg
    )
    if mapping is None:
        return None
    return DmfMorphism(A, B, mapping)


# distinguished subsets ========================================================
def nabla(A: DmfAlgebra) -> tuple[int, ...]:
    """∇ = [n, 1], checked against {x∨¬x}."""
    upper = set(np.flatnonzero(A.order[A.fix, :]).tolist())
    tautologies = set(A.join[np.arange(A.size), A.neg].tolist())
    if upper != tautologies:
        raise LawViolationError("nabla", A.labels(sorted(upper ^ tautologies)[:1]))
    return tuple(sorted(upper))


def delta(A: DmfAlgebra) -> tuple[int, ...]:
    """Δ = [0, n], checked against {x∧¬x}."""
    lower = set(np.flatnonzero(A.order[:, A.fix]).tolist())
    contradictions = set(A.meet[np.arange(A.size), A.neg].tolist())
    if lower != contradictions:
        raise LawViolationError("delta", A.labels(sorted(lower ^ contradictions)[:1]))
    return tuple(sorted(lower))


def boolean_elements(A: DmfAlgebra) -> tuple[int, ...]:
    """Elements x with x∨¬x = 1."""
    tautologies = A.join[np.arange(A.size), A.neg]
    return tuple(np.flatnonzero(tautologies == A.top).tolist())


def negate_set(A: DmfAlgebra, ids: Sequence[int]) -> frozenset[int]:
    """¬X = {¬x : x ∈ X}."""
    return frozenset(int(A.neg[i]) for i in ids)


def nabla_lattice(A: DmfAlgebra) -> tuple[FiniteLattice, tuple[int, ...]]:
    """∇ as a bounded lattice with bottom n and top 1, with its element ids."""
    ids = nabla(A)
    return A.lattice.sublattice(ids, A.fix, A.top), ids


def boolean_algebra(A: DmfAlgebra) -> tuple[FiniteLattice, tuple[int, ...]]:
    """The Boolean elements as a Boolean lattice whose complement is ¬."""
    ids = boolean_elements(A)
    lattice = A.lattice.sublattice(ids, A.bottom, A.top)
    where = {a: i for i, a in enumerate(ids)}
    complements = lattice.complements
    for i, a in enumerate(ids):
        if complements is None or complements[i] != where.get(int(A.neg[a])):
            raise LawViolationError("boolean complement", (A.label(a),))
    return lattice, ids


# the pi construction ==========================================================
class PiAlgebra(DmfAlgebra):
    """π(L): pairs (a, b) of a distributive lattice L with a∧b = 0.

    Parameters
    ----------
    source
        The distributive lattice L.

    """

    def __init__(self, source: FiniteLattice) -> None:
        if not source.distributive:
            raise PreconditionError("distributive", "π(L) needs a distributive lattice")
        self.source = source
        pairs = np.argwhere(source.meet == source.bottom)
        lookup = np.full((source.size, source.size), -1, dtype=np.int64)
        lookup[pairs[:, 0], pairs[:, 1]] = np.arange(len(pairs))
        self.pairs = _frozen(pairs)
        self.lookup = _frozen(lookup)

        a, b = pairs[:, 0], pairs[:, 1]
        smeet, sjoin = source.meet, source.join
        meet = lookup[smeet[a[:, None], a[None, :]], sjoin[b[:, None], b[None, :]]]
        join = lookup[sjoin[a[:, None], a[None, :]], smeet[b[:, None], b[None, :]]]
        labels = [f"({source.label(x)},{source.label(y)})" for x, y in pairs]
        lattice = FiniteLattice(
            labels,
            meet,
            join,
            lookup[source.bottom, source.top],
            lookup[source.top, source.bottom],
            check_laws=len(pairs) <= MAX_TRIPLE_CHECK,
            distributive=True,
        )
        super().__init__(lattice, lookup[b, a], lookup[source.bottom, source.bottom])

    def pair_index(self, a: int, b: int) -> int:
        i = int(self.lookup[a, b])
        if i < 0:
            raise PreconditionError("disjoint", "pair components must meet in 0")
        return i


def pi_construction(L: FiniteLattice) -> PiAlgebra:
    return PiAlgebra(L)


def embed_into_pi_nabla(A: DmfAlgebra) -> DmfMorphism:
    """The monomorphism φ(x) = (x∨n, ¬x∨n) of A into π(∇_A)."""
    lattice, ids = nabla_lattice(A)
    where = np.full(A.size, -1, dtype=np.int64)
    where[list(ids)] = np.arange(len(ids))
    P = PiAlgebra(lattice)
    positive = where[A.join[np.arange(A.size), A.fix]]
    negative = where[A.join[A.neg, A.fix]]
    phi = DmfMorphism(A, P, P.lookup[positive, negative])
    if not phi.is_injective:
        raise LawViolationError("injectivity")
    return phi


# generated subalgebras ========================================================
def saturate(
    generators: Sequence[T],
    zero: T,
    neither: T,
    one: T,
    meet: Callable[[T, T], T],
    join: Callable[[T, T], T],
    neg: Callable[[T], T],
) -> dict[T, Formula]:
    """Close generators and constants under ∧, ∨, ¬ breadth first.

    Every reached value gets a witness term over ``p0, p1, ...`` (variable i
    stands for generator i) of least depth; ties go to the smallest printed
    term among the candidates built from the witnesses of the previous round.
    """

    def offer(pool: dict[T, Formula], value: T, term: Formula) -> None:
        if value in witnesses:
            return
        if value not in pool or term.sort_key < pool[value].sort_key:
            pool[value] = term

    witnesses: dict[T, Formula] = {}
    pool: dict[T, Formula] = {}
    for value, term in ((zero, ZERO), (neither, N), (one, ONE)):
        offer(pool, value, term)
    for i, value in enumerate(generators):
        offer(pool, value, Var(i))
    frontier = pool
    witnesses.update(pool)
    rounds = 0
    while frontier:
        rounds += 1
        known = list(witnesses.items())
        pool = {}
        for x, term in frontier.items():
            offer(pool, neg(x), Not(term))
        for (x, tx), (y, ty) in product(known, frontier.items()):
            offer(pool, meet(x, y), And(tx, ty))
            offer(pool, meet(y, x), And(ty, tx))
            offer(pool, join(x, y), Or(tx, ty))
            offer(pool, join(y, x), Or(ty, tx))
        witnesses.update(pool)
        frontier = pool
        logger.debug("saturation round %d reached %d elements", rounds, len(witnesses))
    return witnesses


def generated_subalgebra(
    A: DmfAlgebra, generators: Sequence[Element]
) -> tuple[DmfAlgebra, dict[int, Formula]]:
    """Least subalgebra containing the generators, with witness terms keyed
    by element index in the returned subalgebra."""
    gens = [A.index(g) for g in generators]
    witnesses = saturate(
        gens,
        A.bottom,
        A.fix,
        A.top,
        meet=lambda x, y: int(A.meet[x, y]),
        join=lambda x, y: int(A.join[x, y]),
        neg=lambda x: int(A.neg[x]),
    )
    ids = sorted(witnesses)
    return A.subalgebra(ids), {i: witnesses[a] for i, a in enumerate(ids)}


def closure(A: DmfAlgebra, generators: Sequence[int]) -> NDArray:
    """Membership mask of the subalgebra generated by element ids."""
    mask = np.zeros(A.size, dtype=bool)
    mask[[A.bottom, A.fix, A.top, *generators]] = True
    while True:
        ids = np.flatnonzero(mask)
        grown = mask.copy()
        grown[A.neg[ids]] = True
        grown[A.meet[np.ix_(ids, ids)].ravel()] = True
        grown[A.join[np.ix_(ids, ids)].ravel()] = True
        if (grown == mask).all():
            return mask
        mask = grown


# ideals and filters ===========================================================
Algebra = Union[FiniteLattice, DmfAlgebra]


@dataclass(frozen=True)
class IdealOrFilter:
    """An ideal or a filter of a finite lattice.

    ``avoids_fix`` tells whether n lies outside the carrier; it is None for
    plain lattices, which have no n.
    """

    carrier: frozenset[int]
    kind: str
    prime: bool
    avoids_fix: Optional[bool] = None

    @property
    def key(self) -> tuple[int, ...]:
        return tuple(sorted(self.carrier))

    def __contains__(self, a: int) -> bool:
        return a in self.carrier

    def labels(self, A: Algebra) -> tuple[str, ...]:
        return A.labels(self.key)


def _mask(A: Algebra, carrier: Sequence[int]) -> NDArray:
    mask = np.zeros(A.size, dtype=bool)
    mask[list(carrier)] = True
    return mask


def _is_prime(A: Algebra, mask: NDArray, kind: str) -> bool:
    if not mask.any() or mask.all():
        return False
    # ideals are down-closed, closed under ∨ and prime for ∧; filters dually
    if kind == "ideal":
        closing, splitting = A.join, A.meet
        escapes = A.order & ~mask[:, None] & mask[None, :]
    else:
        closing, splitting = A.meet, A.join
        escapes = A.order & mask[:, None] & ~mask[None, :]
    if escapes.any():
        return False
    ids = np.flatnonzero(mask)
    if not mask[closing[np.ix_(ids, ids)]].all():
        return False
    inside = mask[splitting]
    return bool((~inside | mask[:, None] | mask[None, :]).all())


def is_prime_ideal(A: Algebra, carrier: Sequence[int]) -> bool:
    return _is_prime(A, _mask(A, carrier), "ideal")


def is_prime_filter(A: Algebra, carrier: Sequence[int]) -> bool:
    return _is_prime(A, _mask(A, carrier), "filter")


def _enumerate_prime(
    A: Algebra,
    kind: str,
    cap: int,
    should_stop: Optional[Callable[[], bool]],
) -> list[IdealOrFilter]:
    search = SubsetSearch(
        A.size,
        lambda subset_id: _is_prime(A, _mask(A, subset_id), kind),
        cap=cap,
        should_stop=should_stop,
    )
    found = search.explore(["full"])
    fix = getattr(A, "fix", None)
    result = [
        IdealOrFilter(
            frozenset(subset_id),
            kind,
            True,
            None if fix is None else fix not in subset_id,
        )
        for subset_id in found
    ]
    return sorted(result, key=lambda item: item.key)


def enumerate_prime_ideals(
    A: Algebra,
    cap: int = MAX_PRIME_IDEAL_ALGEBRA,
    should_stop: Optional[Callable[[], bool]] = None,
) -> list[IdealOrFilter]:
    """All proper prime ideals by exhaustive subset enumeration, in
    lexicographic order of their sorted element ids."""
    return _enumerate_prime(A, "ideal", cap, should_stop)


def enumerate_prime_filters(
    A: Algebra,
    cap: int = MAX_PRIME_IDEAL_ALGEBRA,
    should_stop: Optional[Callable[[], bool]] = None,
) -> list[IdealOrFilter]:
    return _enumerate_prime(A, "filter", cap, should_stop)


def _is_separation(A: DmfAlgebra, G: frozenset, H: frozenset, a: int, b: int) -> bool:
    return (
        is_prime_ideal(A, G)
        and is_prime_filter(A, H)
        and not (G & H)
        and H == negate_set(A, G)
        and ((a not in G and b in G) or (a in H and b not in H))
    )


def separation_pair(
    A: DmfAlgebra,
    a: Element,
    b: Element,
    cap: int = MAX_PRIME_IDEAL_ALGEBRA,
) -> tuple[IdealOrFilter, IdealOrFilter]:
    """A prime ideal G and the prime filter H = ¬G separating a from b.

    A prime ideal I with b ∈ I and a ∉ I is taken from the exhaustive
    enumeration. When n ∉ I the pair is (I, ¬I); otherwise a prime filter
    F disjoint from I with a ∈ F and b ∉ F gives (¬F, F). The least valid
    pair in the order of G's sorted element ids is returned.
    """
    a, b = A.index(a), A.index(b)
    if A.order[a, b]:
        raise PreconditionError(
            "order", f"{A.label(a)} <= {A.label(b)}, nothing to separate"
        )
    filters = enumerate_prime_filters(A, cap)
    candidates = set()
    for I in enumerate_prime_ideals(A, cap):
        if b not in I or a in I:
            continue
        if I.avoids_fix:
            candidates.add(I.carrier)
            continue
        for F in filters:
            if not (I.carrier & F.carrier) and a in F and b not in F:
                candidates.add(negate_set(A, F.carrier))
    valid = sorted(
        (tuple(sorted(G)), G)
        for G in candidates
        if _is_separation(A, G, negate_set(A, G), a, b)
    )
    if not valid:
        raise LawViolationError("separation", A.labels((a, b)))
    G = valid[0][1]
    return (
        IdealOrFilter(G, "ideal", True, A.fix not in G),
        IdealOrFilter(negate_set(A, G), "filter", True, A.fix not in G),
    )


def phi_I(A: DmfAlgebra, I: Union[IdealOrFilter, Sequence[int]]) -> DmfMorphism:
    """The epimorphism onto K sending I to 0, ¬I to 1 and the rest to n."""
    carrier = I.carrier if isinstance(I, IdealOrFilter) else frozenset(map(int, I))
    if not is_prime_ideal(A, carrier):
        raise PreconditionError("prime", "carrier is not a prime ideal")
    if A.fix in carrier:
        raise PreconditionError("fixed point", "n belongs to the ideal")
    opposite = negate_set(A, carrier)
    mapping = [0 if x in carrier else 2 if x in opposite else 1 for x in range(A.size)]
    phi = DmfMorphism(A, kleene_algebra(), mapping)
    if not phi.is_surjective:
        raise LawViolationError("surjectivity")
    return phi


# interval algebras ============================================================
def interval_dmf(A: DmfAlgebra, a: Element) -> tuple[DmfAlgebra, DmfMorphism]:
    """The DMF-algebra on [¬a, a] (0 = ¬a, 1 = a, same n) and the
    epimorphism f(x) = (x∨¬a)∧a onto it."""
    a = A.index(a)
    not_a = int(A.neg[a])
    if not A.order[not_a, a]:
        raise NotInNablaError(f"{A.label(a)} is not in ∇: ¬a <= a fails")
    ids = np.flatnonzero(A.order[not_a, :] & A.order[:, a])
    where = np.full(A.size, -1, dtype=np.int64)
    where[ids] = np.arange(len(ids))
    lattice = A.lattice.sublattice(ids, not_a, a)
    B = DmfAlgebra(lattice, where[A.neg[ids]], int(where[A.fix]))

    idx = np.arange(A.size)
    join_first = A.meet[A.join[idx, not_a], a]
    meet_first = A.join[A.meet[idx, a], not_a]
    if (join_first != meet_first).any():
        x = int(np.flatnonzero(join_first != meet_first)[0])
        raise LawViolationError("modularity", (A.label(x),))
    return B, DmfMorphism(A, B, where[join_first])
