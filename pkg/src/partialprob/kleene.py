"""Semantics of the classical and Kleene sentential languages.

A world assigns a truth value to every variable and is written as a string,
position ``i`` holding the value of ``p{i}``. Worlds are enumerated by
counting with ``0 < n < 1`` (``0 < 1`` classically), the leftmost position
being the most significant. Kleene meanings are partial sets over the
worlds of Kⁿ; classical meanings are sets of worlds of 2ⁿ.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Iterable, Optional, Sequence, Union

from .exceptions import (
    CapExceededError,
    FormulaArityError,
    InvalidConfigurationError,
    LawViolationError,
)
from .formula import (
    N,
    ONE,
    ZERO,
    And,
    Const,
    Formula,
    Not,
    Or,
    Var,
    check_formula,
)
from .globals import (
    DEFAULT_CORPUS_DEPTH,
    MAX_LINDENBAUM_ARITY,
    get_logic_values,
)
from .partial_set import PartialField, PartialSet, SampleSpace

logger = logging.getLogger(__name__)

World = str
Meaning = Union[PartialSet, frozenset]


@lru_cache
def worlds(n: int, logic: str = "kleene") -> tuple[World, ...]:
    """All worlds of arity n in counting order."""
    if n < 0:
        raise InvalidConfigurationError(f"arity must be nonnegative, {n=:}")
    return tuple("".join(s) for s in product(get_logic_values(logic), repeat=n))


def world_label(world: World) -> str:
    """Printed name of a world; the only world of arity 0 is ``()``."""
    return world or "()"


@lru_cache
def kleene_space(n: int) -> SampleSpace:
    """Kⁿ as a sample space whose points are the world labels."""
    return SampleSpace(tuple(world_label(s) for s in worlds(n, "kleene")))


def _as_world(world: World, arity: int, logic: str) -> World:
    world = "" if world == "()" else str(world)
    values = get_logic_values(logic)
    if any(value not in values for value in world):
        raise InvalidConfigurationError(
            f"world {world!r} uses values outside {list(values)}"
        )
    if len(world) < arity:
        raise FormulaArityError(
            f"world {world!r} has no value for p{arity - 1}"
        )
    return world


# truth values =================================================================
_KLEENE_INDEX = {"0": 0, "n": 1, "1": 2}
_KLEENE_VALUE = ("0", "n", "1")


def _eval(formula: Formula, world: World) -> int:
    if isinstance(formula, Var):
        return _KLEENE_INDEX[world[formula.index]]
    if isinstance(formula, Const):
        return _KLEENE_INDEX[formula.value]
    if isinstance(formula, Not):
        return 2 - _eval(formula.operand, world)
    left, right = _eval(formula.left, world), _eval(formula.right, world)
    return min(left, right) if isinstance(formula, And) else max(left, right)


def eval_kleene(formula: Formula, world: World) -> str:
    """V_s(α) in K = {0, n, 1}: ∧ is min, ∨ is max, ¬ swaps 0 and 1."""
    world = _as_world(world, formula.arity, "kleene")
    return _KLEENE_VALUE[_eval(formula, world)]


def eval_classical(formula: Formula, world: World) -> str:
    """Bivalent truth value of an n-free formula."""
    check_formula(formula, None, "classical")
    world = _as_world(world, formula.arity, "classical")
    return _KLEENE_VALUE[_eval(formula, world)]


# meanings =====================================================================
@lru_cache
def _variable_meaning(n: int, i: int) -> PartialSet:
    """g(p_i): the worlds where p_i is 1, against those where it is 0."""
    space = kleene_space(n)
    positive = negative = 0
    for k, s in enumerate(worlds(n, "kleene")):
        if s[i] == "1":
            positive |= 1 << k
        elif s[i] == "0":
            negative |= 1 << k
    return PartialSet(space, positive, negative)


def _meaning(formula: Formula, n: int) -> PartialSet:
    space = kleene_space(n)
    if isinstance(formula, Var):
        return _variable_meaning(n, formula.index)
    if isinstance(formula, Const):
        return {"0": space.bottom, "n": space.neither, "1": space.top}[formula.value]
    if isinstance(formula, Not):
        return _meaning(formula.operand, n).neg()
    left, right = _meaning(formula.left, n), _meaning(formula.right, n)
    return left.meet(right) if isinstance(formula, And) else left.join(right)


def meaning_kleene(formula: Formula, n: int) -> PartialSet:
    """M(α) ∈ D(Kⁿ): the positive models against the negative models."""
    check_formula(formula, n, "kleene")
    return _meaning(formula, n)


def meaning_classical(formula: Formula, n: int) -> frozenset[World]:
    """M(α) ⊆ 2ⁿ: the worlds where α is true."""
    check_formula(formula, n, "classical")
    return frozenset(s for s in worlds(n, "classical") if _eval(formula, s) == 2)


def meaning(formula: Formula, n: int, logic: str = "kleene") -> Meaning:
    if logic == "classical":
        return meaning_classical(formula, n)
    return meaning_kleene(formula, n)


def value_from_meaning(m: PartialSet, world: World) -> str:
    """V_s read off a meaning: 1 on positive models, 0 on negative ones."""
    point = m.space.mask([world_label(world)])
    if m.positive & point:
        return "1"
    if m.negative & point:
        return "0"
    return "n"


def meaning_from_eval(formula: Formula, n: int) -> PartialSet:
    """M(α) rebuilt world by world from V_s."""
    check_formula(formula, n, "kleene")
    space = kleene_space(n)
    positive = negative = 0
    for k, s in enumerate(worlds(n, "kleene")):
        value = _eval(formula, s)
        if value == 2:
            positive |= 1 << k
        elif value == 0:
            negative |= 1 << k
    return PartialSet(space, positive, negative)


def lindenbaum_class(formula: Formula, n: int, logic: str = "kleene") -> Meaning:
    """The meaning, which represents the class of formulas equivalent to α."""
    return meaning(formula, n, logic)


def equivalent(f: Formula, g: Formula, n: int, logic: str = "kleene") -> bool:
    return meaning(f, n, logic) == meaning(g, n, logic)


# consequence ==================================================================
@dataclass(frozen=True)
class Consequence:
    """Outcome of a consequence check, with the first counter-world when
    the consequence fails."""

    holds: bool
    counter_world: Optional[World] = None

    def __bool__(self) -> bool:
        return self.holds


def consequence(
    premises: Sequence[Formula],
    conclusion: Formula,
    n: int,
    logic: str = "kleene",
) -> Consequence:
    """Γ ⊨ α. An empty Γ stands for the single premise 1.

    Kleene consequence is ⊓{M(γ)} ⊑ M(α), cross-checked world by world
    against ⋀{V_s(γ)} ≤ V_s(α); classical consequence is inclusion of the
    meet of the premise meanings in the meaning of α.
    """
    premises = list(premises) or [ONE]
    for formula in [*premises, conclusion]:
        check_formula(formula, n, logic)
    counter = next(
        (
            s
            for s in worlds(n, logic)
            if min(_eval(gamma, s) for gamma in premises) > _eval(conclusion, s)
        ),
        None,
    )
    if logic == "classical":
        models = frozenset(worlds(n, logic))
        for gamma in premises:
            models &= meaning_classical(gamma, n)
        holds = models <= meaning_classical(conclusion, n)
    else:
        meet = kleene_space(n).top
        for gamma in premises:
            meet = meet.meet(_meaning(gamma, n))
        holds = meet.leq(_meaning(conclusion, n))
    if holds != (counter is None):
        raise LawViolationError("semantics", tuple(map(str, [*premises, conclusion])))
    return Consequence(holds, None if counter is None else world_label(counter))


# generated algebras and corpora ===============================================
def kleene_lindenbaum_algebra(
    n: int, cap: int = MAX_LINDENBAUM_ARITY
) -> tuple[PartialField, dict[int, Formula]]:
    """The meanings of all Kleene formulas of arity n, as the subfield of
    D(Kⁿ) generated by g(p_0), ..., g(p_{n-1}), with a witness formula for
    every member."""
    if n > cap:
        raise CapExceededError(f"Lindenbaum algebra of arity {n} exceeds the cap {cap}")
    generators = [_variable_meaning(n, i) for i in range(n)]
    field, witnesses = PartialField.generated(kleene_space(n), generators)
    logger.info("Kleene Lindenbaum algebra of arity %d has %d elements", n, field.size)
    return field, witnesses


def _constants(logic: str) -> list[Formula]:
    return [ZERO, ONE, N] if logic == "kleene" else [ZERO, ONE]


def formula_corpus(
    n: int,
    depth: int = DEFAULT_CORPUS_DEPTH,
    logic: str = "kleene",
    distinct: bool = True,
    extra: Iterable[Formula] = (),
) -> list[Formula]:
    """Formulas of arity n up to a nesting depth, level by level.

    With ``distinct`` only the first formula of every meaning is kept, in
    (depth, text) order, which keeps deep corpora finite in practice.
    ``extra`` formulas are appended after the enumeration.
    """
    get_logic_values(logic)
    seen: set = set()
    corpus: list[Formula] = []

    def admit(candidates: Iterable[Formula]) -> list[Formula]:
        admitted = []
        for formula in sorted(set(candidates), key=lambda f: f.sort_key):
            if distinct:
                key = meaning(formula, n, logic)
                if key in seen:
                    continue
                seen.add(key)
            admitted.append(formula)
        return admitted

    frontier = admit([*_constants(logic), *(Var(i) for i in range(n))])
    corpus.extend(frontier)
    for _ in range(depth):
        known = list(corpus)
        candidates = [Not(f) for f in frontier]
        for a, b in product(known, frontier):
            candidates.extend((And(a, b), And(b, a), Or(a, b), Or(b, a)))
        frontier = admit(candidates)
        corpus.extend(frontier)
        if not frontier:
            break
    for formula in extra:
        corpus.append(check_formula(formula, n, logic))
    return corpus
