"""Formula syntax: the AST, the concrete grammar and the printer.

Formulas are built from variables ``p0, p1, ...``, the constants ``0``,
``1`` and ``n`` and the connectives ``~``, ``&`` and ``|``. Negation binds
tightest, then conjunction, then disjunction; binary connectives associate
to the left. The constant ``n`` only belongs to the Kleene language.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, reduce
from typing import Iterable, Optional

from lark import Lark, Transformer
from lark.exceptions import UnexpectedInput

from .exceptions import FormulaArityError, FormulaLogicError, FormulaSyntaxError
from .globals import get_logic_values

FORMULA_GRAMMAR = r"""
    ?start: disj

    ?disj: conj
         | disj "|" conj        -> or_

    ?conj: neg
         | conj "&" neg         -> and_

    ?neg: "~" neg               -> not_
        | atom

    ?atom: "0"                  -> zero
         | "1"                  -> one
         | "n"                  -> neither
         | VAR                  -> var
         | "(" disj ")"

    VAR: /p[0-9]+/

    %import common.WS
    %ignore WS
"""


class Formula:
    """Base class of formula nodes."""

    precedence = 4

    def __and__(self, other: Formula) -> Formula:
        return And(self, other)

    def __or__(self, other: Formula) -> Formula:
        return Or(self, other)

    def __invert__(self) -> Formula:
        return Not(self)

    @cached_property
    def text(self) -> str:
        return to_text(self)

    @property
    def sort_key(self) -> tuple[int, str]:
        """Order used to pick canonical witnesses: depth, then text."""
        return self.depth, self.text

    def __str__(self) -> str:
        return self.text


@dataclass(frozen=True)
class Var(Formula):
    index: int

    depth = 0

    @property
    def arity(self) -> int:
        return self.index + 1

    @property
    def uses_n(self) -> bool:
        return False


@dataclass(frozen=True)
class Const(Formula):
    value: str

    depth = 0
    arity = 0

    @property
    def uses_n(self) -> bool:
        return self.value == "n"


@dataclass(frozen=True)
class Not(Formula):
    operand: Formula

    precedence = 3

    @cached_property
    def depth(self) -> int:
        return self.operand.depth + 1

    @cached_property
    def arity(self) -> int:
        return self.operand.arity

    @cached_property
    def uses_n(self) -> bool:
        return self.operand.uses_n


@dataclass(frozen=True)
class _Binary(Formula):
    left: Formula
    right: Formula

    symbol = ""

    @cached_property
    def depth(self) -> int:
        return max(self.left.depth, self.right.depth) + 1

    @cached_property
    def arity(self) -> int:
        return max(self.left.arity, self.right.arity)

    @cached_property
    def uses_n(self) -> bool:
        return self.left.uses_n or self.right.uses_n


@dataclass(frozen=True)
class And(_Binary):
    precedence = 2
    symbol = "&"


@dataclass(frozen=True)
class Or(_Binary):
    precedence = 1
    symbol = "|"


ZERO = Const("0")
ONE = Const("1")
N = Const("n")


def to_text(formula: Formula) -> str:
    """Print a formula with the fewest parentheses that parse back to it."""
    if isinstance(formula, Var):
        return f"p{formula.index}"
    if isinstance(formula, Const):
        return formula.value
    if isinstance(formula, Not):
        inner = to_text(formula.operand)
        if formula.operand.precedence < Not.precedence:
            inner = f"({inner})"
        return f"~{inner}"
    left, right = to_text(formula.left), to_text(formula.right)
    if formula.left.precedence < formula.precedence:
        left = f"({left})"
    if formula.right.precedence <= formula.precedence:
        right = f"({right})"
    return f"{left} {formula.symbol} {right}"


class _FormulaBuilder(Transformer):
    def or_(self, items):
        return Or(*items)

    def and_(self, items):
        return And(*items)

    def not_(self, items):
        return Not(items[0])

    def zero(self, _):
        return ZERO

    def one(self, _):
        return ONE

    def neither(self, _):
        return N

    def var(self, items):
        return Var(int(items[0][1:]))


_PARSER = Lark(FORMULA_GRAMMAR, parser="lalr", transformer=_FormulaBuilder())


def check_formula(formula: Formula, n: Optional[int], logic: str) -> Formula:
    """Check a formula against a declared arity and logic kind."""
    get_logic_values(logic)
    if logic == "classical" and formula.uses_n:
        raise FormulaLogicError(f"'{formula}' uses n, which is not classical")
    if n is not None and formula.arity > n:
        raise FormulaArityError(
            f"'{formula}' uses p{formula.arity - 1} but the arity is {n}"
        )
    return formula


def parse(text: str, n: Optional[int] = None, logic: str = "kleene") -> Formula:
    """Parse formula text.

    Parameters
    ----------
    text
        Formula in the concrete syntax, e.g. ``"~p0 & p1"``.
    n
        Declared arity; every variable index must be below it. When None,
        no bound is enforced and the arity is the formula's own.
    logic
        ``"kleene"`` or ``"classical"``; classical formulas may not use ``n``.

    """
    try:
        formula = _PARSER.parse(text)
    except UnexpectedInput as error:
        position = getattr(error, "pos_in_stream", None)
        if position is None or position < 0:
            position = len(text)
        raise FormulaSyntaxError(f"cannot parse '{text}'", position) from None
    return check_formula(formula, n, logic)


def conjunction(formulas: Iterable[Formula]) -> Formula:
    """Left-nested conjunction; the empty conjunction is 1."""
    formulas = list(formulas)
    if not formulas:
        return ONE
    return reduce(And, formulas)


def disjunction(formulas: Iterable[Formula]) -> Formula:
    """Left-nested disjunction; the empty disjunction is 0."""
    formulas = list(formulas)
    if not formulas:
        return ZERO
    return reduce(Or, formulas)
