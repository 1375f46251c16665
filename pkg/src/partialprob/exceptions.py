from typing import Any


class PartialProbError(Exception):
    """Base class of every error raised by partialprob."""


class InvalidConfigurationError(PartialProbError, ValueError):
    """Raised if a provided configuration parameter violates a rule."""


class LawViolationError(PartialProbError, ValueError):
    """Raised when a certification fails.

    Parameters
    ----------
    law
        Name of the first violated law, e.g. ``"commutativity"``.
    witness
        Element labels (or formula texts) witnessing the violation.

    """

    def __init__(self, law: str, witness: tuple[Any, ...] = ()) -> None:
        self.law = law
        self.witness = tuple(witness)
        detail = f" at {', '.join(map(str, self.witness))}" if self.witness else ""
        super().__init__(f"{law} fails{detail}")


class MorphismError(LawViolationError):
    """Raised if a map does not preserve the structure it claims to."""


class PreconditionError(PartialProbError, ValueError):
    """Raised if an operation is called outside its precondition.

    Parameters
    ----------
    condition
        Short name of the violated condition.
    message
        Human readable explanation.

    """

    def __init__(self, condition: str, message: str) -> None:
        self.condition = condition
        super().__init__(message)


class ZeroConditionError(PreconditionError):
    """Raised when conditioning on an event with zero (first) component."""

    def __init__(self, message: str) -> None:
        super().__init__("nonzero", message)


class NotInNablaError(PreconditionError):
    """Raised when a condition does not lie in the interval [n, 1]."""

    def __init__(self, message: str) -> None:
        super().__init__("nabla", message)


class NotIsotoneError(PreconditionError):
    """Raised when an isotone partial valuation or probability is required."""

    def __init__(self, message: str, witness: tuple[Any, ...] = ()) -> None:
        self.witness = tuple(witness)
        super().__init__("isotone", message)


class CapExceededError(PartialProbError, ValueError):
    """Raised if an exhaustive routine is asked to go beyond its cap."""


class FormulaError(PartialProbError, ValueError):
    """Base class of formula errors."""


class FormulaSyntaxError(FormulaError):
    """Raised if a formula text does not follow the grammar."""

    def __init__(self, message: str, position: int) -> None:
        self.position = position
        super().__init__(f"{message} (at position {position})")


class FormulaArityError(FormulaError):
    """Raised if a variable index is not below the declared arity."""


class FormulaLogicError(FormulaError):
    """Raised if the constant n is used in a classical formula."""


class UnassignedVariableError(FormulaError):
    """Raised if a variable has no image under a generator assignment."""


class UndefinedValueError(PartialProbError, LookupError):
    """Raised if a finite probability table has no value for a formula."""
