from fractions import Fraction
from typing import Union

from .exceptions import InvalidConfigurationError

RationalLike = Union[Fraction, int, str]

MAX_SAMPLE_SPACE = 6
MAX_PRIME_IDEAL_ALGEBRA = 16
MAX_GENERATOR_FIELD = 27
MAX_LINDENBAUM_ARITY = 2
MAX_CLASSICAL_SPACE = 8
DEFAULT_CORPUS_DEPTH = 3
# largest table certified with the cubic lattice law checks
MAX_TRIPLE_CHECK = 128

# truth values of the Kleene algebra K in index order 0 < n < 1
KLEENE_VALUES = ("0", "n", "1")
CLASSICAL_VALUES = ("0", "1")

logic_dict = {
    "classical": CLASSICAL_VALUES,
    "kleene": KLEENE_VALUES,
}


def get_logic_values(logic: str) -> tuple[str, ...]:
    try:
        return logic_dict[logic]
    except KeyError:
        raise InvalidConfigurationError(
            f"{logic} is not a recognized logic kind. "
            f"Please select one of {list(logic_dict.keys())}"
        )


def as_fraction(value: RationalLike) -> Fraction:
    """Parse ``"num/den"``, an int or a Fraction into an exact rational."""
    if isinstance(value, bool) or isinstance(value, float):
        raise InvalidConfigurationError(
            f"{value!r} is not exact; give rationals as 'num/den' strings"
        )
    try:
        return Fraction(value)
    except (ValueError, ZeroDivisionError, TypeError):
        raise InvalidConfigurationError(f"{value!r} is not a rational number")


def format_fraction(value: Fraction) -> str:
    """Render a rational as ``num/den``, or as a bare integer when den is 1."""
    return str(value)
