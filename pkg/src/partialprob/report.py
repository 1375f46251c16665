"""Per-law check results and the audit tables built from them."""
from dataclasses import dataclass
from typing import Any, Iterable

from pandas import DataFrame


@dataclass(frozen=True)
class CheckResult:
    """Outcome of checking one law.

    Parameters
    ----------
    law
        Name of the checked law or property.
    holds
        Whether the law holds on every instance.
    witness
        Labels witnessing the first failure; empty when the law holds.
    required
        Whether a failure makes the whole check fail. Informational rows,
        such as the distributivity flag of a lattice, are not required.

    """

    law: str
    holds: bool
    witness: tuple[Any, ...] = ()
    required: bool = True

    def __post_init__(self) -> None:
        object.__setattr__(self, "holds", bool(self.holds))

    def __bool__(self) -> bool:
        return self.holds


def first_failure(results: Iterable[CheckResult], law: str = "all") -> CheckResult:
    """Return the first failing required result, or a passing summary."""
    for result in results:
        if result.required and not result.holds:
            return result
    return CheckResult(law, True)


def audit_table(results: Iterable[CheckResult]) -> DataFrame:
    """Collect check results into a data frame with one row per law."""
    rows = [
        {
            "law": result.law,
            "holds": result.holds,
            "required": result.required,
            "witness": ", ".join(map(str, result.witness)),
        }
        for result in results
    ]
    return DataFrame(rows, columns=["law", "holds", "required", "witness"])


def table_passes(table: DataFrame) -> bool:
    """True when no required row of an audit table failed."""
    failed = table["required"] & ~table["holds"]
    return not bool(failed.any())
