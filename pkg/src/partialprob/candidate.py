from __future__ import annotations

from enum import Enum
from typing import Callable

SubsetID = tuple[int, ...]


class CandidateStatus(Enum):
    ACCEPTED = 0
    REJECTED = 1
    NOT_EVALUATED = -1


class Candidate:
    """One subset of a finite algebra visited by a subset search.

    Parameters
    ----------
    subset_id
        Sorted element indices of the subset.

    """

    def __init__(self, subset_id: SubsetID) -> None:
        self.subset_id = subset_id
        self.status = CandidateStatus.NOT_EVALUATED

    @property
    def accepted(self) -> bool:
        return self.status == CandidateStatus.ACCEPTED

    def evaluate(self, predicate: Callable[[SubsetID], bool]) -> None:
        """Run the predicate once and record the outcome."""
        if self.status != CandidateStatus.NOT_EVALUATED:
            return
        if predicate(self.subset_id):
            self.status = CandidateStatus.ACCEPTED
        else:
            self.status = CandidateStatus.REJECTED

    def __repr__(self) -> str:
        return f"Candidate({self.subset_id}, {self.status.name})"
