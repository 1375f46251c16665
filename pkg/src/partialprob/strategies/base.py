from abc import ABC, abstractmethod

from partialprob.candidate import Candidate, CandidateStatus, SubsetID


class Strategy(ABC):
    """An abstract base class representing a subset search strategy.

    The strategy is responsible for selecting the next set of SubsetIDs,
    determining the next layer of subsets the search will evaluate.
    Evaluating subsets and storing outcomes is managed by
    :class:`partialprob.search.SubsetSearch` itself.

    Parameters
    ----------
    num_elements
        Number of elements of the algebra whose subsets are explored.

    """

    def __init__(self, num_elements: int) -> None:
        self.num_elements = num_elements

    @property
    @abstractmethod
    def base_subset_id(self) -> SubsetID:
        """Starting subset of the strategy"""

    @abstractmethod
    def get_next_layer(
        self,
        curr_layer: set[SubsetID],
        candidates: dict[SubsetID, Candidate],
        **kwargs,
    ) -> set[SubsetID]:
        """Abstract method to generate the next set of subset ids.

        Parameters
        ----------
        curr_layer
            Current explored set of subset ids.
        candidates
            A dictionary contains all evaluated candidates.
        **kwargs
            Other key word arguments.

        """

    @abstractmethod
    def _get_upstream_subset_ids(
        self,
        subset_id: SubsetID,
        candidates: dict[SubsetID, Candidate],
    ) -> set[SubsetID]:
        """Given a subset id, generate the already visited upstream nodes.

        This searches the opposite direction of the strategy, e.g. for
        Forward the upstream ids are the parents.

        """

    def _as_subset_id(self, element_ids: tuple[int, ...]) -> SubsetID:
        """Validate the provided element ids by the number of elements."""
        element_ids = sorted(set(map(int, element_ids)))
        if not all(0 <= i < self.num_elements for i in element_ids):
            raise ValueError(
                f"Element ids must lie in [0, {self.num_elements}), "
                f"got {element_ids}"
            )
        return tuple(element_ids)

    def _get_subset_id_children(self, subset_id: SubsetID) -> set[SubsetID]:
        """Subsets with one more element than the current one."""
        remaining = set(range(self.num_elements)) - set(subset_id)
        return {self._as_subset_id((*subset_id, i)) for i in remaining}

    def _get_subset_id_parents(self, subset_id: SubsetID) -> set[SubsetID]:
        """Subsets with one less element than the current one."""
        return {
            self._as_subset_id((*subset_id[:i], *subset_id[(i + 1) :]))
            for i in range(len(subset_id))
        }

    def _filter_curr_layer(
        self,
        curr_layer: set[SubsetID],
        candidates: dict[SubsetID, Candidate],
        max_len: int | None = None,
    ) -> set[SubsetID]:
        """Keep the rejected subsets of the current layer for expansion.

        Accepted subsets are not expanded: the predicates searched are upward
        closed, so their supersets can never be minimal. When ``max_len`` is
        given, only the first ``max_len`` subsets in canonical order are kept.
        """
        rejected = sorted(
            subset_id
            for subset_id in curr_layer
            if candidates[subset_id].status == CandidateStatus.REJECTED
        )
        if max_len is not None:
            rejected = rejected[:max_len]
        return set(rejected)
