from functools import cached_property
from itertools import combinations

from partialprob.candidate import Candidate, SubsetID
from partialprob.strategies.base import Strategy


class Full(Strategy):
    """Full strategy explores every possible subset.

    Parameters
    ----------
    num_elements
        Number of elements of the algebra whose subsets are explored.

    """

    @property
    def base_subset_id(self) -> SubsetID:
        return tuple()

    @property
    def first_layer(self) -> set[SubsetID]:
        """Subset ids corresponding to the first layer."""
        return {self.base_subset_id}

    @cached_property
    def second_layer(self) -> set[SubsetID]:
        """Subset ids corresponding to the second layer."""
        element_ids = range(self.num_elements)
        second_layer = []
        for num_elements in range(1, self.num_elements + 1):
            second_layer.extend(
                map(self._as_subset_id, combinations(element_ids, num_elements))
            )
        return set(second_layer)

    def get_next_layer(
        self, curr_layer: set[SubsetID], candidates: dict[SubsetID, Candidate]
    ) -> set[SubsetID]:
        """Find every nonempty subset and return them in a single layer. If
        :code:`curr_layer=first_layer` it returns the :code:`second_layer`, and
        if :code:`curr_layer=second_layer` it returns an empty layer.

        Parameters
        ----------
        curr_layer
            Current explored set of subset ids.
        candidates
            A dictionary contains all evaluated candidates.

        """
        if curr_layer == self.first_layer:
            return self.second_layer
        if curr_layer == self.second_layer:
            return set()
        raise ValueError(
            "curr_layer can only be the set of base_subset_id or "
            "the entire rest of the subset ids."
        )

    def _get_upstream_subset_ids(
        self,
        subset_id: SubsetID,
        candidates: dict[SubsetID, Candidate],
    ) -> set[SubsetID]:
        if subset_id == self.base_subset_id:
            return set()
        if subset_id in self.second_layer:
            return self.first_layer & set(candidates.keys())
        raise ValueError("unrecognized subset_id")
