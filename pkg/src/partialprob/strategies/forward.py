from partialprob.candidate import Candidate, SubsetID
from partialprob.strategies.base import Strategy


class Forward(Strategy):
    """Forward strategy starts from the empty subset and explores forward
    with larger and larger subsets, one element at a time.

    Parameters
    ----------
    num_elements
        Number of elements of the algebra whose subsets are explored.

    """

    @property
    def base_subset_id(self) -> SubsetID:
        return tuple()

    def get_next_layer(
        self,
        curr_layer: set[SubsetID],
        candidates: dict[SubsetID, Candidate],
        max_len: int | None = None,
    ) -> set[SubsetID]:
        """
        Select the subsets with one more element than the rejected subsets of
        the current layer, dropping every subset with an accepted parent.

        E.g. if the elements are 0-3, the current layer is {(0,), (1,)} and
        (1,) was accepted, the next layer is (0, 2), (0, 3).

        Parameters
        ----------
        curr_layer
            Current explored set of subset ids.
        candidates
            A dictionary contains all evaluated candidates.
        max_len
            Maximum number of subsets of the current layer to expand.

        """
        subset_ids = self._filter_curr_layer(
            curr_layer=curr_layer,
            candidates=candidates,
            max_len=max_len,
        )
        next_layer = set()
        for subset_id in subset_ids:
            next_layer |= self._get_subset_id_children(subset_id)
        return {
            subset_id
            for subset_id in next_layer
            if not any(
                candidates[upstream].accepted
                for upstream in self._get_upstream_subset_ids(subset_id, candidates)
            )
        }

    def _get_upstream_subset_ids(
        self,
        subset_id: SubsetID,
        candidates: dict[SubsetID, Candidate],
    ) -> set[SubsetID]:
        """Return the possible previous nodes.
        For Forward, this is the current subset id's parents.
        """
        return self._get_subset_id_parents(subset_id) & set(candidates.keys())
