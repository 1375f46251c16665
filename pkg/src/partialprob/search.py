import logging
from typing import Callable, Optional

from .candidate import Candidate, SubsetID
from .exceptions import CapExceededError, InvalidConfigurationError
from .strategies import get_strategy

logger = logging.getLogger(__name__)


class SubsetSearch:
    """Exhaustive search over the subsets of a finite algebra.

    The search walks the Boolean lattice of index subsets layer by layer, as
    laid out by a strategy, and evaluates a predicate on every visited subset.

    Parameters
    ----------
    num_elements
        Number of elements of the algebra.
    predicate
        Function deciding whether a subset, given as sorted element indices,
        is accepted.
    cap
        Largest ``num_elements`` the search is allowed to enumerate.
    should_stop
        Cancellation hook, called between layers; the search ends early when
        it returns True.

    """

    def __init__(
        self,
        num_elements: int,
        predicate: Callable[[SubsetID], bool],
        cap: Optional[int] = None,
        should_stop: Optional[Callable[[], bool]] = None,
    ) -> None:
        self.num_elements = self._as_num_elements(num_elements, cap)
        self.predicate = predicate
        self.should_stop = should_stop
        self.candidates: dict[SubsetID, Candidate] = {}

    @property
    def accepted(self) -> list[SubsetID]:
        """Accepted subsets, smallest first, ties in lexicographic order."""
        return sorted(
            (subset_id for subset_id, c in self.candidates.items() if c.accepted),
            key=lambda subset_id: (len(subset_id), subset_id),
        )

    def explore(
        self,
        strategies: list[str],
        strategy_options: Optional[dict] = None,
        stop_at_first_accepted_layer: bool = False,
    ) -> list[SubsetID]:
        """Explore the subset lattice and return the accepted subsets.

        Parameters
        ----------
        strategies
            Names of the strategies to run in turn, e.g. ``["full"]``.
        strategy_options
            A dictionary with key as the strategy name and value as the keyword
            options passed to its ``get_next_layer``.
        stop_at_first_accepted_layer
            Stop as soon as a layer contains an accepted subset. Combined with
            the size ascending ``"forward"`` strategy this finds the minimum
            size accepted subsets.

        """
        strategy_options = strategy_options or {}
        strategy_options = {
            strategy: strategy_options.get(strategy, {}) for strategy in strategies
        }

        for strategy in strategies:
            options = strategy_options[strategy]
            strategy = get_strategy(strategy)(num_elements=self.num_elements)
            curr_ids = {strategy.base_subset_id}
            while curr_ids:
                for subset_id in sorted(curr_ids):
                    candidate = self._get_candidate(subset_id)
                    candidate.evaluate(self.predicate)
                logger.debug(
                    "explored layer of %d subsets with %s", len(curr_ids), strategy
                )
                if stop_at_first_accepted_layer and any(
                    self.candidates[subset_id].accepted for subset_id in curr_ids
                ):
                    break
                if self.should_stop is not None and self.should_stop():
                    logger.info("subset search cancelled")
                    break
                curr_ids = strategy.get_next_layer(
                    curr_layer=curr_ids,
                    candidates=self.candidates,
                    **options,
                )
        logger.info(
            "subset search visited %d subsets, accepted %d",
            len(self.candidates),
            len(self.accepted),
        )
        return self.accepted

    # validations ==============================================================
    def _as_num_elements(self, num_elements: int, cap: Optional[int]) -> int:
        if num_elements < 0:
            raise InvalidConfigurationError(
                f"{num_elements=:} must be a nonnegative integer"
            )
        if cap is not None and num_elements > cap:
            raise CapExceededError(
                f"subset search over {num_elements} elements exceeds the cap {cap}"
            )
        return num_elements

    def _get_candidate(self, subset_id: SubsetID) -> Candidate:
        if subset_id not in self.candidates:
            self.candidates[subset_id] = Candidate(subset_id)
        return self.candidates[subset_id]
