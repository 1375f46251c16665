from contextlib import nullcontext as does_not_raise

import pytest

from partialprob.candidate import Candidate, CandidateStatus, SubsetID
from partialprob.strategies import Forward, Full, get_strategy
from partialprob.strategies.base import Strategy


def candidate(subset_id: SubsetID, accepted: bool = False) -> Candidate:
    """Candidate with a fixed outcome."""
    result = Candidate(subset_id)
    result.evaluate(lambda _: accepted)
    return result


class DummyStrategy(Strategy):
    @property
    def base_subset_id(self) -> SubsetID:
        return (0,)

    def get_next_layer(self, *args, **kwargs):
        pass

    def _get_upstream_subset_ids(self, *args, **kwargs):
        return set()


def test_basic_filtering():
    """Only rejected subsets are kept for expansion."""
    strategy = DummyStrategy(num_elements=5)
    first_layer = [(i,) for i in range(5)]
    candidates = {
        subset_id: candidate(subset_id, accepted=subset_id[0] % 2 == 0)
        for subset_id in first_layer
    }

    rejected = strategy._filter_curr_layer(set(first_layer), candidates)
    assert rejected == {(1,), (3,)}

    first = strategy._filter_curr_layer(set(first_layer), candidates, max_len=1)
    assert first == {(1,)}


def test_candidate_is_evaluated_once():
    calls = []
    result = Candidate((0, 1))
    assert result.status == CandidateStatus.NOT_EVALUATED
    result.evaluate(lambda subset_id: calls.append(subset_id) or True)
    result.evaluate(lambda subset_id: calls.append(subset_id) or False)
    assert result.accepted
    assert calls == [(0, 1)]


def test_generate_forward_layer():
    strategy = Forward(4)
    lid_1 = (0, 1)
    lid_2 = (0, 2)

    candidates = {lid_1: candidate(lid_1), lid_2: candidate(lid_2)}

    next_layer = strategy.get_next_layer(
        curr_layer={lid_1, lid_2},
        candidates=candidates,
        max_len=2,
    )

    expected_layer = {
        (0, 1, 2),
        (0, 2, 3),
        (0, 1, 3),
    }
    assert next_layer == expected_layer

    # Check terminal condition
    terminal_lid = (0, 1, 2, 3)
    candidates[terminal_lid] = candidate(terminal_lid)
    final_layer = strategy.get_next_layer({terminal_lid}, candidates)
    assert not final_layer


def test_forward_skips_supersets_of_accepted():
    strategy = Forward(4)
    lid_1 = (0, 1)
    lid_2 = (0, 2)
    candidates = {lid_1: candidate(lid_1), lid_2: candidate(lid_2, accepted=True)}

    next_layer = strategy.get_next_layer({lid_1, lid_2}, candidates)
    assert next_layer == {(0, 1, 3)}


def test_full_explore():
    full_strategy = Full(3)

    second_layer = full_strategy.get_next_layer(full_strategy.first_layer, dict())
    expected_combos = {
        (0,),
        (1,),
        (2,),
        (0, 1),
        (0, 2),
        (1, 2),
        (0, 1, 2),
    }
    assert second_layer == expected_combos

    # Check that a second call results in an empty generator
    empty_layer = full_strategy.get_next_layer(second_layer, dict())
    assert not empty_layer

    with pytest.raises(ValueError):
        full_strategy.get_next_layer({(0, 1)}, dict())


@pytest.mark.parametrize(
    "input_element_ids,validated_subset_id,expectation",
    [
        # Duplicated ints
        ((0, 1, 2, 2, 2), (0, 1, 2), does_not_raise()),
        # Non ints
        (("1", "2"), (1, 2), does_not_raise()),
        # Unsorted
        ((2, 0), (0, 2), does_not_raise()),
        # Negatives should fail
        ((-1, 1, 2), None, pytest.raises(ValueError)),
        # Out of range should fail
        ((0, 3), None, pytest.raises(ValueError)),
    ],
)
def test_as_subset_id(input_element_ids, validated_subset_id, expectation):
    strategy = Full(3)
    with expectation:
        subset_id = strategy._as_subset_id(input_element_ids)
        if validated_subset_id:
            assert subset_id == validated_subset_id


def test_get_subset_id_children():
    strategy = Full(5)
    # Check children generation
    subset_id = strategy._as_subset_id((1, 2, 3))
    children = strategy._get_subset_id_children(subset_id)
    assert len(children) == 2

    expected_children = {(0, 1, 2, 3), (1, 2, 3, 4)}
    assert expected_children == children

    # Check no more children generated when all elements are represented
    strategy = Full(3)
    subset_id = strategy._as_subset_id((0, 1, 2))
    assert not any(strategy._get_subset_id_children(subset_id))


def test_subset_id_parents():
    strategy = Full(5)
    # Check parent generation
    subset_id = strategy._as_subset_id((1, 2, 3))
    parents = strategy._get_subset_id_parents(subset_id)

    expected_parents = {(1, 2), (2, 3), (1, 3)}
    assert len(parents) == 3
    assert expected_parents == parents

    # assert that the empty subset has no parents
    subset_id = strategy._as_subset_id(())
    assert not any(strategy._get_subset_id_parents(subset_id))


@pytest.mark.parametrize(
    "name,expectation",
    [
        ("full", does_not_raise()),
        ("forward", does_not_raise()),
        ("backward", pytest.raises(ValueError)),
    ],
)
def test_get_strategy(name, expectation):
    with expectation:
        assert issubclass(get_strategy(name), Strategy)
