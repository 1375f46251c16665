from fractions import Fraction

import pytest

from partialprob.dmf import DmfAlgebra
from partialprob.lattice import FiniteLattice
from partialprob.partial_set import associated_partial_space, enumerate_DS
from partialprob.sentences import WorldWeights


def m4_dict() -> dict:
    """2^2 with the two atoms fixed by negation: De Morgan but not normal."""
    lattice = FiniteLattice.boolean(2, ["0", "a", "b", "1"])
    return {**lattice.to_dict(), "neg": [3, 1, 2, 0], "fix": 1}


@pytest.fixture
def ds2():
    """D({a, b}), all nine partial sets over two points."""
    return enumerate_DS(["a", "b"])


@pytest.fixture
def ds2_uniform(ds2):
    return associated_partial_space(ds2, {"a": "1/2", "b": "1/2"})


@pytest.fixture
def ds3():
    return enumerate_DS(["a", "b", "c"])


@pytest.fixture
def ds3_measure(ds3):
    return associated_partial_space(ds3, {"a": "1/2", "b": "1/3", "c": "1/6"})


@pytest.fixture
def kleene_weights():
    """Weight 1/2 on p0 = 0, 1/4 on p0 = n and 1/4 on p0 = 1."""
    return WorldWeights.from_mapping(1, "kleene", {"0": "1/2", "n": "1/4", "1": "1/4"})


@pytest.fixture
def classical_weights():
    return WorldWeights.from_mapping(
        2,
        "classical",
        {"00": Fraction(1, 8), "01": Fraction(1, 8), "10": Fraction(1, 4), "11": "1/2"},
    )


@pytest.fixture
def m4():
    return m4_dict()


@pytest.fixture
def square():
    """2^2 labelled by bitmask."""
    return FiniteLattice.boolean(2)


@pytest.fixture
def ds2_algebra(ds2):
    return ds2.algebra


@pytest.fixture
def pentagon_dict():
    """N5: 0 < a < c < 1 and 0 < b < 1, not distributive."""
    elements = ["0", "a", "b", "c", "1"]
    leq = {
        (0, 0), (0, 1), (0, 2), (0, 3), (0, 4),
        (1, 1), (1, 3), (1, 4),
        (2, 2), (2, 4),
        (3, 3), (3, 4),
        (4, 4),
    }
    size = len(elements)
    meet = [[0] * size for _ in range(size)]
    join = [[0] * size for _ in range(size)]
    for x in range(size):
        for y in range(size):
            lower = [z for z in range(size) if (z, x) in leq and (z, y) in leq]
            upper = [z for z in range(size) if (x, z) in leq and (y, z) in leq]
            meet[x][y] = max(lower, key=lambda z: sum((w, z) in leq for w in range(size)))
            join[x][y] = min(upper, key=lambda z: sum((w, z) in leq for w in range(size)))
    return {"elements": elements, "meet": meet, "join": join, "bottom": 0, "top": 4}
