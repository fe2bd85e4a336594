import itertools

import pytest

import qnonloc as q


@pytest.fixture(scope="session")
def ex1_family():
    """48-state construction at d=4, N=3 (smallest admissible xi = 2)."""
    return q.build_modified_family(4, 3)


@pytest.fixture(scope="session")
def ex2_family():
    """Same parameters with the explicit alternative xi = 3 (home = label 1)."""
    return q.build_modified_family(4, 3, xi=3)


@pytest.fixture(scope="session")
def d3_minimal_family():
    """18-state construction at d=3, N=3 (beyond the d >= 4 guarantee)."""
    return q.build_modified_family(3, 3)


@pytest.fixture(scope="session")
def bell_family():
    return q.build_index_family(2, 2)


@pytest.fixture(scope="session")
def product_family():
    """Computational basis of (C^2)^2; every tuple is its own singleton set."""
    radix = (2, 2)
    sets = {i: q.TupleSet.from_tuples(radix, [t])
            for i, t in enumerate(itertools.product(range(2), repeat=2))}
    return q.SetFamily(radix, sets)
