import pytest

from bfmetric.space import generate, validate_space


@pytest.fixture(scope="session")
def p3():
    """Path on three points: distances 1, 1, 2."""
    return generate("path", {"n": 3})


@pytest.fixture(scope="session")
def two():
    """Two points at distance 1."""
    return generate("path", {"n": 2})


@pytest.fixture(scope="session")
def sca():
    """Scalene triangle with side lengths 1, 2, 3 (trivial symmetry group)."""
    return validate_space([[0, 1, 3], [1, 0, 2], [3, 2, 0]])


@pytest.fixture(scope="session")
def c4():
    """Four-cycle: adjacent points at distance 1, opposite at 2."""
    return generate("cycle", {"n": 4})
