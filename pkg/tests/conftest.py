"""Shared fixtures: solved momentum pairs reused across test modules."""

import pytest

from pairwell import solve


@pytest.fixture(scope="session")
def attractive_roots():
    """The four lowest states at U = -1, keyed by (n, m)."""
    return {
        (n, m): solve(-1.0, n, m)
        for (n, m) in [(1, 1), (2, 1), (2, 2), (3, 1)]
    }


@pytest.fixture(scope="session")
def repulsive_roots():
    """Equal-number states at U = +1."""
    return {(n, m): solve(1.0, n, m) for (n, m) in [(1, 1), (2, 2)]}
