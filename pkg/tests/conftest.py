import pytest

from hoprisk import complete_network


@pytest.fixture(scope="session")
def example_net():
    """5-node complete network, type sizes (2, 3), p=0.2, q=0.1."""
    return complete_network([2, 3], p=0.2, q=0.1)
