import pytest

from hptsp import make_example_instance


@pytest.fixture
def example():
    return make_example_instance()
