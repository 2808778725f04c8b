import pytest

from resurgamma.numerics import PrecisionContext


@pytest.fixture
def context():
    return PrecisionContext(precision_bits=256)


@pytest.fixture
def fine_context():
    return PrecisionContext(precision_bits=512)
