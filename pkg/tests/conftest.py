import pytest

from kostka_shoji.weights import Weight


@pytest.fixture
def W():
    return Weight.parse
