import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from chiralens.defaults import default_channels, default_dispersion, default_lens


@pytest.fixture
def dispersion():
    return default_dispersion()


@pytest.fixture
def channels():
    return default_channels()


@pytest.fixture
def lens():
    """Default symmetric biconvex lens, kappa = 0.5."""
    return default_lens(0.5)
