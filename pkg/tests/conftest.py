import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from fullmdim import Construction  # noqa: E402


@pytest.fixture(scope="session")
def paper2():
    return Construction("paper", 2)


@pytest.fixture(scope="session")
def toy3():
    return Construction("toy", 3)


@pytest.fixture(scope="session")
def toy2():
    return Construction("toy", 2)
