from __future__ import annotations

import pytest

from wavcraft.backends import stub_registry
from wavcraft.lang import default_signature_table


@pytest.fixture(scope="session")
def table():
    return default_signature_table()


@pytest.fixture(scope="session")
def registry():
    return stub_registry()
