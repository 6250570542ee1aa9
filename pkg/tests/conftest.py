"""
Shared fixtures: the shipped table and small ambient groups
"""

from pathlib import Path
import sys

import pytest

sys.path.insert(0, str(Path(__file__).resolve().parent.parent))

from core.config import SHIPPED_TABLE  # noqa: E402
from core.glgroup import AmbientSpec, gl, gl_block  # noqa: E402
from core.minorations import MinorationTable, load_table_file  # noqa: E402


@pytest.fixture(scope="session")
def table() -> MinorationTable:
    return load_table_file(SHIPPED_TABLE)


@pytest.fixture(scope="session")
def gl23() -> AmbientSpec:
    return gl(2, 3)


@pytest.fixture(scope="session")
def gl25() -> AmbientSpec:
    return gl(2, 5)


@pytest.fixture(scope="session")
def block25() -> AmbientSpec:
    return gl_block(2, 5)
