import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from resbeam import CavityGeometry, reference_defaults


@pytest.fixture
def default_params():
    return reference_defaults()


@pytest.fixture
def default_geometry(default_params) -> CavityGeometry:
    return default_params.geometry
