"""Shared fixtures for the torus_tool test suite."""

import pytest
from hypothesis import settings

from torus_tool.morphisms import load_automorphism
from torus_tool.splitting import load_certificate
from torus_tool.torus import MappingTorus
from torus_tool.utils.helpers import DATA_DIR

settings.register_profile("torus", deadline=None, max_examples=100)
settings.load_profile("torus")


@pytest.fixture
def data_dir():
    return DATA_DIR


@pytest.fixture
def swap():
    return load_automorphism(DATA_DIR / 'swap.aut')


@pytest.fixture
def alpha():
    return load_automorphism(DATA_DIR / 'alpha.aut')


@pytest.fixture
def alpha3():
    return load_automorphism(DATA_DIR / 'alpha3.aut')


@pytest.fixture
def swap_torus(swap):
    return MappingTorus(swap)


@pytest.fixture
def alpha_torus(alpha):
    return MappingTorus(alpha)


@pytest.fixture
def bundled_pair():
    """Load a bundled automorphism together with a bundled certificate."""
    def load(aut_name, cert_name):
        return load_automorphism(DATA_DIR / aut_name), load_certificate(DATA_DIR / cert_name)
    return load
