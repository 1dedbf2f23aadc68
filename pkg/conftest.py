"""
Shared fixtures: catalog matrices, seeded random sources and a fresh service container
"""

import json
import os
import random

import pytest

from skewpfaff.core.service_container import ServiceContainer
from skewpfaff.models.polynomial import x_ring
from skewpfaff.services.catalog import catalog_matrix
from skewpfaff.utils.config import Config

FIXTURES = os.path.join(os.path.dirname(os.path.abspath(__file__)), 'data', 'fixtures')


@pytest.fixture
def rng():
    return random.Random(Config.SEED)


@pytest.fixture
def ring():
    return x_ring()


@pytest.fixture(params=['a', 'b', 'c', 'd', 'e', 'f'])
def label(request):
    return request.param


@pytest.fixture
def catalog_m(label):
    return catalog_matrix(label)


@pytest.fixture
def container():
    container = ServiceContainer(seed=Config.SEED)
    yield container
    container.reset()


@pytest.fixture
def fixture_path():
    def resolve(name):
        return os.path.join(FIXTURES, name)
    return resolve


@pytest.fixture
def load_fixture(fixture_path):
    def load(name):
        with open(fixture_path(name), 'r') as f:
            return json.load(f)
    return load
