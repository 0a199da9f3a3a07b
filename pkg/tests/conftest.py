"""Shared fixtures: the bundled restaurant domain and everything built on it."""

import pytest

from parley.src.config import ExperimentConfig
from parley.src.core.acts.models import Role
from parley.src.core.experiment.resources import build_resources
from parley.src.core.ontology.database import bundled_database, bundled_domain


@pytest.fixture(scope="session")
def domain():
    return bundled_domain()


@pytest.fixture(scope="session")
def db(domain):
    return bundled_database(domain)


@pytest.fixture(scope="session")
def resources():
    return build_resources(ExperimentConfig())


@pytest.fixture(scope="session")
def stores(resources):
    return resources.stores


@pytest.fixture(scope="session")
def spaces(resources):
    return resources.spaces


@pytest.fixture(scope="session")
def provider_store(stores):
    return stores[Role.PROVIDER]


@pytest.fixture(scope="session")
def seeker_store(stores):
    return stores[Role.SEEKER]
