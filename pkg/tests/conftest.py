import pytest
from fastapi.testclient import TestClient

from application import create_app
from application.service.berry_effective_service import BerryEffectiveService
from application.service.closed_form_service import ClosedFormService
from application.service.exact_spectrum_service import ExactSpectrumService
from application.service.geometry_service import GeometryService
from application.service.group_rep_service import GroupRepService
from application.service.observables_service import ObservablesService
from application.service.semiclassics_service import SemiclassicsService
from application.service.spin_algebra_service import SpinAlgebraService


@pytest.fixture(scope="session")
def spin_algebra_service():
    return SpinAlgebraService()


@pytest.fixture(scope="session")
def geometry_service():
    return GeometryService()


@pytest.fixture(scope="session")
def group_rep_service():
    return GroupRepService()


@pytest.fixture(scope="session")
def berry_effective_service():
    return BerryEffectiveService()


@pytest.fixture(scope="session")
def closed_form_service():
    return ClosedFormService()


@pytest.fixture(scope="session")
def exact_spectrum_service():
    return ExactSpectrumService()


@pytest.fixture(scope="session")
def semiclassics_service():
    return SemiclassicsService()


@pytest.fixture(scope="session")
def observables_service():
    return ObservablesService()


@pytest.fixture(scope="session")
def configs(geometry_service):
    """Configurations by key, built once per session."""
    cache = {}

    def get(key: str, alpha=None):
        if (key, alpha) not in cache:
            cache[(key, alpha)] = geometry_service.from_key(key, alpha)
        return cache[(key, alpha)]

    return get


@pytest.fixture(scope="session")
def client():
    return TestClient(create_app())
