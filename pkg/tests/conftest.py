import pytest

from selfsim import kernels
from selfsim.fixtures import FIXTURES, odometer


def pytest_report_header(config):
    return f"selfsim kernels: {kernels.BACKEND}"


@pytest.fixture(scope="session")
def odo2():
    return odometer(2)


@pytest.fixture(scope="session")
def odo3():
    return odometer(3)


@pytest.fixture(params=sorted(FIXTURES))
def fixture_action(request):
    return FIXTURES[request.param]()
