import numpy as np
import pytest

from lleproj import _fallback
from lleproj.dataset import embed_named, gen_swiss_roll_hole

try:
    from lleproj import _kernels
except ImportError:
    _kernels = None

BACKENDS = [pytest.param(_fallback, id="python")]
if _kernels is not None:
    BACKENDS.append(pytest.param(_kernels, id="cython"))


@pytest.fixture(params=BACKENDS)
def kernels(request):
    return request.param


@pytest.fixture(scope="session")
def roll():
    return gen_swiss_roll_hole(1000, seed=0)


@pytest.fixture(scope="session")
def roll_e1(roll):
    return embed_named(roll, "e1", 18, seed=1)


@pytest.fixture(scope="session")
def small_roll():
    return gen_swiss_roll_hole(200, seed=3)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def pytest_terminal_summary(terminalreporter):
    from tests import test_acceptance

    if test_acceptance.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in test_acceptance.RESULTS:
            terminalreporter.write_line(line)
