import numpy as np
import pytest

from wavepair.catalog import CATALOG, WaveletSpec, sample_wavelet
from wavepair.sampling import DEFAULT_GRID

WAVELET_IDS = [s.family.value for s in CATALOG]

# lines collected by the acceptance module, echoed in the terminal summary
ACCEPTANCE_LINES: dict = {}


@pytest.fixture(params=CATALOG, ids=WAVELET_IDS)
def spec(request) -> WaveletSpec:
    return request.param


@pytest.fixture
def psi(spec):
    return sample_wavelet(spec, DEFAULT_GRID)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[key])
