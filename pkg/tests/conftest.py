import numpy as np
import pytest

from msdyn import scenarios
from msdyn._kernels import warm_up


@pytest.fixture(scope="session", autouse=True)
def compiled_kernels():
    warm_up()


_CACHE = {}


@pytest.fixture(scope="session")
def preset_result():
    """Run each preset once per session and share the result."""

    def get(name):
        if name not in _CACHE:
            _CACHE[name] = scenarios.run_scenario(scenarios.get_preset(name))
        return _CACHE[name]

    return get


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split("criterion ")[1].split(":")[0])):
            terminalreporter.write_line(line)
