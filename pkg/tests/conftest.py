"""Shared fixtures: one short reference trajectory reused across modules."""

import numpy as np
import pytest

from locnet.experiment import ExperimentConfig
from locnet.fixtures import reference_ic
from locnet.integrate import integrate
from locnet.model import ModelParams

ACCEPTANCE_KEY = pytest.StashKey[list]()


@pytest.fixture(scope="session")
def acceptance_lines(request):
    """Shared sink for one PASS/FAIL line per acceptance criterion."""
    return request.config.stash.setdefault(ACCEPTANCE_KEY, [])


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash.get(ACCEPTANCE_KEY, None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def reference_trajectory():
    """Default ring integrated from the x0a fixture state over 10 s."""
    cfg = ExperimentConfig()
    return integrate(ModelParams(), reference_ic("x0a"), cfg.t_end, cfg.dt_out)


@pytest.fixture(scope="session")
def rng_factory():
    def make(seed: int) -> np.random.Generator:
        return np.random.default_rng(seed)

    return make
