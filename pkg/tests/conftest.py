import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from uncertainty_bounds.quantum import random_density, random_observable, random_pure_state

settings.register_profile(
    "default", deadline=None, max_examples=40, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

# criterion number -> (passed, detail); filled by test_acceptance.py
ACCEPTANCE: dict = {}


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def make_instance(seed, d, k, mixed=False):
    g = np.random.default_rng(seed)
    obs = [random_observable(g, d, f"A{j + 1}") for j in range(k)]
    state = random_density(g, d) if mixed else random_pure_state(g, d)
    return obs, state


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        passed, detail = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n:2d}: {'PASS' if passed else 'FAIL'}  {detail}")
