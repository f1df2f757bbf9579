import math

import pytest
from hypothesis import strategies as st

from predex.soft import SoftBool

log_degree = st.one_of(
    st.just(0.0),
    st.just(-math.inf),
    st.floats(min_value=-1e6, max_value=0.0, allow_nan=False),
)
softbools = st.builds(SoftBool, log_degree, log_degree)


class StubRng:
    """Deterministic stand-in for numpy Generator with scripted draws."""

    def __init__(self, normal=0.0, uniform=0.5, index=0):
        self.normal = normal
        self.uniform = uniform
        self.index = index

    def integers(self, *args, **kwargs):
        return self.index

    def standard_normal(self):
        return self.normal

    def random(self):
        return self.uniform

    def normal(self, mu, sigma):  # pragma: no cover - not used by stubbed paths
        raise AssertionError("unexpected prior draw")


@pytest.fixture
def stub_rng():
    return StubRng


ACCEPTANCE_LINES: list = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
