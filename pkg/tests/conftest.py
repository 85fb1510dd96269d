import pytest

from wpcn.model import SystemParams, dbm_to_watts

# Reference values from an independent 40-digit mpmath evaluation: the
# derivative of (1 - x) * log(1 + gamma * x / (1 - x)) solved by bracketing
# root-finding, cross-checked with a 10**7-point grid (see test_optimizer).
ARGMAX = {
    10.0: 0.41773683082480164773,
    100.0: 0.26826728727619299337,
    1000.0: 0.18366843997340306241,
}
RATE_MAX_W0_1E4 = {
    10.0: 17649.017379726370481,
    100.0: 38306.461998544780656,
}
RATE_G1000_AT_0P1 = 61279.069118976403893  # gamma=1000, x=0.1, w0=1e4
RATE_G100_AT_0P1 = 32384.333910011525960  # gamma=100, x=0.1, w0=1e4

ACCEPTANCE_LINES = []


def scenario(**changes) -> SystemParams:
    base = dict(
        sigma2=dbm_to_watts(-120.0),
        p_max=0.1,
        s_max=1e-5,
        w0=1e4,
        t_frame=1e-3,
        h_gain=1e-6,
        g_gain=1e-6,
    )
    base.update(changes)
    return SystemParams(**base)


@pytest.fixture
def scenario1():
    return scenario()


@pytest.fixture
def scenario2():
    return scenario(s_max=1e-4)


@pytest.fixture
def scenario3():
    return scenario(p_max=0.01)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
