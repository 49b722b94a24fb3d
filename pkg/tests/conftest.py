import pytest

from supersinglet.amplitudes import InteractionParams
from supersinglet.oracle import OdeConfig, integrate_propagators

# Grid on which closed forms are checked against RK4.
ORACLE_N = range(-2, 5)
ORACLE_DELTA_FRACTIONS = (0.0, 0.1, 0.5)
ORACLE_G = (1.0, 17.5)
ORACLE_TIMES = (0.5, 5.0, 23.0, 95.0)

_ACCEPTANCE_LINES = []


def oracle_grid_params():
    for g in ORACLE_G:
        for frac in ORACLE_DELTA_FRACTIONS:
            yield InteractionParams.symmetric(g, frac * g)


@pytest.fixture(scope="session")
def rk4_grid():
    """RK4 propagators at the default step, keyed by ``(n, g, delta)``; one array per time."""
    out = {}
    for p in oracle_grid_params():
        for n in ORACLE_N:
            out[(n, p.g1, p.delta)] = integrate_propagators(n, ORACLE_TIMES, p, OdeConfig())
    return out


@pytest.fixture(scope="session")
def acceptance_report():
    def record(criterion, passed, detail):
        line = f"[{'PASS' if passed else 'FAIL'}] criterion {criterion}: {detail}"
        _ACCEPTANCE_LINES.append(line)
        print(line)
        return passed

    return record


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
