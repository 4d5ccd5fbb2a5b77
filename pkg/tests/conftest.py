import numpy as np
import pytest


def random_complex(rng, n):
    return rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))


def rel_dev(a, b):
    return abs(a - b) / (1 + abs(b))


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def generic_bs():
    """A beam splitter with unequal amplitudes and non-trivial phases."""
    t = 0.6 * np.exp(0.4j)
    r = 0.8 * np.exp(-1.1j)
    return t, r, np.array([[t, r], [-np.conj(r), np.conj(t)]])


_ACCEPTANCE = pytest.StashKey[list]()


@pytest.fixture
def acceptance_report(request):
    """Record one line per acceptance criterion; printed in the terminal summary."""
    lines = request.config.stash.setdefault(_ACCEPTANCE, [])

    def record(criterion, passed, detail):
        line = f"criterion {criterion}: {'PASS' if passed else 'FAIL'} - {detail}"
        lines.append(line)
        print(line)
        return passed

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash.get(_ACCEPTANCE, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
