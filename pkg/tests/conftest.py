import numpy as np
import pytest

from bellcheck import quantum


@pytest.fixture
def rng():
    return np.random.default_rng(20261017)


@pytest.fixture
def sx():
    return quantum.pauli("x").matrix


@pytest.fixture
def sy():
    return quantum.pauli("y").matrix


@pytest.fixture
def sz():
    return quantum.pauli("z").matrix


def random_hermitian_matrix(rng, dim):
    g = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    return 0.5 * (g + g.conj().T)


ACCEPTANCE_LINES = []


@pytest.fixture
def acceptance(request):
    """Record one pass/fail line for the acceptance criterion under test."""
    record = {}
    yield record
    outcome = "PASS" if record.get("passed") else "FAIL"
    line = f"[{outcome}] criterion {record.get('id', '?')}: {record.get('name', request.node.name)}"
    if "runtime" in record:
        line += f" ({record['runtime'] * 1e3:.2f} ms, budget {record['budget'] * 1e3:.0f} ms)"
    ACCEPTANCE_LINES.append(line)
    print(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
