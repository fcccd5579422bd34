import zlib

import pytest

from qfano.quantum import rng_for

_ACCEPTANCE = []


@pytest.fixture
def rng(request):
    # one independent stream per test, stable across runs
    return rng_for(20240611, zlib.crc32(request.node.name.encode()))


@pytest.fixture
def record():
    """Log a one-line acceptance verdict, shown in the terminal summary."""
    def _record(criterion: str, ok: bool, detail: str) -> bool:
        _ACCEPTANCE.append(f"{'PASS' if ok else 'FAIL'}  {criterion}: {detail}")
        return ok
    return _record


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE:
            terminalreporter.write_line(line)


def random_hermitian(rng, n):
    g = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return 0.5 * (g + g.conj().T)
