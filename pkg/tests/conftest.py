import numpy as np
import pytest

from swarm_arena import _backend


class PinnedRng:
    """Stand-in for ``numpy.random.Generator`` returning fixed draws.

    ``uniform`` lists the value for each successive ``random()`` call; the
    last entry repeats once the list runs out.
    """

    def __init__(self, uniform=(0.5,), normal=0.0, integer=0):
        self.uniform = list(uniform)
        self.normal = normal
        self.integer = integer
        self.calls = 0

    def _next(self):
        value = self.uniform[min(self.calls, len(self.uniform) - 1)]
        self.calls += 1
        return value

    def random(self, size=None):
        value = self._next()
        return value if size is None else np.full(size, value, dtype=float)

    def standard_normal(self, size=None):
        return self.normal if size is None else np.full(size, self.normal, dtype=float)

    def integers(self, low, high=None, size=None):
        return np.full(size, self.integer, dtype=np.int64)

    def permutation(self, n):
        return np.arange(n)


@pytest.fixture
def pinned():
    return PinnedRng


@pytest.fixture(params=["numba", "numpy"])
def backend(request):
    if request.param == "numba" and not _backend.HAS_NUMBA:
        pytest.skip("numba not installed")
    previous = _backend.get_backend()
    _backend.set_backend(request.param)
    yield request.param
    _backend.set_backend(previous)


_ACCEPTANCE = pytest.StashKey[list]()


@pytest.fixture
def verdict(request):
    """Record one PASS/FAIL line for an acceptance criterion, then assert it."""
    lines = request.config.stash.setdefault(_ACCEPTANCE, [])

    def record(number, ok, detail):
        line = f"criterion {number}: {'PASS' if ok else 'FAIL'}  {detail}"
        lines.append(line)
        print(line)
        assert ok, line

    return record


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(_ACCEPTANCE, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
