import numpy as np
import pytest
from hypothesis import HealthCheck, settings, strategies as st

from relcalc import relation as rel

settings.register_profile(
    "default", deadline=None, max_examples=40,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")


def cgauss(rng, shape):
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def pair(x, f):
    return np.concatenate([np.asarray(x, dtype=complex), np.asarray(f, dtype=complex)])


@st.composite
def seeds(draw):
    return draw(st.integers(min_value=0, max_value=2**32 - 1))


@st.composite
def random_relation(draw, max_n=5):
    """Generic or structured (operator on a subspace plus mv part) relation."""
    n = draw(st.integers(1, max_n))
    rng = np.random.default_rng(draw(seeds()))
    if draw(st.booleans()):
        k = draw(st.integers(0, 2 * n))
        if k == 0:
            return rel.trivial(n)
        G = cgauss(rng, (2 * n, k))
        return rel.from_blocks(G[:n], G[n:])
    p = draw(st.integers(0, n))
    q = draw(st.integers(0, n - p))
    if p + q == 0:
        return rel.trivial(n)
    D = cgauss(rng, (n, p))
    X = np.hstack([D, np.zeros((n, q))])
    F = np.hstack([cgauss(rng, (n, n)) @ D, cgauss(rng, (n, q))])
    return rel.from_blocks(X, F)


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


# one summary line per acceptance criterion
_CRITERIA = {}


def pytest_runtest_logreport(report):
    name = report.nodeid.rsplit("::", 1)[-1]
    if not name.startswith("test_criterion_"):
        return
    if report.when == "call" or report.outcome == "failed":
        num = int(name.split("_")[2])
        ok = report.outcome == "passed"
        _CRITERIA[num] = _CRITERIA.get(num, True) and ok


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_CRITERIA):
        terminalreporter.write_line(f"criterion {num:2d}: {'PASS' if _CRITERIA[num] else 'FAIL'}")
