from fractions import Fraction

import pytest
from hypothesis import strategies as st

from terrainguard.geometry import make_terrain, point_on

W_VERTICES = [(0, 4), (2, 0), (4, 2), (6, 0), (8, 4)]


@pytest.fixture
def w_terrain():
    return make_terrain(W_VERTICES)


@pytest.fixture
def flat():
    return make_terrain([(0, 0), (10, 0)])


@st.composite
def terrains(draw, min_n=2, max_n=10, max_y=8):
    n = draw(st.integers(min_n, max_n))
    steps = draw(st.lists(st.integers(1, 3), min_size=n - 1, max_size=n - 1))
    xs = [0]
    for s in steps:
        xs.append(xs[-1] + s)
    ys = draw(st.lists(st.integers(0, max_y), min_size=n, max_size=n))
    return make_terrain(list(zip(xs, ys)))


@st.composite
def terrain_points(draw, terrain, min_size=1, max_size=8):
    """Distinct points on the chain at abscissae k/4."""
    lo, hi = int(terrain.x_min * 4), int(terrain.x_max * 4)
    ks = draw(st.lists(st.integers(lo, hi), min_size=min_size, max_size=max_size, unique=True))
    return [point_on(terrain, Fraction(k, 4)) for k in sorted(ks)]


SUITE_LIMIT_S = 300
_t0 = {}


def pytest_sessionstart(session):
    import time
    _t0["start"] = time.perf_counter()


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    import time
    from test_acceptance import LINES
    if not LINES:
        return
    elapsed = time.perf_counter() - _t0["start"]
    ok = elapsed < SUITE_LIMIT_S
    terminalreporter.section("acceptance criteria")
    for line in LINES:
        terminalreporter.write_line(line)
    terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] criterion 9 (suite time): {elapsed:.1f}s < {SUITE_LIMIT_S}s")
    if not ok:
        terminalreporter._session.exitstatus = 1
