import numpy as np
import pytest
from hypothesis import strategies as st

from levelwalk import validate

P1 = (0.3, 0.2, 0.3, 0.2)
SYM = (0.25, 0.25, 0.25, 0.25)


@pytest.fixture
def p1():
    return validate(*P1)


@pytest.fixture
def sym():
    return validate(*SYM)


@st.composite
def walk_params(draw, floor=0.02):
    """Valid parameters with every probability at least ``floor``."""
    # integer weights keep x / total inside [0, 1]; subnormal floats did not
    w = [draw(st.integers(0, 10**6)) for _ in range(4)]
    total = sum(w) or 4
    p, q, r = (floor + (1 - 4 * floor) * (x if sum(w) else 1) / total for x in w[:3])
    return validate(p, q, r, 1.0 - p - q - r)


def random_params(count, seed, floor=0.05):
    rng = np.random.default_rng(seed)
    out = []
    while len(out) < count:
        w = rng.dirichlet(np.ones(4))
        if w.min() >= floor:
            out.append(validate(*w))
    return out


def green_solve(params, model, half_width, layers):
    """Expected visits from a direct linear solve on a killed, truncated lattice.

    Independent of the forward DP: solves ``x = e0 + x Q`` with sites beyond
    ``half_width`` (and levels beyond ``layers - 1``) treated as absorbing.
    """
    width = 2 * half_width + 1
    size = width * layers
    idx = lambda n, m: m * width + n + half_width
    Q = np.zeros((size, size))
    for m in range(layers):
        for n in range(-half_width, half_width + 1):
            i = idx(n, m)
            if n + 1 <= half_width:
                Q[i, idx(n + 1, m)] += params.p
            if n - 1 >= -half_width:
                Q[i, idx(n - 1, m)] += params.q
            if model == "two-level":
                Q[i, idx(n, 1 - m)] += params.r
            elif m + 1 < layers:
                Q[i, idx(n, m + 1)] += params.r
    e0 = np.zeros(size)
    e0[idx(0, 0)] = 1.0
    x = np.linalg.solve(np.eye(size) - Q.T, e0)
    return lambda n, m: x[idx(n, m)]


ACCEPTANCE_LINES = []


def record_criterion(number, title, ok, detail):
    ACCEPTANCE_LINES.append(f"[{'PASS' if ok else 'FAIL'}] AC{number:<2} {title}: {detail}")
    return ok


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1][2:])):
            terminalreporter.write_line(line)
