import numpy as np
import pytest

from wgraustein.config import DEFAULT
from wgraustein.corpus import corpus
from wgraustein.curves import from_function
from wgraustein.planner import plan_whitney_graustein

N = 1024


def circle(n=N):
    return from_function(lambda s: (np.cos(s), np.sin(s)), n, "circle")


def figure8(n=N):
    return from_function(lambda s: (np.cos(s), np.sin(2 * s)), n, "figure8")


class FrameMutation:
    """Wraps a homotopy and replaces the frame at one grid time by ``c o phi`` with phi'(s0) = 0.

    Locally the reparametrized samples follow a cubic in s - s0, which the
    spline reproduces, so the mutated frame has zero speed at the sample s0.
    """

    def __init__(self, h, t_star, s0):
        self.h, self.t_star, self.s0 = h, t_star, s0

    def __getattr__(self, name):
        return getattr(self.h, name)

    def evaluate_frame(self, t):
        f = self.h.evaluate_frame(t)
        if t != self.t_star:
            return f
        s = f.params
        return f.with_samples(f(s - np.sin(s - self.s0)))


def mutate(h, cfg):
    ts = h.t_grid(cfg.frame_count)
    return FrameMutation(h, ts[len(ts) // 2], h.start.params[h.start.n // 3])


ACCEPTANCE_LINES = []


@pytest.fixture
def report_line():
    """Records one acceptance line; all lines are repeated in the terminal summary."""

    def record(number, ok, detail):
        line = f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {detail}"
        print(line)
        ACCEPTANCE_LINES.append(line)

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def cfg():
    return DEFAULT


@pytest.fixture(scope="session")
def planned_corpus():
    """Planner output for every corpus pair, computed once: name -> (c0, c1, rot, homotopy, seconds)."""
    import time

    out = {}
    for name, c0, c1, rot in corpus(N, DEFAULT):
        t0 = time.perf_counter()
        h = plan_whitney_graustein(c0, c1, DEFAULT, check=False)
        out[name] = (c0, c1, rot, h, time.perf_counter() - t0)
    return out
