import math

import numpy as np
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from yolkkit.median import Electorate

settings.register_profile(
    "default", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

ACCEPTANCE = {}


def record(criterion: int, ok: bool, detail: str = ""):
    """Remember an acceptance outcome; printed in the terminal summary."""
    ACCEPTANCE[criterion] = (ok, detail)
    print(f"CRITERION {criterion}: {'PASS' if ok else 'FAIL'} {detail}")


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[k]
        terminalreporter.write_line(f"CRITERION {k:2d}: {'PASS' if ok else 'FAIL'}  {detail}")


coord = st.floats(min_value=-10.0, max_value=10.0, allow_nan=False, allow_infinity=False)


@st.composite
def electorates(draw, min_n=3, max_n=9, odd=None):
    n = draw(st.integers(min_value=min_n, max_value=max_n))
    if odd is True and n % 2 == 0:
        n = n + 1 if n < max_n else n - 1
    if odd is False and n % 2 == 1:
        n = n + 1 if n < max_n else n - 1
    seed = draw(st.integers(min_value=0, max_value=2**32 - 1))
    rng = np.random.default_rng(seed)
    return Electorate(rng.uniform(0.0, 1.0, size=(n, 2)))


@st.composite
def unit_vectors(draw):
    t = draw(st.floats(min_value=0.0, max_value=2 * math.pi, allow_nan=False))
    return (math.cos(t), math.sin(t))


def random_odd_instances(count: int, seed: int):
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(count):
        n = int(rng.choice([3, 5, 7, 9]))
        out.append(Electorate(rng.uniform(0.0, 1.0, size=(n, 2))))
    return out


@pytest.fixture(scope="session")
def odd_batch():
    """1,000 odd electorates in the unit square with their yolk and LP yolk."""
    from yolkkit.lpyolk import lp_yolk
    from yolkkit.yolk import yolk

    import time

    t0 = time.perf_counter()
    rows = []
    for E in random_odd_instances(1000, seed=20240601):
        rows.append((E, yolk(E), lp_yolk(E)))
    return rows, time.perf_counter() - t0
