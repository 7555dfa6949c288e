import math

import numpy as np
import pytest
from hypothesis import given

from yolkkit.constructions import family_nondegen
from yolkkit.errors import UnsupportedDimension
from yolkkit.lpyolk import lp_yolk
from yolkkit.median import Electorate
from yolkkit.yolk import yolk

from conftest import electorates


@pytest.mark.parametrize("eps", [0.5, 0.1, 0.01])
def test_nondegen(eps):
    E, spec = family_nondegen(eps)
    res = lp_yolk(E)
    assert res.ball.radius == pytest.approx(eps / math.sqrt(1 + eps * eps), abs=1e-12)
    assert res.ball.center == pytest.approx((0.0, 0.0), abs=1e-9)
    assert not res.degenerate


def test_equilateral():
    s = 2.0
    E = Electorate([(0, 0), (s, 0), (s / 2, s * math.sqrt(3) / 2)])
    assert lp_yolk(E).ball.radius == pytest.approx(s / (2 * math.sqrt(3)), abs=1e-12)


def test_repeated_point():
    res = lp_yolk(Electorate([(1, 1)] * 3))
    assert res.degenerate
    assert res.ball.radius == 0 and res.ball.center == (1.0, 1.0)


def test_dimension():
    with pytest.raises(UnsupportedDimension):
        lp_yolk(Electorate([(0, 0, 0), (1, 0, 0), (0, 1, 0)]))


@given(electorates())
def test_prop_feasible_and_active(E):
    res = lp_yolk(E)
    c = res.ball.center
    for H in res.lines:
        assert H.distance(c) <= res.ball.radius + 1e-7
    if res.ball.radius > 1e-9 and not res.degenerate:
        assert len(res.active) >= 2


@given(electorates())
def test_prop_sandwich(E):
    assert lp_yolk(E).ball.radius <= yolk(E).ball.radius + 1e-6


@given(electorates())
def test_prop_deterministic(E):
    a, b = lp_yolk(E), lp_yolk(Electorate(np.array(E.array)))
    assert a.ball == b.ball
