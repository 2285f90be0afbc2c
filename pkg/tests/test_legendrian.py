import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftest import N, circle, figure8
from wgraustein.corpus import random_zero_area_curves
from wgraustein.curves import from_function, rotation_number
from wgraustein.errors import GenericityError, InconsistentWordError, NonZeroAreaError
from wgraustein.legendrian import (
    DOWN,
    LEFT,
    RIGHT,
    UP,
    CuspWord,
    Tally,
    check_legendrian,
    crossing_count,
    cusp_model_curve,
    detect_cusps,
    find_cusps,
    front_projection,
    lagrangian_projection,
    legendrian_residual,
    legendrian_rotation,
    lift,
    model_residual,
    rot_formulas,
    rot_from_cusps,
)
from wgraustein.moves import standard_curve


def std0(n=N):
    return from_function(lambda s: (-0.25 * np.sin(2 * s), np.sin(s)), n, "std0")


def test_lift_figure8_closed_form():
    c = figure8(2048)
    g = lift(c)
    s = c.params
    assert np.abs(g.samples[:, 2] - (-np.sin(3 * s) / 3 - np.sin(s))).max() <= 1e-8
    assert legendrian_residual(g) <= 1e-8
    assert np.array_equal(lagrangian_projection(g).samples, c.samples)


def test_lift_std0_closed_form():
    c = std0(2048)
    g = lift(c)
    s = c.params
    expect = (4 / 3 - np.cos(3 * s) / 3 - np.cos(s)) / 8
    assert np.abs(g.samples[:, 2] - expect).max() <= 1e-8
    check_legendrian(g)


def test_lift_circle_needs_zero_area():
    with pytest.raises(NonZeroAreaError) as e:
        lift(circle())
    assert abs(e.value.area - np.pi) < 1e-8


def test_lift_shifts_z0():
    c = figure8()
    a, b = lift(c, 0.0), lift(c, 2.5)
    assert np.allclose(b.samples[:, 2] - a.samples[:, 2], 2.5)


def test_figure8_cusps():
    cusps = detect_cusps(lift(figure8()))
    assert np.allclose([c.s for c in cusps], np.pi / 4 * np.array([1, 3, 5, 7]), atol=1e-6)
    assert [(c.side, c.orientation) for c in cusps] == [(RIGHT, DOWN), (LEFT, UP), (RIGHT, UP), (LEFT, DOWN)]
    word = CuspWord.from_cusps(cusps)
    assert word.letters == ("-", "+", "+", "-")
    assert rot_formulas(word) == (0, 0, 0)


def test_std0_cusps():
    cusps = detect_cusps(lift(std0()))
    assert np.allclose([c.s for c in cusps], [np.pi / 2, 3 * np.pi / 2], atol=1e-6)
    assert [(c.side, c.orientation) for c in cusps] == [(RIGHT, UP), (LEFT, DOWN)]
    assert len(front_projection(lift(std0())).cusps) == 2


def test_front_of_figure8():
    g = lift(figure8())
    f = front_projection(g)
    s = g.params
    assert np.allclose(f.points[:, 0], np.sin(2 * s))
    assert np.allclose(f.points[:, 1], -np.sin(3 * s) / 3 - np.sin(s), atol=1e-8)
    assert len(f.cusps) == 4


def test_degenerate_zero_is_rejected():
    c = from_function(lambda s: (np.cos(s) + 2 * np.sin(s), np.sin(s) ** 3), N)
    with pytest.raises(GenericityError):
        find_cusps(c)


def test_word_examples():
    assert rot_from_cusps(CuspWord.parse("(-,+,+,-)")) == 0
    assert rot_from_cusps(CuspWord.parse("(+,-)")) == 0
    for n in range(1, 5):
        assert rot_from_cusps(CuspWord(("-",) * (2 * n))) == n
        assert rot_from_cusps(CuspWord(("+",) * (2 * n))) == -n


def test_word_rejects_malformed():
    with pytest.raises(InconsistentWordError):
        CuspWord(("-",))
    with pytest.raises(InconsistentWordError):
        CuspWord(("-", "+"), ("L", "L"))
    with pytest.raises(InconsistentWordError):
        rot_from_cusps(CuspWord(("-", "+")), Tally(0, 1, 1, 0))


@pytest.mark.parametrize("orientation", [UP, DOWN])
@pytest.mark.parametrize("side", [LEFT, RIGHT])
def test_cusp_models(orientation, side):
    arc = cusp_model_curve(orientation, side)
    assert model_residual(arc) == 0.0
    if (orientation, side) == (DOWN, LEFT):
        s = arc.s
        assert np.array_equal(arc.points, np.column_stack([s, s**2 / 2, -(s**3) / 3]))
    # y' changes sign at the cusp in the direction fixed by the side
    y = arc.points[:, 1]
    dy = np.diff(y)
    assert (dy[0] < 0) == (side == LEFT) and (dy[-1] > 0) == (side == LEFT)
    # classification rule: Down iff (Left and x' > 0) or (Right and x' < 0)
    xp = arc.points[-1, 0] - arc.points[0, 0]
    assert (orientation == DOWN) == ((side == LEFT) == (xp > 0))


@pytest.mark.parametrize("n", range(-3, 4))
def test_standard_words_through_lift(n):
    c = standard_curve(n, N)
    g = lift(c)
    word = CuspWord.from_cusps(detect_cusps(g))
    assert rot_from_cusps(word) == n == rotation_number(c)


RANDOM = random_zero_area_curves(30, seed=11)


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(range(len(RANDOM))))
def test_cusp_count_identities(i):
    c = RANDOM[i]
    g = lift(c)
    cusps = detect_cusps(g)
    t = CuspWord.from_cusps(cusps).tally
    n = rotation_number(c)
    assert t.lam_plus + t.lam_minus == t.rho_plus + t.rho_minus
    assert rot_from_cusps(cusps) == n
    assert crossing_count(cusps) == n
    assert legendrian_rotation(g) == n
    assert rotation_number(lagrangian_projection(g)) == n


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(range(len(RANDOM))), st.floats(-5, 5))
def test_lift_projection_round_trip(i, z0):
    c = RANDOM[i]
    g = lift(c, z0)
    again = lift(lagrangian_projection(g), z0)
    assert np.array_equal(again.samples, g.samples)
