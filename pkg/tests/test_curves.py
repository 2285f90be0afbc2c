import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftest import N, circle, figure8
from wgraustein.catalog import kcircle
from wgraustein.config import ToleranceConfig
from wgraustein.curves import (
    CircleDiffeo,
    PlanarClosedCurve,
    correct_area,
    from_fourier,
    from_function,
    is_regular,
    mirror_x,
    mirror_y,
    reparametrize,
    resample,
    reversed_curve,
    rotation_number,
    scale,
    signed_area,
)
from wgraustein.errors import CurveError, MonotonicityError, RegularityError


def band_limited(seed, n=N, harmonics=4):
    rng = np.random.default_rng(seed)
    s = np.arange(n) * 2 * np.pi / n
    k0 = int(rng.integers(1, 4))
    x, y = 1.5 * np.cos(k0 * s), 1.5 * np.sin(k0 * s)
    for k in range(1, harmonics + 1):
        a = rng.normal(size=4) / k
        x = x + a[0] * np.cos(k * s) + a[1] * np.sin(k * s)
        y = y + a[2] * np.cos(k * s) + a[3] * np.sin(k * s)
    return PlanarClosedCurve(np.column_stack([x, y]))


def test_config_validation():
    with pytest.raises(ValueError):
        ToleranceConfig(eps_speed=0.0)
    with pytest.raises(ValueError):
        ToleranceConfig(frame_count=1)
    assert ToleranceConfig().with_(rng_seed=3).rng_seed == 3


def test_curve_rejects_bad_samples():
    with pytest.raises(CurveError):
        PlanarClosedCurve(np.zeros((16, 2)))
    bad = np.ones((64, 2))
    bad[3, 0] = np.nan
    with pytest.raises(CurveError):
        PlanarClosedCurve(bad)


def test_evaluate_circle():
    c = circle()
    assert np.allclose(c(0.0), [1.0, 0.0])
    assert np.allclose(c.derivative(0.0), [0.0, 1.0], atol=1e-9)


def test_figure8_point_and_derivative():
    c = figure8()
    assert np.allclose(c(np.pi / 2), [0.0, 0.0], atol=1e-9)
    assert np.allclose(c.derivative(np.pi / 2), [-1.0, -2.0], atol=1e-6)


def test_periodicity():
    c = figure8()
    s = np.linspace(0, 2 * np.pi, 37)
    assert np.allclose(c(s), c(s + 2 * np.pi), atol=1e-12)
    assert np.allclose(c.derivative(s), c.derivative(s + 2 * np.pi), atol=1e-9)


@pytest.mark.parametrize("k", [-3, -2, -1, 1, 2, 3])
def test_rotation_kcircle(k):
    assert rotation_number(kcircle(k, N)) == k


def test_rotation_figure8():
    assert rotation_number(figure8()) == 0
    assert rotation_number(figure8(4096)) == 0


def test_constant_curve_is_not_regular():
    c = PlanarClosedCurve(np.ones((64, 2)))
    assert not is_regular(c)
    with pytest.raises(RegularityError):
        rotation_number(c)


def test_signed_area_examples():
    assert abs(signed_area(circle()) - np.pi) < 1e-8
    assert abs(signed_area(mirror_y(circle())) + np.pi) < 1e-8
    assert abs(signed_area(figure8())) < 1e-8
    assert abs(signed_area(scale(circle(), 2.0)) - 4 * np.pi) < 1e-8


def test_reparametrize_shift():
    c = reparametrize(circle(), CircleDiffeo.shift(1.0))
    assert rotation_number(c) == 1
    assert abs(signed_area(c) - np.pi) < 1e-8


def test_mirror_circle():
    m = mirror_y(circle())
    assert rotation_number(m) == -1


def test_circle_diffeo_rejects_non_monotone():
    with pytest.raises(MonotonicityError):
        CircleDiffeo([0.0, 1.0, 0.5], [0.0, 1.0, 2.0])


def test_fourier_ingest():
    c = from_fourier({"x": {"a0": 0.0, "a": [1.0], "b": []}, "y": {"a0": 0.0, "a": [], "b": [1.0]}}, 256)
    assert rotation_number(c) == 1


def test_correct_area_zeroes_area():
    c = correct_area(from_function(lambda s: (np.cos(s) + 0.3 * np.cos(2 * s), np.sin(s)), N))
    assert abs(signed_area(c)) < 1e-12


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10_000), st.floats(0.2, 5.0), st.floats(-3.0, 3.0))
def test_rotation_invariances(seed, lam, shift):
    c = band_limited(seed)
    if not is_regular(c):
        return
    r = rotation_number(c)
    assert rotation_number(scale(c, lam)) == r
    assert rotation_number(reparametrize(c, CircleDiffeo.shift(shift))) == r
    assert rotation_number(mirror_y(c)) == -r
    assert rotation_number(mirror_x(c)) == -r


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10_000))
def test_reversal_negates_area_and_rotation(seed):
    c = band_limited(seed)
    if not is_regular(c):
        return
    back = reversed_curve(c)
    assert abs(signed_area(back) + signed_area(c)) < 1e-8
    # the tangent of the backward traversal is -c'(-s), which winds the other way
    assert rotation_number(back) == -rotation_number(c)


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10_000))
def test_rotation_stable_under_doubling(seed):
    c = band_limited(seed, n=512)
    if not is_regular(c):
        return
    assert rotation_number(resample(c, 1024)) == rotation_number(c)


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10_000), st.floats(0.1, 0.9))
def test_reparametrize_preserves_area(seed, amp):
    c = band_limited(seed)
    u = np.array([0.0, 2.0, 4.0])
    phi = CircleDiffeo(u, u + np.array([0.0, amp, -amp]))
    assert abs(signed_area(reparametrize(c, phi)) - signed_area(c)) < 1e-6 * max(1.0, abs(signed_area(c)))
