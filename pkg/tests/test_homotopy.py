import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftest import N, FrameMutation, circle, figure8, mutate
from wgraustein.catalog import shrinking_loop_homotopy
from wgraustein.curves import CircleDiffeo, correct_area, mirror_x, reparametrize, translate
from wgraustein.errors import InterpolationFailure, MismatchedEndpoints, NonZeroAreaError
from wgraustein.homotopy import (
    RegularHomotopy,
    Segment,
    concatenate,
    constant_homotopy,
    interpolate_area_projected,
    lift_homotopy,
    reverse,
    verify,
)
from wgraustein.legendrian import legendrian_residual
from wgraustein.moves import cancel_cusp_pair, standard_curve


def straight(c0, c1, keep=False):
    return RegularHomotopy((c0, c1), (Segment("straight", keep),))


def offcentre():
    from wgraustein.curves import from_function

    return from_function(lambda s: (np.cos(s) + 0.3 * np.cos(2 * s), np.sin(s)), N)


def test_evaluate_endpoints_exact():
    h = straight(circle(), offcentre())
    assert np.array_equal(h.evaluate_frame(0.0).samples, circle().samples)
    assert np.array_equal(h.evaluate_frame(1.0).samples, offcentre().samples)


def test_constant_homotopy():
    c = figure8()
    h = constant_homotopy(c)
    for t in (0.0, 0.3, 1.0):
        assert np.array_equal(h.evaluate_frame(t).samples, c.samples)


def test_concatenate_reverse():
    h = straight(circle(), offcentre())
    loop = concatenate(h, reverse(h))
    assert np.array_equal(loop.evaluate_frame(0.0).samples, circle().samples)
    assert np.array_equal(loop.evaluate_frame(1.0).samples, circle().samples)
    rr = reverse(reverse(h))
    for t in np.linspace(0, 1, 7):
        assert np.array_equal(rr.evaluate_frame(t).samples, h.evaluate_frame(t).samples)


def test_reverse_frames():
    h = straight(circle(), offcentre())
    r = reverse(h)
    for t in np.linspace(0, 1, 5):
        assert np.allclose(r.evaluate_frame(t).samples, h.evaluate_frame(1 - t).samples)


def test_concatenate_gap():
    h = straight(circle(), offcentre())
    with pytest.raises(MismatchedEndpoints):
        concatenate(h, straight(translate(offcentre(), (1e-6, 0.0)), circle()))


def test_reparam_segment_endpoints():
    c = figure8()
    phi = CircleDiffeo([0.0, 2.0, 4.0], [0.3, 2.3, 4.1])
    end = reparametrize(c, phi)
    h = RegularHomotopy((c, end), (Segment("reparam", diffeo=(tuple(phi.u), tuple(phi.v))),))
    assert np.allclose(h.evaluate_frame(1 - 1e-12).samples, end.samples, atol=1e-9)
    assert verify(h, c, end).passed


def test_interpolate_identical():
    c = standard_curve(2, N)
    h = interpolate_area_projected(c, c)
    assert h.n_segments == 0


def test_interpolate_jittered_std2(cfg):
    c = standard_curve(2, N, cfg)
    u = np.array([0.0, 2.0, 4.0])
    a = correct_area(reparametrize(c, CircleDiffeo(u, u + [0.0, 0.05, -0.04])))
    b = correct_area(reparametrize(c, CircleDiffeo(u, u + [0.03, -0.05, 0.0])))
    h = interpolate_area_projected(a, b, True, cfg)
    assert h.n_segments == 1
    assert verify(h, a, b, True, cfg).passed


def test_interpolate_orientation_obstruction(cfg):
    s0 = standard_curve(0, N, cfg)
    with pytest.raises(InterpolationFailure) as e:
        interpolate_area_projected(s0, mirror_x(s0), True, cfg, max_splits=0)
    assert abs(e.value.t - 0.5) < 1e-9
    assert min(abs(e.value.s - np.pi / 2), abs(e.value.s - 3 * np.pi / 2)) < 1e-2
    assert e.value.speed < cfg.eps_speed


def test_interpolate_needs_zero_area(cfg):
    with pytest.raises(NonZeroAreaError):
        interpolate_area_projected(circle(), offcentre(), True, cfg)


def test_verify_endpoint_mismatch(cfg):
    h = straight(circle(), offcentre())
    r = verify(h, circle(), translate(offcentre(), (0.1, 0.0)), cfg=cfg)
    assert not r.checks["endpoints"] and not r.passed


def test_verify_shrinking_loop_family(cfg):
    h = shrinking_loop_homotopy()
    r = verify(h, h.start, h.end, cfg=cfg)
    assert not r.checks["rotation number constant"]
    assert not r.checks["tangent continuity"]
    assert {1, 2} <= set(r.rots)


def test_mutation_flips_report(cfg):
    h = straight(circle(), offcentre())
    assert verify(h, circle(), offcentre(), cfg=cfg).passed
    r = verify(mutate(h, cfg), circle(), offcentre(), cfg=cfg)
    assert not r.checks["regularity"]


def test_lift_constant_figure8(cfg):
    frames = lift_homotopy(constant_homotopy(figure8()), cfg)
    s = figure8().params
    for _, g in frames:
        assert np.abs(g.samples[:, 2] - (-np.sin(3 * s) / 3 - np.sin(s))).max() < 1e-8


def test_lift_circle_frame(cfg):
    with pytest.raises(NonZeroAreaError):
        lift_homotopy(constant_homotopy(circle()), cfg)


def test_lift_surgery_homotopy(cfg):
    _, h = cancel_cusp_pair(figure8(), (0, 1), cfg)
    frames = lift_homotopy(h, cfg, frames=16)
    assert len(frames) >= 16
    assert max(legendrian_residual(g) for _, g in frames) < 1e-4


@settings(max_examples=10, deadline=None)
@given(st.floats(0.05, 0.95))
def test_mutation_at_any_sample(frac):
    from wgraustein.config import DEFAULT as cfg

    h = straight(circle(), offcentre())
    ts = h.t_grid(cfg.frame_count)
    t = ts[int(frac * (len(ts) - 1))]
    s0 = h.start.params[int(frac * h.start.n)]
    assert not verify(FrameMutation(h, t, s0), circle(), offcentre(), cfg=cfg).passed
