"""Regular closed plane curves stored as uniform samples on a periodic cubic spline."""

from dataclasses import dataclass, field
from functools import cached_property, lru_cache

import numpy as np
from scipy.interpolate import CubicSpline, PchipInterpolator

from .config import DEFAULT, ToleranceConfig
from .errors import AliasingError, CurveError, MonotonicityError, RegularityError

TAU = 2.0 * np.pi
MAX_REFINEMENTS = 6


def param_grid(n):
    return np.arange(n) * (TAU / n)


@lru_cache(maxsize=32)
def _gauss_nodes(n):
    # 3-point Gauss-Legendre per knot interval: exact for the quintic x*y' of a cubic spline
    g = np.array([-np.sqrt(0.6), 0.0, np.sqrt(0.6)])
    w = np.array([5.0, 8.0, 5.0]) / 9.0
    h = TAU / n
    nodes = (param_grid(n)[:, None] + 0.5 * h * (1.0 + g)).ravel()
    return nodes, 0.5 * h * w


def periodic_spline(values):
    values = np.asarray(values, dtype=float)
    n = values.shape[0]
    knots = np.arange(n + 1) * (TAU / n)
    ext = np.concatenate([values, values[:1]], axis=0)
    return CubicSpline(knots, ext, bc_type="periodic", axis=0)


@dataclass(frozen=True, eq=False)
class PlanarClosedCurve:
    """Closed plane curve through ``samples[i]`` at ``s_i = 2*pi*i/N``.

    The curve is the periodic cubic spline interpolant of the samples. Instances
    are immutable; derived curves are always new objects.
    """

    samples: np.ndarray
    name: str | None = field(default=None)

    def __post_init__(self):
        arr = np.array(self.samples, dtype=float)
        if arr.ndim != 2 or arr.shape[1] != 2:
            raise CurveError(f"samples must have shape (N, 2), got {arr.shape}")
        if arr.shape[0] < 32:
            raise CurveError(f"need at least 32 samples, got {arr.shape[0]}")
        if not np.all(np.isfinite(arr)):
            raise CurveError("samples must be finite")
        arr.setflags(write=False)
        object.__setattr__(self, "samples", arr)

    @property
    def n(self):
        return self.samples.shape[0]

    @property
    def x(self):
        return self.samples[:, 0]

    @property
    def y(self):
        return self.samples[:, 1]

    @property
    def params(self):
        return param_grid(self.n)

    @cached_property
    def spline(self):
        return periodic_spline(self.samples)

    def __call__(self, s, nu=0):
        return self.spline(np.mod(s, TAU), nu)

    def derivative(self, s, order=1):
        return self.spline(np.mod(s, TAU), order)

    def with_samples(self, samples, name=None):
        return PlanarClosedCurve(samples, self.name if name is None else name)

    def __repr__(self):
        tag = f" {self.name!r}" if self.name else ""
        return f"<PlanarClosedCurve{tag} N={self.n}>"


def evaluate(curve, s):
    return curve(s)


def derivative(curve, s):
    return curve.derivative(s)


def from_function(f, n=None, name=None):
    """Sample ``f(s) -> (x, y)`` on the uniform grid."""
    n = DEFAULT.n_samples if n is None else n
    s = param_grid(n)
    x, y = f(s)
    return PlanarClosedCurve(np.column_stack([np.broadcast_to(x, s.shape), np.broadcast_to(y, s.shape)]), name)


def from_fourier(fourier, n=None, name=None):
    """Sample a curve given per-coordinate cosine/sine coefficients.

    ``fourier`` maps ``"x"`` and ``"y"`` to dicts with ``a0``, ``a`` (cos k s,
    k = 1, 2, ...) and ``b`` (sin k s).
    """
    n = DEFAULT.n_samples if n is None else n
    s = param_grid(n)
    cols = []
    for key in ("x", "y"):
        c = fourier[key]
        v = np.full(n, float(c.get("a0", 0.0)))
        for k, ak in enumerate(c.get("a", []), start=1):
            v += float(ak) * np.cos(k * s)
        for k, bk in enumerate(c.get("b", []), start=1):
            v += float(bk) * np.sin(k * s)
        cols.append(v)
    return PlanarClosedCurve(np.column_stack(cols), name)


def refined_grid(curve, cfg=DEFAULT, factor=None):
    return param_grid(curve.n * (cfg.grid_refine if factor is None else factor))


def speed_profile(curve, cfg=DEFAULT):
    s = refined_grid(curve, cfg)
    return s, np.hypot(*curve.derivative(s).T)


def relative_min_speed(curve, cfg=DEFAULT):
    _, v = speed_profile(curve, cfg)
    vmax = v.max()
    return 0.0 if vmax == 0 else float(v.min() / vmax)


def is_regular(curve, cfg=DEFAULT):
    return relative_min_speed(curve, cfg) >= cfg.eps_speed


def check_regular(curve, cfg=DEFAULT):
    s, v = speed_profile(curve, cfg)
    vmax = v.max()
    if vmax == 0 or v.min() < cfg.eps_speed * vmax:
        i = int(np.argmin(v))
        rel = 0.0 if vmax == 0 else v[i] / vmax
        raise RegularityError(f"relative speed {rel:.3g} at s={s[i]:.6g} is below {cfg.eps_speed:g}")


def _wrap(a):
    return np.mod(a + np.pi, TAU) - np.pi


def tangent_winding(dx, dy):
    """Total turning of the closed vector loop ``(dx, dy)`` divided by 2*pi.

    Returns ``(winding, max_step)``; the caller decides whether the sampling
    was fine enough.
    """
    th = np.arctan2(dy, dx)
    steps = _wrap(np.diff(np.concatenate([th, th[:1]])))
    return steps.sum() / TAU, float(np.abs(steps).max())


def rotation_number(curve, cfg=DEFAULT):
    """Degree of ``s -> c'(s)`` by angle unwrapping with adaptive refinement."""
    check_regular(curve, cfg)
    m = curve.n * cfg.grid_refine
    for _ in range(MAX_REFINEMENTS + 1):
        d = curve.derivative(param_grid(m))
        w, step = tangent_winding(d[:, 0], d[:, 1])
        k = round(w)
        if step <= np.pi / 2 and abs(w - k) <= 0.01:
            return int(k)
        m *= 2
    raise AliasingError(f"tangent angle unresolved after {MAX_REFINEMENTS} refinements")


def xdy_intervals(curve, xvals=None):
    """Per knot interval integrals of ``X y'``, exact for cubic splines.

    ``X`` is the spline through ``xvals`` (default: the curve's own x).
    """
    nodes, w = _gauss_nodes(curve.n)
    xs = curve(nodes)[:, 0] if xvals is None else periodic_spline(xvals)(nodes)
    f = xs * curve.derivative(nodes)[:, 1]
    return f.reshape(curve.n, 3) @ w


def signed_area(curve):
    """Oriented area, the closed integral of x dy."""
    nodes, w = _gauss_nodes(curve.n)
    p = curve(nodes)
    d = curve.derivative(nodes)
    return float(((p[:, 0] * d[:, 1]).reshape(curve.n, 3) @ w).sum())


def _x_dot_dy(xvals, curve):
    return float(xdy_intervals(curve, xvals).sum())


class CircleDiffeo:
    """Orientation-preserving circle diffeomorphism through ``(u_k, v_k)``.

    Monotone cubic (PCHIP) interpolation of the lifted knots, extended by
    ``phi(s + 2 pi) = phi(s) + 2 pi``.
    """

    def __init__(self, u, v):
        u = np.asarray(u, dtype=float)
        v = np.asarray(v, dtype=float)
        if u.ndim != 1 or u.shape != v.shape or u.size < 1:
            raise MonotonicityError("knot arrays must be 1-D of equal length")
        if np.any(np.diff(u) <= 0) or np.any(np.diff(v) <= 0):
            raise MonotonicityError("knots must be strictly increasing")
        if u[-1] - u[0] >= TAU or v[-1] - v[0] >= TAU:
            raise MonotonicityError("knots must span less than one turn")
        self.u, self.v = u, v
        uu = np.concatenate([u - TAU, u, u + TAU, u[:1] + 2 * TAU])
        vv = np.concatenate([v - TAU, v, v + TAU, v[:1] + 2 * TAU])
        self._f = PchipInterpolator(uu, vv)

    @classmethod
    def identity(cls):
        return cls([0.0], [0.0])

    @classmethod
    def shift(cls, delta):
        return cls([0.0], [float(delta)])

    def __call__(self, s):
        s = np.asarray(s, dtype=float)
        k = np.floor((s - self.u[0]) / TAU)
        return self._f(s - k * TAU) + k * TAU

    def homotopy(self, tau):
        """``(1 - tau) id + tau phi`` evaluated as a callable."""
        return lambda s: (1.0 - tau) * np.asarray(s, dtype=float) + tau * self(s)


def _check_monotone(phi):
    s = param_grid(4096)
    p = np.asarray(phi(np.concatenate([s, [TAU]])), dtype=float)
    if np.any(np.diff(p) <= 0):
        raise MonotonicityError("phi is not strictly increasing")
    if abs(p[-1] - p[0] - TAU) > 1e-9:
        raise MonotonicityError("phi(s + 2 pi) != phi(s) + 2 pi")


def reparametrize(curve, phi):
    """``c o phi`` resampled on the uniform grid."""
    if not isinstance(phi, CircleDiffeo):
        _check_monotone(phi)
    return curve.with_samples(curve(phi(curve.params)))


def mirror_y(curve):
    """Reflection (x, y) -> (x, -y)."""
    return curve.with_samples(curve.samples * np.array([1.0, -1.0]))


def mirror_x(curve):
    """Reflection (x, y) -> (-x, y)."""
    return curve.with_samples(curve.samples * np.array([-1.0, 1.0]))


def scale(curve, factor):
    if not factor > 0:
        raise ValueError("scale factor must be positive")
    return curve.with_samples(curve.samples * factor)


def translate(curve, offset):
    return curve.with_samples(curve.samples + np.asarray(offset, dtype=float))


def reversed_curve(curve):
    """Same image traversed backwards: s -> -s."""
    idx = (-np.arange(curve.n)) % curve.n
    return curve.with_samples(curve.samples[idx])


def resample(curve, n):
    if n == curve.n:
        return curve
    return curve.with_samples(curve(param_grid(n)))


def smoothstep(u):
    u = np.clip(u, 0.0, 1.0)
    return u * u * u * (10.0 - 15.0 * u + 6.0 * u * u)


def window_mask(s, a, b, ramp):
    """1 on the arc [a, b] (mod 2 pi), smoothly decaying to 0 within ``ramp``."""
    length = b - a
    u = np.mod(np.asarray(s, dtype=float) - a, TAU)
    inside = u <= length
    dist = np.minimum(u - length, TAU - u)
    out = 1.0 - smoothstep(dist / ramp)
    return np.where(inside, 1.0, out)


def pump_direction(curve, exclude=()):
    """Area pumping field ``w = phi * y'`` with ``phi = (y'/max|y'|)**2``.

    Moving x along ``w`` leaves x' untouched wherever y' = 0, so it can never
    destroy regularity. ``exclude`` lists ``(a, b, ramp)`` arcs where the
    weight is switched off.
    """
    yd = curve.derivative(curve.params)[:, 1]
    m = np.abs(yd).max()
    if m == 0:
        raise RegularityError("y' vanishes identically; cannot pump area")
    w = yd * (yd / m) ** 2
    for a, b, ramp in exclude:
        w = w * (1.0 - window_mask(curve.params, a, b, ramp))
    return w


def correct_area(curve, direction=None, exclude=()):
    """Shift x along a pumping direction so the signed area vanishes.

    The area is affine in the shift, so one linear solve is exact up to
    rounding; a second pass removes the rounding residue.
    """
    w = pump_direction(curve, exclude) if direction is None else np.asarray(direction, dtype=float)
    slope = _x_dot_dy(w, curve)
    if slope == 0:
        raise RegularityError("pumping direction carries no area")
    out = curve
    for _ in range(2):
        u = signed_area(out) / slope
        out = out.with_samples(np.column_stack([out.x - u * w, out.y]))
    return out


def area_slope(curve, direction):
    return _x_dot_dy(direction, curve)


__all__ = [
    "TAU",
    "PlanarClosedCurve",
    "ToleranceConfig",
    "CircleDiffeo",
    "evaluate",
    "derivative",
    "from_function",
    "from_fourier",
    "rotation_number",
    "signed_area",
    "reparametrize",
    "mirror_x",
    "mirror_y",
    "scale",
    "translate",
    "reversed_curve",
    "resample",
    "check_regular",
    "relative_min_speed",
    "correct_area",
    "pump_direction",
]
