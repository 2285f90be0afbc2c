"""Regular homotopies as keyframes plus segment interpolators, and their certification."""

from dataclasses import dataclass, field

import numpy as np

from .config import DEFAULT
from .curves import (
    TAU,
    CircleDiffeo,
    PlanarClosedCurve,
    correct_area,
    param_grid,
    resample,
    rotation_number,
    signed_area,
    tangent_winding,
)
from .errors import (
    AliasingError,
    CertificationFailure,
    InterpolationFailure,
    MismatchedEndpoints,
    NonZeroAreaError,
    RegularityError,
)

SEGMENT_KINDS = ("straight", "surgery", "reparam", "scaling")
ENDPOINT_TOL = 1e-9


@dataclass(frozen=True)
class Segment:
    """Interpolator between two consecutive keyframes.

    ``straight``, ``surgery`` and ``scaling`` frames are the convex combination
    of the keyframe samples; ``reparam`` frames are ``start o phi_t`` with
    ``phi_t = (1 - t) id + t phi``. With ``keep_area_zero`` every frame is
    moved back to zero signed area along the pumping direction, switched off
    on the ``exclude`` arcs.
    """

    kind: str = "straight"
    keep_area_zero: bool = False
    exclude: tuple = ()
    diffeo: tuple | None = None
    reversed: bool = False
    note: str = ""

    def __post_init__(self):
        if self.kind not in SEGMENT_KINDS:
            raise ValueError(f"unknown segment kind {self.kind!r}")
        if self.kind == "reparam" and self.diffeo is None:
            raise ValueError("reparam segment needs diffeo knots")

    def flipped(self):
        return Segment(self.kind, self.keep_area_zero, self.exclude, self.diffeo, not self.reversed, self.note)

    def frame(self, a, b, tau):
        if self.reversed:
            return self._forward(b, a, 1.0 - tau)
        return self._forward(a, b, tau)

    def _forward(self, p, q, tau):
        if tau <= 0.0:
            return p
        if tau >= 1.0:
            return q
        if self.kind == "reparam":
            phi = CircleDiffeo(*self.diffeo).homotopy(tau)
            raw = p.with_samples(p(phi(p.params)))
        else:
            raw = p.with_samples((1.0 - tau) * p.samples + tau * q.samples)
        if self.keep_area_zero:
            raw = correct_area(raw, exclude=self.exclude)
        return raw


@dataclass(frozen=True, eq=False)
class RegularHomotopy:
    keyframes: tuple
    segments: tuple
    trace: tuple = field(default=())

    def __post_init__(self):
        kf = tuple(self.keyframes)
        sg = tuple(self.segments)
        if not kf:
            raise ValueError("a homotopy needs at least one keyframe")
        if len(sg) != len(kf) - 1:
            raise ValueError("segment count must be keyframe count - 1")
        if len({c.n for c in kf}) != 1:
            raise ValueError("all keyframes must have the same sample count")
        object.__setattr__(self, "keyframes", kf)
        object.__setattr__(self, "segments", sg)
        object.__setattr__(self, "trace", tuple(self.trace))

    @property
    def start(self):
        return self.keyframes[0]

    @property
    def end(self):
        return self.keyframes[-1]

    @property
    def n_segments(self):
        return len(self.segments)

    def locate(self, t):
        m = self.n_segments
        if m == 0:
            return None, 0.0
        t = min(max(float(t), 0.0), 1.0)
        k = min(int(t * m), m - 1)
        return k, t * m - k

    def evaluate_frame(self, t):
        k, tau = self.locate(t)
        if k is None:
            return self.keyframes[0]
        if t >= 1.0:
            return self.keyframes[-1]
        return self.segments[k].frame(self.keyframes[k], self.keyframes[k + 1], tau)

    def t_grid(self, per_segment):
        m = max(self.n_segments, 1)
        ts = [(k + j / (per_segment - 1)) / m for k in range(m) for j in range(per_segment)]
        return np.unique(np.array(ts))

    def zero_area_span(self):
        """Global t range covered by area-preserving segments (None if none)."""
        flags = [s.keep_area_zero for s in self.segments]
        if not any(flags):
            return None
        m = self.n_segments
        first = flags.index(True)
        last = m - 1 - flags[::-1].index(True)
        return first / m, (last + 1) / m


def evaluate_frame(h, t):
    return h.evaluate_frame(t)


def constant_homotopy(curve, note="identity"):
    return RegularHomotopy((curve,), (), (note,))


def _max_dev(a, b):
    if a.n != b.n:
        b = resample(b, a.n)
    return float(np.abs(a.samples - b.samples).max())


def concatenate(h1, h2):
    gap = _max_dev(h1.end, h2.start)
    if gap > ENDPOINT_TOL:
        raise MismatchedEndpoints(f"end of first homotopy differs from start of second by {gap:.3g}")
    if h1.end.n != h2.start.n:
        raise MismatchedEndpoints("homotopies use different sample counts; resample first")
    return RegularHomotopy(
        h1.keyframes + h2.keyframes[1:],
        h1.segments + h2.segments,
        h1.trace + h2.trace,
    )


def concatenate_all(hs):
    out = hs[0]
    for h in hs[1:]:
        out = concatenate(out, h)
    return out


def reverse(h):
    return RegularHomotopy(
        h.keyframes[::-1],
        tuple(s.flipped() for s in h.segments[::-1]),
        tuple(f"reverse({t})" for t in h.trace[::-1]),
    )


@dataclass
class CertificationReport:
    min_rel_speed: float
    worst_t: float
    worst_s: float
    endpoint_deviation: float
    rot_expected: int | None
    rots: list
    rot_constant: bool
    max_area: float | None
    max_angle_step: float
    frames: int
    grid_points: int
    checks: dict

    @property
    def passed(self):
        return all(self.checks.values())

    def lines(self):
        out = [
            f"frames checked        : {self.frames} (s-grid {self.grid_points})",
            f"min relative speed    : {self.min_rel_speed:.6g} at t={self.worst_t:.6g}, s={self.worst_s:.6g}",
            f"endpoint deviation    : {self.endpoint_deviation:.3g}",
            f"rotation number       : expected {self.rot_expected}, seen {sorted(set(map(str, self.rots)))}",
            f"max tangent-angle step: {self.max_angle_step:.4g} rad",
        ]
        if self.max_area is not None:
            out.append(f"max |area| (zero span): {self.max_area:.3g}")
        for name, ok in self.checks.items():
            out.append(f"[{'PASS' if ok else 'FAIL'}] {name}")
        return out

    def to_dict(self):
        return {
            "min_rel_speed": self.min_rel_speed,
            "worst_t": self.worst_t,
            "worst_s": self.worst_s,
            "endpoint_deviation": self.endpoint_deviation,
            "rot_expected": self.rot_expected,
            "rots": [None if r is None else int(r) for r in self.rots],
            "rot_constant": self.rot_constant,
            "max_area": self.max_area,
            "max_angle_step": self.max_angle_step,
            "frames": self.frames,
            "grid_points": self.grid_points,
            "checks": dict(self.checks),
            "passed": self.passed,
        }


def _frame_rot(curve, step_ok, winding):
    k = round(winding)
    if step_ok and abs(winding - k) <= 0.01:
        return int(k)
    try:
        return rotation_number(curve)
    except (RegularityError, AliasingError):
        return None


def _frame_stats(curve, s):
    d = curve.derivative(s)
    v = np.hypot(d[:, 0], d[:, 1])
    vmax = v.max()
    i = int(np.argmin(v))
    rel = 0.0 if vmax == 0 else float(v[i] / vmax)
    w, step = tangent_winding(d[:, 0], d[:, 1])
    rot = None if rel == 0 else _frame_rot(curve, step <= np.pi / 2, w)
    return rel, float(s[i]), rot, np.arctan2(d[:, 1], d[:, 0])


def verify(h, c0, c1, expect_zero_area=False, cfg=DEFAULT, frames=None):
    """Check a homotopy on a (t, s) lattice, independently of how it was built.

    Criteria: endpoints match ``c0``/``c1``; relative speed stays above
    ``eps_speed`` (one extra refinement pass around the worst frame); every
    frame has the rotation number of ``c0``; the tangent angle at each grid
    point moves by at most pi/2 between adjacent frames; and, if requested,
    the signed area vanishes on the span of area-preserving segments.
    """
    per_seg = cfg.frame_count if frames is None else frames
    ts = h.t_grid(per_seg)
    n = h.start.n
    s = param_grid(n * cfg.grid_refine)
    try:
        rot0 = rotation_number(c0, cfg)
    except (RegularityError, AliasingError):
        rot0 = None
    span = h.zero_area_span() if expect_zero_area else None

    rels, where, rots, areas = [], [], [], []
    max_step = 0.0
    prev_angle = None
    for t in ts:
        f = h.evaluate_frame(t)
        rel, s_worst, rot, ang = _frame_stats(f, s)
        rels.append(rel)
        where.append(s_worst)
        rots.append(rot)
        if prev_angle is not None:
            max_step = max(max_step, float(np.abs(np.mod(ang - prev_angle + np.pi, TAU) - np.pi).max()))
        prev_angle = ang
        if span is not None and span[0] - 1e-12 <= t <= span[1] + 1e-12:
            areas.append(abs(signed_area(f)))

    # refinement pass around the worst frame
    j = int(np.argmin(rels))
    lo = ts[max(j - 1, 0)]
    hi = ts[min(j + 1, len(ts) - 1)]
    extra = np.linspace(lo, hi, 9)[1:-1]
    for t in extra:
        f = h.evaluate_frame(t)
        rel, s_worst, rot, _ = _frame_stats(f, s)
        rels.append(rel)
        where.append(s_worst)
        rots.append(rot)
        if span is not None and span[0] - 1e-12 <= t <= span[1] + 1e-12:
            areas.append(abs(signed_area(f)))
    all_t = np.concatenate([ts, extra])
    k = int(np.argmin(rels))

    dev = max(_max_dev(h.evaluate_frame(0.0), c0), _max_dev(h.evaluate_frame(1.0), c1))
    rot_const = rot0 is not None and all(r == rot0 for r in rots)
    max_area = max(areas) if areas else (None if span is None else 0.0)
    checks = {
        "endpoints": dev <= 1e-6,
        "regularity": rels[k] >= cfg.eps_speed,
        "rotation number constant": rot_const,
        "tangent continuity": max_step <= np.pi / 2,
    }
    if expect_zero_area:
        checks["zero area"] = span is not None and max_area <= cfg.eps_area
    return CertificationReport(
        min_rel_speed=float(rels[k]),
        worst_t=float(all_t[k]),
        worst_s=float(where[k]),
        endpoint_deviation=dev,
        rot_expected=rot0,
        rots=rots,
        rot_constant=rot_const,
        max_area=max_area,
        max_angle_step=max_step,
        frames=len(all_t),
        grid_points=s.size,
        checks=checks,
    )


def certify(h, cfg=DEFAULT, expect_zero_area=False, what="homotopy"):
    report = verify(h, h.start, h.end, expect_zero_area, cfg)
    if not report.passed:
        failed = [k for k, ok in report.checks.items() if not ok]
        raise CertificationFailure(f"{what} failed certification: {', '.join(failed)}", report)
    return report


def _jitter(curve, rng, magnitude, harmonics=4):
    s = curve.params
    extent = np.ptp(curve.samples, axis=0).max()
    out = np.zeros_like(curve.samples)
    for col in range(2):
        for k in range(1, harmonics + 1):
            a, b = rng.normal(size=2) / k
            out[:, col] += a * np.cos(k * s) + b * np.sin(k * s)
    out *= magnitude * extent / max(np.abs(out).max(), 1e-300)
    return out


def interpolate_area_projected(c0, c1, keep_area_zero=True, cfg=DEFAULT, max_splits=None, exclude=(), note="interpolate"):
    """Straight-line homotopy, area-corrected per frame, certified.

    On failure, a jittered (and re-corrected) midpoint keyframe is inserted and
    both halves are retried, up to ``max_splits`` insertions in total
    (default ``cfg.retry_budget``). The first failure is reported if the
    budget runs out.
    """
    if c1.n != c0.n:
        c1 = resample(c1, c0.n)
    if keep_area_zero:
        for c in (c0, c1):
            a = signed_area(c)
            if abs(a) > cfg.eps_area:
                raise NonZeroAreaError(a)
    if np.array_equal(c0.samples, c1.samples):
        return constant_homotopy(c0, note)
    budget = [cfg.retry_budget if max_splits is None else max_splits]
    rng = np.random.default_rng([cfg.rng_seed, 7919])
    first = []

    def attempt(a, b, t0, t1):
        h = RegularHomotopy((a, b), (Segment("straight", keep_area_zero, exclude),), (note,))
        report = verify(h, a, b, keep_area_zero, cfg)
        if report.passed:
            return h
        if not first:
            first.append((t0 + report.worst_t * (t1 - t0), report.worst_s, report.min_rel_speed))
        if budget[0] <= 0:
            raise InterpolationFailure(*first[0])
        budget[0] -= 1
        mid = a.with_samples(0.5 * (a.samples + b.samples) + _jitter(a, rng, 0.05))
        if keep_area_zero:
            mid = correct_area(mid, exclude=exclude)
        tm = 0.5 * (t0 + t1)
        return concatenate(attempt(a, mid, t0, tm), attempt(mid, b, tm, t1))

    return attempt(c0, c1, 0.0, 1.0)


def lift_homotopy(h, cfg=DEFAULT, frames=None, residual_tol=1e-4):
    """Legendrian lifts (z0 = 0) of the frames of a zero-area homotopy.

    Returns ``[(t, LegendrianCurve), ...]``. Every frame must close up, satisfy
    the Legendrian residual bound, and share one contact-frame rotation number.
    """
    from .legendrian import legendrian_residual, legendrian_rotation, lift

    per_seg = cfg.frame_count if frames is None else frames
    out = []
    rot = None
    for t in h.t_grid(per_seg):
        f = h.evaluate_frame(t)
        a = signed_area(f)
        if abs(a) > cfg.eps_area:
            raise NonZeroAreaError(a, t)
        g = lift(f, 0.0, cfg)
        res = legendrian_residual(g)
        if res > residual_tol:
            raise CertificationFailure(f"Legendrian residual {res:.3g} at t={t:.6g}")
        r = legendrian_rotation(g, cfg)
        if rot is None:
            rot = r
        elif r != rot:
            raise CertificationFailure(f"Legendrian rotation jumps {rot} -> {r} at t={t:.6g}")
        out.append((float(t), g))
    return out


def zero_area_part(h):
    """Sub-homotopy made of the segments from the first to the last area-preserving one."""
    span = h.zero_area_span()
    if span is None:
        return None
    m = h.n_segments
    i0, i1 = round(span[0] * m), round(span[1] * m)
    return RegularHomotopy(h.keyframes[i0 : i1 + 1], h.segments[i0:i1], h.trace)


def is_constant(h):
    return h.n_segments == 0


__all__ = [
    "Segment",
    "RegularHomotopy",
    "CertificationReport",
    "PlanarClosedCurve",
    "evaluate_frame",
    "constant_homotopy",
    "concatenate",
    "concatenate_all",
    "reverse",
    "verify",
    "certify",
    "interpolate_area_projected",
    "lift_homotopy",
    "zero_area_part",
]
