"""Legendrian lifts for the contact form dz + x dy, their projections, and front cusps.

A curve (x, y, z) is Legendrian when z' + x y' = 0. Its front is (y, z), its
Lagrangian projection (x, y). Cusps of the front sit over the zeros of y'.
"""

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np
from scipy.optimize import brentq, minimize_scalar

from .config import DEFAULT
from .curves import (
    TAU,
    PlanarClosedCurve,
    check_regular,
    param_grid,
    periodic_spline,
    signed_area,
    tangent_winding,
    xdy_intervals,
)
from .errors import CurveError, GenericityError, InconsistentWordError, NonZeroAreaError

LEFT, RIGHT = "L", "R"
UP, DOWN = "Up", "Down"


@dataclass(frozen=True, eq=False)
class LegendrianCurve:
    samples: np.ndarray
    name: str | None = None

    def __post_init__(self):
        arr = np.array(self.samples, dtype=float)
        if arr.ndim != 2 or arr.shape[1] != 3 or arr.shape[0] < 32:
            raise CurveError(f"Legendrian samples must have shape (N>=32, 3), got {arr.shape}")
        if not np.all(np.isfinite(arr)):
            raise CurveError("samples must be finite")
        arr.setflags(write=False)
        object.__setattr__(self, "samples", arr)

    @property
    def n(self):
        return self.samples.shape[0]

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


def lift(curve, z0=0.0, cfg=DEFAULT):
    """Legendrian lift with z(s) = z0 - integral_0^s x y' ds.

    The integral is exact for the spline interpolant, so the closing gap of z
    equals minus the signed area.
    """
    area = signed_area(curve)
    if abs(area) > cfg.eps_area:
        raise NonZeroAreaError(area)
    pieces = xdy_intervals(curve)
    z = z0 - np.concatenate([[0.0], np.cumsum(pieces[:-1])])
    gap = -pieces.sum()
    if abs(gap) > cfg.eps_area:
        raise NonZeroAreaError(-gap)
    return LegendrianCurve(np.column_stack([curve.samples, z]), curve.name)


def legendrian_residual(gamma, relative=True):
    """max |z' + x y'| at the samples and interval midpoints."""
    s = param_grid(2 * gamma.n)
    p = gamma(s)
    d = gamma.derivative(s)
    r = np.abs(d[:, 2] + p[:, 0] * d[:, 1]).max()
    if relative:
        r /= np.hypot(d[:, 0], d[:, 1]).max()
    return float(r)


def closure_gap(gamma):
    """z(2 pi) - z(0) implied by the Legendrian condition."""
    return -signed_area(lagrangian_projection(gamma))


def check_legendrian(gamma, cfg=DEFAULT, residual_tol=1e-6):
    res = legendrian_residual(gamma)
    if res > residual_tol:
        raise CurveError(f"Legendrian residual {res:.3g} exceeds {residual_tol:g}")
    gap = closure_gap(gamma)
    if abs(gap) > cfg.eps_area:
        raise NonZeroAreaError(-gap)
    check_regular(lagrangian_projection(gamma), cfg)


def lagrangian_projection(gamma):
    return PlanarClosedCurve(gamma.samples[:, :2], gamma.name)


def legendrian_rotation(gamma, cfg=DEFAULT):
    """Winding of the velocity in the contact frame e1 = d/dx, e2 = d/dy - x d/dz.

    For a Legendrian velocity (x', y', -x y') the frame coordinates are
    exactly (x', y').
    """
    d = gamma.derivative(param_grid(gamma.n * cfg.grid_refine))
    # d = a e1 + b e2 + r d/dz with a = x', b = y' and r the Legendrian residual
    w, _ = tangent_winding(d[:, 0], d[:, 1])
    k = round(w)
    if abs(w - k) > 0.01:
        raise CurveError("contact-frame winding is not resolved")
    return int(k)


@dataclass(frozen=True)
class Cusp:
    s: float
    side: str
    orientation: str
    x_prime_sign: int

    @property
    def letter(self):
        return "+" if self.orientation == UP else "-"


def classify(side, x_prime):
    """Left cusps with x' > 0 and right cusps with x' < 0 are Down, the rest Up.

    These are exactly the cusps where the velocity passes through +e1 (Down,
    left) or -e1 (Down, right), which keeps the labels consistent with the
    contact-frame winding.
    """
    down = (side == LEFT and x_prime > 0) or (side == RIGHT and x_prime < 0)
    return DOWN if down else UP


def _forward_fill_sign(v):
    sg = np.sign(v)
    nz = np.flatnonzero(sg)
    if nz.size == 0:
        return sg
    # cyclic forward fill of zero entries
    idx = np.arange(sg.size)
    last = np.maximum.accumulate(np.where(sg != 0, idx, -1))
    first_fill = sg[nz[-1]]
    out = np.where(last >= 0, sg[np.maximum(last, 0)], first_fill)
    return out


def find_cusps(curve, cfg=DEFAULT):
    """Zeros of y' on a planar curve, classified as front cusps of its lift.

    Raises ``GenericityError`` for degenerate zeros (|y''| small), zeros with
    x' ~ 0, or near-tangencies of y' to zero without a sign change.
    """
    s = param_grid(curve.n * cfg.grid_refine)
    d = curve.derivative(s)
    scale = np.hypot(d[:, 0], d[:, 1]).max()
    tol = cfg.eps_zero * scale
    yd = d[:, 1]
    sg = _forward_fill_sign(yd)
    nxt = np.roll(sg, -1)
    m = s.size
    h = TAU / m
    fy = lambda t: float(curve.derivative(t)[1])  # noqa: E731
    cusps = []
    for i in np.flatnonzero(sg != nxt):
        a, b = s[i], s[i] + h
        fa, fb = yd[i], yd[(i + 1) % m]
        if fb == 0.0:
            root = b
        elif fa == 0.0:
            root = a
        else:
            root = brentq(fy, a, b, xtol=1e-13, rtol=4 * np.finfo(float).eps)
        d1 = curve.derivative(root)
        d2 = curve.derivative(root, 2)
        if abs(d2[1]) < tol:
            raise GenericityError(f"degenerate zero of y' at s={root:.6g} (|y''|={abs(d2[1]):.3g})")
        if abs(d1[0]) < tol:
            raise GenericityError(f"x' vanishes at the cusp s={root:.6g}; perturb the curve first")
        side = LEFT if sg[i] < 0 else RIGHT
        cusps.append(Cusp(float(np.mod(root, TAU)), side, classify(side, d1[0]), int(np.sign(d1[0]))))
    _check_tangencies(curve, s, yd, sg, tol, scale)
    cusps.sort(key=lambda c: c.s)
    for c0, c1 in zip(cusps, cusps[1:] + cusps[:1]):
        if len(cusps) > 1 and c0.side == c1.side:
            raise GenericityError("cusp sides do not alternate; unresolved zeros of y'")
    return cusps


def _check_tangencies(curve, s, yd, sg, tol, scale):
    a = np.abs(yd)
    cand = np.flatnonzero((a <= np.roll(a, 1)) & (a <= np.roll(a, -1)) & (a < 1e-2 * scale))
    h = s[1] - s[0]
    for i in cand:
        if sg[i - 1] != sg[i] or sg[i] != sg[(i + 1) % s.size]:
            continue
        sign = sg[i]
        res = minimize_scalar(
            lambda t: sign * float(curve.derivative(t)[1]),
            bounds=(s[i] - h, s[i] + h),
            method="bounded",
            options={"xatol": 1e-12},
        )
        if res.fun <= tol:
            raise GenericityError(f"y' touches zero without changing sign near s={res.x:.6g}")


def detect_cusps(gamma, cfg=DEFAULT):
    return find_cusps(lagrangian_projection(gamma), cfg)


def is_generic(curve, cfg=DEFAULT):
    try:
        find_cusps(curve, cfg)
    except GenericityError:
        return False
    return True


@dataclass(frozen=True)
class Tally:
    lam_plus: int
    lam_minus: int
    rho_plus: int
    rho_minus: int

    @property
    def c_plus(self):
        return self.lam_plus + self.rho_plus

    @property
    def c_minus(self):
        return self.lam_minus + self.rho_minus


@dataclass(frozen=True)
class CuspWord:
    """Cyclic sequence of cusp labels in traversal order, with their sides.

    ``letters`` are '+' (Up) or '-' (Down). If ``sides`` is omitted the first
    letter belongs to a right cusp and sides alternate.
    """

    letters: tuple
    sides: tuple = field(default=None)

    def __post_init__(self):
        letters = tuple(self.letters)
        if any(c not in "+-" for c in letters):
            raise InconsistentWordError(f"letters must be '+' or '-': {letters}")
        if len(letters) < 2 or len(letters) % 2:
            raise InconsistentWordError(f"word length must be even and >= 2, got {len(letters)}")
        sides = self.sides
        if sides is None:
            sides = tuple(RIGHT if i % 2 == 0 else LEFT for i in range(len(letters)))
        sides = tuple(sides)
        if len(sides) != len(letters):
            raise InconsistentWordError("sides and letters differ in length")
        if any(a == b for a, b in zip(sides, sides[1:] + sides[:1])):
            raise InconsistentWordError("left and right cusps must alternate")
        object.__setattr__(self, "letters", letters)
        object.__setattr__(self, "sides", sides)

    @classmethod
    def parse(cls, text):
        """Accepts '-++-', '(-,+,+,-)' or '- + + -'."""
        letters = tuple(c for c in text if c in "+-")
        return cls(letters)

    @classmethod
    def from_cusps(cls, cusps):
        return cls(tuple(c.letter for c in cusps), tuple(c.side for c in cusps))

    def __len__(self):
        return len(self.letters)

    def __str__(self):
        return "(" + ",".join(self.letters) + ")"

    @property
    def tally(self):
        count = {(sd, lt): 0 for sd in (LEFT, RIGHT) for lt in "+-"}
        for sd, lt in zip(self.sides, self.letters):
            count[sd, lt] += 1
        return Tally(count[LEFT, "+"], count[LEFT, "-"], count[RIGHT, "+"], count[RIGHT, "-"])

    @property
    def invariant(self):
        """(c_- - c_+) / 2 as an exact fraction-free value (assumes even difference)."""
        t = self.tally
        return (t.c_minus - t.c_plus) / 2

    def rotated(self, k):
        k %= len(self)
        return CuspWord(self.letters[k:] + self.letters[:k], self.sides[k:] + self.sides[:k])

    def cyclic_shift_to(self, other):
        """Smallest k with ``self.rotated(k) == other``, or None."""
        if len(self) != len(other):
            return None
        for k in range(len(self)):
            r = self.rotated(k)
            if r.letters == other.letters and r.sides == other.sides:
                return k
        return None

    def starting_at_right(self):
        return self if self.sides[0] == RIGHT else self.rotated(1)


def rot_formulas(word, tally=None):
    t = word.tally if tally is None else tally
    return (t.lam_minus - t.rho_plus, t.rho_minus - t.lam_plus, (t.c_minus - t.c_plus) / 2)


def rot_from_cusps(word, tally=None):
    """Rotation number from cusp counts; the three formulas must agree.

    ``tally`` may be passed to check an externally recorded count against the
    word; any disagreement means the data is corrupt.
    """
    if not isinstance(word, CuspWord):
        word = CuspWord.from_cusps(word)
    if tally is not None and tally != word.tally:
        raise InconsistentWordError(f"tally {tally} does not match word {word}")
    a, b, c = rot_formulas(word, tally)
    if not (a == b == c):
        raise InconsistentWordError(f"rotation formulas disagree: {a}, {b}, {c}")
    return int(a)


def crossing_count(cusps):
    """Signed count of y' sign changes with x' > 0 (- to + counts +1, + to - counts -1)."""
    n = 0
    for c in cusps:
        if c.x_prime_sign > 0:
            n += 1 if c.side == LEFT else -1
    return n


def cusp_word(curve, cfg=DEFAULT):
    return CuspWord.from_cusps(find_cusps(curve, cfg))


@dataclass(frozen=True, eq=False)
class FrontPolyline:
    points: np.ndarray
    cusps: list
    slope: np.ndarray


def front_projection(gamma, cfg=DEFAULT):
    """Front (y, z) with its cusps; slope carries -x (finite everywhere)."""
    pts = gamma.samples[:, 1:3].copy()
    return FrontPolyline(pts, detect_cusps(gamma, cfg), -gamma.samples[:, 0].copy())


@dataclass(frozen=True, eq=False)
class CuspModelArc:
    s: np.ndarray
    points: np.ndarray
    side: str
    orientation: str


# contact-form preserving linear symmetries taking the (Down, Left) model to the others
_MODEL_SYMMETRY = {
    (DOWN, LEFT): (1.0, 1.0, 1.0),
    (DOWN, RIGHT): (-1.0, -1.0, 1.0),
    (UP, RIGHT): (1.0, -1.0, -1.0),
    (UP, LEFT): (-1.0, 1.0, -1.0),
}


def cusp_model_curve(orientation, side, n=201):
    """The semicubical model (s, s^2/2, -s^3/3) on [-1, 1], moved by a symmetry of dz + x dy."""
    s = np.linspace(-1.0, 1.0, n)
    base = np.column_stack([s, s**2 / 2, -(s**3) / 3])
    return CuspModelArc(s, base * np.array(_MODEL_SYMMETRY[orientation, side]), side, orientation)


def model_residual(arc):
    """|z' + x y'| of a model arc evaluated from its closed form derivatives."""
    sx, sy, sz = _MODEL_SYMMETRY[arc.orientation, arc.side]
    s = arc.s
    x = sx * s
    dy = sy * s
    dz = -sz * s**2
    return float(np.abs(dz + x * dy).max())
