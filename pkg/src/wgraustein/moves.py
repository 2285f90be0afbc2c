"""Cusp-word calculus and the geometric moves that realize it on plane curves.

All geometric moves act on zero-area curves and return ``(curve, homotopy)``
with a certified homotopy. The central observation used throughout: the speed
of (x, y) can only vanish where y' = 0, so

* edits of x that leave x' alone at the cusps (zeros of y') are regular;
* edits of y are regular on arcs where x' has no zero, and on cusp-free arcs
  when they keep y monotone.

Area is restored per frame by moving x along ``phi * y'`` with
``phi = (y'/max|y'|)^2``, which leaves x' untouched at the cusps.
"""

from dataclasses import dataclass, field

import numpy as np

from .config import DEFAULT
from .curves import (
    TAU,
    CircleDiffeo,
    area_slope,
    check_regular,
    correct_area,
    from_function,
    mirror_y,
    param_grid,
    pump_direction,
    relative_min_speed,
    rotation_number,
    signed_area,
    smoothstep,
)
from .errors import (
    CertificationFailure,
    GenericityError,
    IncompatibleLabels,
    NonZeroAreaError,
    NormalizationFailure,
    NotCancellable,
    PreconditionError,
    RegularityError,
    WindowObstruction,
    WordMismatch,
)
from .homotopy import (
    RegularHomotopy,
    Segment,
    certify,
    concatenate_all,
    constant_homotopy,
)
from .legendrian import LEFT, RIGHT, CuspWord, classify, cusp_word, find_cusps, is_generic

# ---------------------------------------------------------------------------
# word calculus


@dataclass(frozen=True)
class ReductionStep:
    positions: tuple
    labels: tuple
    word_after: str


@dataclass(frozen=True)
class ReductionTrace:
    steps: tuple = field(default=())
    canonicalized: bool = False

    def __len__(self):
        return len(self.steps)


def reduce_word(word):
    """Cancel adjacent mixed pairs, leftmost first, never below length 2.

    The result is all '+', all '-', or the canonical mixed word ``(+,-)``.
    """
    if not isinstance(word, CuspWord):
        word = CuspWord.parse(word) if isinstance(word, str) else CuspWord(tuple(word))
    letters = list(word.letters)
    sides = list(word.sides)
    steps = []
    while len(letters) > 2:
        n = len(letters)
        i = next((k for k in range(n) if letters[k] != letters[(k + 1) % n]), None)
        if i is None:
            break
        j = (i + 1) % n
        pair = (letters[i], letters[j])
        keep = [k for k in range(n) if k not in (i, j)]
        letters = [letters[k] for k in keep]
        sides = [sides[k] for k in keep]
        steps.append(ReductionStep((i, j), pair, "(" + ",".join(letters) + ")"))
    canon = False
    if len(letters) == 2 and letters[0] != letters[1]:
        canon = tuple(letters) != ("+", "-")
        letters, sides = ["+", "-"], [RIGHT, LEFT]
    return CuspWord(tuple(letters), tuple(sides)), ReductionTrace(tuple(steps), canon)


def is_normal_form(word):
    return len(set(word.letters)) == 1 or len(word) == 2


def mixed_pairs(word):
    """Cyclically adjacent index pairs with opposite labels, leftmost first."""
    n = len(word)
    if n <= 2:
        return []
    return [(k, (k + 1) % n) for k in range(n) if word.letters[k] != word.letters[(k + 1) % n]]


def delete_pair(word, i, j):
    keep = [k for k in range(len(word)) if k not in (i, j)]
    return CuspWord(tuple(word.letters[k] for k in keep), tuple(word.sides[k] for k in keep))


def cyclic_equal(w1, w2):
    return w1.cyclic_shift_to(w2) is not None


# ---------------------------------------------------------------------------
# profile helpers on [0, 1]


def _int_smoothstep(u):
    u = np.clip(u, 0.0, 1.0)
    return u**6 - 3.0 * u**5 + 2.5 * u**4


def _bump(u):
    """1 - cos(2 pi u): nonnegative, vanishing with its derivative at 0 and 1, mean 1."""
    return 1.0 - np.cos(TAU * np.clip(u, 0.0, 1.0))


def _int_bump(u):
    u = np.clip(u, 0.0, 1.0)
    return u - np.sin(TAU * u) / TAU


def _int_tau_edge(u):
    """Primitive of tau (1 - smoothstep(tau)) from 0, constant beyond 1 (total 1/7)."""
    u = np.clip(u, 0.0, 1.0)
    return u**2 / 2 - 2.0 * u**5 + 2.5 * u**6 - (6.0 / 7.0) * u**7


def _edge_len(m, k, limit):
    """Longest edge (up to ``limit``) on which m + k u keeps at least half of m."""
    return limit if k * m >= 0 else min(limit, 0.5 * abs(m) / abs(k))


@dataclass(frozen=True)
class _Blend:
    """Derivative profile on an interval of length L.

    (m0 + k0 u) E(u / e0) + (m1 - k1 v) E(v / e1) + c W, with u, v the distances
    to the two ends, E = 1 - smoothstep and W = 1 - E(u / e0) - E(v / e1). The
    three weights sum to one, so the profile never leaves the sign shared by
    m0, m1 and c. Value, slope and curvature match the outside at both ends,
    so the splice is C^2.
    """

    L: float
    m0: float
    k0: float
    m1: float
    k1: float
    c: float = 0.0
    edge: float = 0.2

    @property
    def e0(self):
        return _edge_len(self.m0, self.k0, self.edge * self.L)

    @property
    def e1(self):
        return _edge_len(self.m1, -self.k1, self.edge * self.L)

    @property
    def edge_total(self):
        return self.m0 * self.e0 / 2 + self.k0 * self.e0**2 / 7 + self.m1 * self.e1 / 2 - self.k1 * self.e1**2 / 7

    def primitive(self, tau):
        u = np.asarray(tau, dtype=float) * self.L
        v = self.L - u
        e0, e1 = self.e0, self.e1
        f0 = self.m0 * e0 * (np.clip(u / e0, 0, 1) - _int_smoothstep(u / e0)) + self.k0 * e0**2 * _int_tau_edge(u / e0)
        tail = self.m1 * e1 * (np.clip(v / e1, 0, 1) - _int_smoothstep(v / e1)) - self.k1 * e1**2 * _int_tau_edge(v / e1)
        e1_total = self.m1 * e1 / 2 - self.k1 * e1**2 / 7
        plateau = u - e0 * (np.clip(u / e0, 0, 1) - _int_smoothstep(u / e0)) - e1 / 2 + e1 * (np.clip(v / e1, 0, 1) - _int_smoothstep(v / e1))
        return f0 + e1_total - tail + self.c * plateau

    def with_total(self, total):
        """Same edges, plateau value chosen so the primitive over the interval equals ``total``."""
        span = self.L - self.e0 / 2 - self.e1 / 2
        return _Blend(self.L, self.m0, self.k0, self.m1, self.k1, (total - self.edge_total) / span, self.edge)


def _arc(s, start, length):
    """Position ``tau`` of parameters on the arc [start, start + length] and the mask."""
    u = np.mod(np.asarray(s, dtype=float) - start, TAU)
    inside = u <= length
    return u / length, inside


def _fwd(a, b):
    """Length of the positively oriented arc from a to b."""
    d = np.mod(b - a, TAU)
    return d if d > 0 else TAU


def _step_profile(s, start, length):
    """0 before the arc, 0 -> 1 across it (integrated bump), 1 after it (until 2 pi)."""
    u = np.mod(np.asarray(s, dtype=float) - start, TAU)
    return np.where(u <= length, _int_bump(u / length), 1.0)


def _sub_arc(a, b, lo, hi):
    length = _fwd(a, b)
    return a + lo * length, (hi - lo) * length


def _zero_area_guard(curve, cfg):
    a = signed_area(curve)
    if abs(a) > cfg.eps_area:
        raise NonZeroAreaError(a)


def _straight(c0, c1, cfg, *, kind="straight", keep_area_zero=True, exclude=(), note=""):
    h = RegularHomotopy((c0, c1), (Segment(kind, keep_area_zero, tuple(exclude), note=note),), (note,))
    certify(h, cfg, keep_area_zero, what=note or kind)
    return h


# ---------------------------------------------------------------------------
# area normalization and genericity


def _random_trig(rng, s, harmonics):
    out = np.zeros_like(s)
    for k in range(1, harmonics + 1):
        a, b = rng.normal(size=2) / k
        out += a * np.cos(k * s) + b * np.sin(k * s)
    return out / max(np.abs(out).max(), 1e-300)


def _pump_candidates(curve, cfg):
    """Pumping directions tried in order: phi = 1, phi = (y'/max|y'|)^2, then re-seeded variants."""
    yd = curve.derivative(curve.params)[:, 1]
    yield "phi=1", yd
    base = pump_direction(curve)
    yield "phi=(y'/max)^2", base
    rng = np.random.default_rng([cfg.rng_seed, 101])
    for k in range(max(cfg.retry_budget - 2, 0)):
        r = _random_trig(rng, curve.params, 3)
        yield f"phi=(y'/max)^2*(1+r{k}/2)", base * (1.0 + 0.5 * r)


def normalize_area(curve, cfg=DEFAULT):
    """Regular homotopy to a zero-area curve along x_u = x - u w, w = phi y'.

    The area is affine in u with slope -closed_integral(phi y'^2), so the
    stopping value is a linear solve; the path is certified and other weights
    are tried if it fails.
    """
    check_regular(curve, cfg)
    area = signed_area(curve)
    if abs(area) <= cfg.eps_area:
        return curve, constant_homotopy(curve, "normalize_area: already zero")
    failures = []
    for label, w in _pump_candidates(curve, cfg):
        slope = area_slope(curve, w)
        if slope == 0:
            continue
        u = area / slope
        target = correct_area(curve.with_samples(np.column_stack([curve.x - u * w, curve.y])), direction=w)
        note = f"normalize_area({label}, u={u:.6g})"
        h = RegularHomotopy((curve, target), (Segment("straight", False, note=note),), (note,))
        try:
            certify(h, cfg, False, what=note)
        except CertificationFailure as e:
            failures.append(f"{label}: {e}")
            continue
        return target, h
    raise NormalizationFailure("no pumping direction certified: " + "; ".join(failures))


def perturb_generic(curve, magnitude=0.02, cfg=DEFAULT):
    """Make the zeros of y' simple with x' != 0 there, by a small seeded trigonometric perturbation.

    ``magnitude`` is relative to the curve's extent. Zero-area input stays at
    zero area along the whole homotopy.
    """
    check_regular(curve, cfg)
    if is_generic(curve, cfg):
        return curve, constant_homotopy(curve, "perturb_generic: already generic")
    if magnitude <= 0:
        raise GenericityError("curve is not generic and the perturbation magnitude is zero")
    zero = abs(signed_area(curve)) <= cfg.eps_area
    extent = np.ptp(curve.samples, axis=0).max()
    rng = np.random.default_rng([cfg.rng_seed, 202])
    s = curve.params
    for k in range(max(cfg.retry_budget, 1)):
        p = np.column_stack([_random_trig(rng, s, 8), _random_trig(rng, s, 8)])
        cand = curve.with_samples(curve.samples + magnitude * extent * p)
        if zero:
            cand = correct_area(cand)
        if not is_generic(cand, cfg):
            continue
        note = f"perturb_generic(trial {k})"
        try:
            h = _straight(curve, cand, cfg, keep_area_zero=zero, note=note)
        except (CertificationFailure, RegularityError):
            continue
        return cand, h
    raise GenericityError(f"no generic perturbation found in {cfg.retry_budget} trials")


# ---------------------------------------------------------------------------
# standard models

STD_MIN_REL_SPEED = 0.02
_STD_CACHE = {}
STANDARD_REPLACEMENTS = {}


def _two_harmonic(n, alpha, n_samples):
    """(cos ns / n + alpha cos s, sin ns / n + delta sin s), delta = -1/(n alpha).

    The area is pi/n + alpha delta pi, which vanishes for this delta.
    """
    delta = -1.0 / (n * alpha)
    return from_function(
        lambda s: (np.cos(n * s) / n + alpha * np.cos(s), np.sin(n * s) / n + delta * np.sin(s)),
        n_samples,
        f"std({n})",
    )


def _std_minus_one(n_samples):
    return from_function(lambda s: (np.cos(s) + 4 * np.cos(2 * s), np.sin(s) - np.sin(2 * s) / 8), n_samples, "std(-1)")


def _std_zero(n_samples):
    return from_function(lambda s: (-0.25 * np.sin(2 * s), np.sin(s)), n_samples, "std(0)")


def expected_standard_word(n):
    if n == 0:
        return CuspWord(("+", "-"))
    return CuspWord(("-" if n > 0 else "+",) * (2 * abs(n)))


def validate_standard(curve, n, cfg=DEFAULT):
    """Oracle checks for a standard model: area, rotation number, word, margin of regularity."""
    problems = []
    if abs(signed_area(curve)) > cfg.eps_area:
        problems.append(f"area {signed_area(curve):.3g}")
    rel = relative_min_speed(curve, cfg)
    if rel < STD_MIN_REL_SPEED:
        problems.append(f"relative speed {rel:.3g}")
        return problems
    if rotation_number(curve, cfg) != n:
        problems.append(f"rot {rotation_number(curve, cfg)}")
    try:
        w = cusp_word(curve, cfg)
    except GenericityError as e:
        problems.append(str(e))
        return problems
    if not cyclic_equal(w, expected_standard_word(n)):
        problems.append(f"word {w}")
    return problems


def _positive_standard(n, n_samples, cfg):
    c = _two_harmonic(n, 1.0, n_samples)
    if not validate_standard(c, n, cfg):
        return c
    # nearest validating alpha on a 0.01 grid around the frozen value 1
    for k in range(1, 100):
        for alpha in (1.0 - 0.01 * k, 1.0 + 0.01 * k):
            if alpha <= 0:
                continue
            c = _two_harmonic(n, alpha, n_samples)
            if not validate_standard(c, n, cfg):
                STANDARD_REPLACEMENTS[n] = (alpha, -1.0 / (n * alpha))
                return c
    raise RuntimeError(f"no validating two-harmonic constants for std({n})")


def standard_curve(n, n_samples=None, cfg=DEFAULT):
    """Zero-area generic model with rotation number ``n`` and a one-sign cusp word.

    Std(0) = (-sin 2s / 4, sin s); Std(n), n >= 2, from the two-harmonic family
    with alpha = 1 unless validation forces a replacement; Std(-1) =
    (cos s + 4 cos 2s, sin s - sin 2s / 8); Std(1) and Std(-n) are mirror
    images. The sampled curve is area-corrected to machine precision.
    """
    n_samples = cfg.n_samples if n_samples is None else n_samples
    key = (n, n_samples)
    if key in _STD_CACHE:
        return _STD_CACHE[key]
    if n == 0:
        c = _std_zero(n_samples)
    elif n == -1:
        c = _std_minus_one(n_samples)
    elif n == 1:
        c = mirror_y(standard_curve(-1, n_samples, cfg))
    elif n >= 2:
        c = _positive_standard(n, n_samples, cfg)
    else:
        c = mirror_y(standard_curve(-n, n_samples, cfg))
    c = correct_area(c).with_samples(correct_area(c).samples, name=f"std({n})")
    _STD_CACHE[key] = c
    return c


# ---------------------------------------------------------------------------
# cusp surgeries


@dataclass(frozen=True)
class SurgeryWindow:
    start: float
    length: float
    sign: int
    ramp: float
    slope_start: float
    slope_end: float
    curv_start: float = 0.0
    curv_end: float = 0.0

    def blend(self):
        return _Blend(self.length, self.slope_start, self.curv_start, self.slope_end, self.curv_end, 0.0, EDGE)

    @property
    def end(self):
        return self.start + self.length

    @property
    def exclude(self):
        return ((self.start, self.end, self.ramp),)


def _cusp_context(cusps, i):
    n = len(cusps)
    j = (i + 1) % n
    k = (i - 1) % n
    l = (j + 1) % n
    return k, j, l


def _x_sign_clear(curve, a, length, sign, cfg, m=2000):
    ss = a + np.linspace(0.0, length, m)
    xd = curve.derivative(ss)[:, 0]
    scale = np.hypot(*curve.derivative(param_grid(curve.n * cfg.grid_refine)).T).max()
    return bool(np.all(sign * xd > 1e-3 * scale)), ss, sign * xd


def _straighten_x(curve, cusps, i, cfg):
    """Remove the zeros of x' between cusp i and cusp i+1.

    x is replaced on an inner sub-arc by a primitive of a positive blend of the
    boundary slopes; the net displacement is returned in two bump-shaped
    corrections on the neighbouring arcs. Every change sits where y' != 0.
    """
    k, j, l = _cusp_context(cusps, i)
    sa, sb = cusps[i].s, cusps[j].s
    core = _fwd(sa, sb)
    sign = cusps[i].x_prime_sign
    ok, ss, vals = _x_sign_clear(curve, sa, core, sign, cfg)
    if ok:
        return curve, None
    first_bad = np.argmax(vals < 0.5 * vals[0])
    last_bad = len(vals) - 1 - np.argmax(vals[::-1] < 0.5 * vals[-1])
    ea = min(ss[first_bad] - sa, 0.1 * core)
    eb = min(sa + core - ss[last_bad], 0.1 * core)
    ea, eb = max(ea, 1e-3 * core), max(eb, 1e-3 * core)
    p, q = sa + ea, sa + core - eb
    length = q - p
    (mp, _), (mq, _) = curve.derivative(p), curve.derivative(q)
    kp, kq = curve.derivative(p, 2)[0], curve.derivative(q, 2)[0]
    kappa = max(abs(mp), abs(mq))
    xp, xq = curve(p)[0], curve(q)[0]
    blend = _Blend(length, mp, kp, mq, kq, sign * kappa)
    G = blend.primitive

    D = G(1.0) - (xq - xp)
    # F along the turn from a1: -D/2 ramp on arc (k, i), replacement on [p, q],
    # +D/2 ramp back to 0 on arc (j, l)
    a1, l1 = _sub_arc(cusps[k].s, sa, 0.3, 0.7)
    a2, l2 = _sub_arc(sb, cusps[l].s, 0.3, 0.7)
    P = _fwd(a1, p)
    Q = P + length
    A2 = _fwd(a1, a2)
    u = np.mod(curve.params - a1, TAU)
    F = np.zeros(curve.n)
    F = np.where(u <= l1, -0.5 * D * _int_bump(u / l1), F)
    F = np.where((u > l1) & (u < P), -0.5 * D, F)
    tau = (u - P) / length
    mid = (u >= P) & (u <= Q)
    F = np.where(mid, -0.5 * D + xp + G(np.clip(tau, 0, 1)) - curve.x, F)
    F = np.where((u > Q) & (u < A2), 0.5 * D, F)
    back = (u >= A2) & (u <= A2 + l2)
    F = np.where(back, 0.5 * D * (1.0 - _int_bump((u - A2) / l2)), F)
    ramp = 0.25 * min(_fwd(cusps[k].s, sa), _fwd(sb, cusps[l].s))
    exclude = ((sa, sa + core, ramp),)
    target = correct_area(curve.with_samples(np.column_stack([curve.x + F, curve.y])), exclude=exclude)
    ok, _, _ = _x_sign_clear(target, sa, core, sign, cfg)
    if not ok:
        raise WindowObstruction("could not clear the zeros of x' between the cusps")
    h = _straight(curve, target, cfg, exclude=exclude, note=f"straighten x' on ({sa:.4g}, {sb:.4g})")
    return target, h


def _window(curve, cusps, i, margin=0.15):
    k, j, l = _cusp_context(cusps, i)
    sa, sb, sk, sl = cusps[i].s, cusps[j].s, cusps[k].s, cusps[l].s
    # stay a few samples clear of the neighbouring cusps so the splice is resolved
    floor = 8 * TAU / curve.n
    arc_a, arc_b = _fwd(sk, sa), _fwd(sb, sl)
    gap_a = max(margin * arc_a, min(floor, 0.5 * arc_a))
    gap_b = max(margin * arc_b, min(floor, 0.5 * arc_b))
    a = sa - (arc_a - gap_a)
    b = sb + (arc_b - gap_b)
    length = _fwd(a, b)
    sign = 1 if cusps[i].side == RIGHT else -1
    ramp = 0.5 * min(gap_a, gap_b)
    ms, me = curve.derivative(a)[1], curve.derivative(b)[1]
    ks, ke = curve.derivative(a, 2)[1], curve.derivative(b, 2)[1]
    return SurgeryWindow(float(np.mod(a, TAU)), float(length), sign, float(ramp), float(ms), float(me), float(ks), float(ke))


EDGE = 0.2
MARGINS = (0.15, 0.08, 0.04)


PLATEAU_FLOOR = 0.05


def _window_deficit(curve, win):
    """Height by which sign * (y(b) - y(a)) falls short of what a monotone fill needs.

    The fill's plateau slope must be at least ``PLATEAU_FLOOR`` times the
    largest |x'| on the window: x is kept, so wherever x' vanishes inside the
    window the speed is carried by the fill alone.
    """
    ya = curve(win.start)[1]
    yb = curve(win.end)[1]
    blend = win.blend()
    vmax = np.abs(curve.derivative(win.start + np.linspace(0.0, win.length, 1024))[:, 0]).max()
    span = win.length - blend.e0 / 2 - blend.e1 / 2
    need = 1.25 * win.sign * blend.edge_total + PLATEAU_FLOOR * vmax * span
    return need - win.sign * (yb - ya)


def _pick_window(curve, cusps, i):
    """Widest margin whose window needs no height change, else the smallest deficit."""
    wins = [_window(curve, cusps, i, mg) for mg in MARGINS]
    for w in wins:
        if _window_deficit(curve, w) <= 0:
            return w
    return min(wins, key=lambda w: _window_deficit(curve, w))


def _raise_heights(curve, cusps, i, win, deficit, cfg):
    """Monotone edit on two arcs that lifts (sign-wise) the window's far end."""
    k, j, l = _cusp_context(cusps, i)
    m = (l + 1) % len(cusps)
    sb = cusps[j].s
    K = 1.1 * deficit
    b = win.end
    a2, l2 = _sub_arc(sb, b, 0.1, 0.9)
    a3, l3 = _sub_arc(cusps[l].s, cusps[m].s, 0.1, 0.9)
    s = curve.params
    rise = _step_profile(s, a2, l2)
    fall = _step_profile(s, a3, l3)
    # rise applies from a2 onwards, fall from a3 onwards; both measured along the same turn
    order = _fwd(a2, a3)
    u = np.mod(s - a2, TAU)
    H = np.where(u <= order, rise, 1.0 - fall)
    H = win.sign * K * H
    target = correct_area(curve.with_samples(np.column_stack([curve.x, curve.y + H])))
    h = _straight(curve, target, cfg, note=f"raise cusp heights by {K:.4g}")
    return target, h


def _monotone_fill(curve, win):
    s = curve.params
    tau, inside = _arc(s, win.start, win.length)
    ya = curve(win.start)[1]
    yb = curve(win.end)[1]
    blend = win.blend().with_total(yb - ya)
    if win.sign * blend.c <= 0:
        raise WindowObstruction("window endpoints do not allow a monotone fill")
    return np.where(inside, ya + blend.primitive(np.clip(tau, 0, 1)), curve.y)


def cancel_cusp_pair(curve, pair, cfg=DEFAULT, allow_raise=True):
    """First Reidemeister move: remove two adjacent cusps with opposite labels.

    y is replaced on a window around the pair by a monotone fill; x is kept on
    the window so the homotopy stays regular at the birth-death moment. If x'
    vanishes between the cusps it is straightened first, and if the window
    endpoints are at the wrong heights the neighbouring arcs are stretched.
    """
    _zero_area_guard(curve, cfg)
    cusps = find_cusps(curve, cfg)
    word = CuspWord.from_cusps(cusps)
    n = len(cusps)
    i, j = pair
    if n <= 2:
        raise NotCancellable("a closed front keeps at least two cusps")
    if j != (i + 1) % n:
        if i == (j + 1) % n:
            i, j = j, i
        else:
            raise NotCancellable(f"cusps {i} and {j} are not adjacent")
    if cusps[i].letter == cusps[j].letter:
        raise NotCancellable(f"cusps {i} and {j} carry the same label {cusps[i].letter}")

    stages = []
    cur = curve
    cur2, h = _straighten_x(cur, cusps, i, cfg)
    if h is not None:
        stages.append(h)
        cur = cur2
        cusps = find_cusps(cur, cfg)
    win = _pick_window(cur, cusps, i)
    deficit = _window_deficit(cur, win)
    if deficit > 0:
        if not allow_raise:
            raise WindowObstruction(f"window endpoints short by {deficit:.3g} in height")
        cur, h = _raise_heights(cur, cusps, i, win, deficit, cfg)
        stages.append(h)
        cusps = find_cusps(cur, cfg)
        win = _pick_window(cur, cusps, i)
    ok, _, _ = _x_sign_clear(cur, cusps[i].s, _fwd(cusps[i].s, cusps[j].s), cusps[i].x_prime_sign, cfg)
    if not ok:
        raise WindowObstruction("x' vanishes between the cusps")
    y_new = _monotone_fill(cur, win)
    target = correct_area(cur.with_samples(np.column_stack([cur.x, y_new])), exclude=win.exclude)
    note = f"cancel cusps {i},{j} ({cusps[i].letter}{cusps[j].letter}) on [{win.start:.4g}, {win.end:.4g}]"
    stages.append(_straight(cur, target, cfg, kind="surgery", exclude=win.exclude, note=note))
    after = cusp_word(target, cfg)
    if not cyclic_equal(after, delete_pair(word, i, j)):
        raise CertificationFailure(f"cancellation produced word {after}, expected {delete_pair(word, i, j)}")
    return target, concatenate_all(stages)


def creation_labels(sign, x_prime_sign):
    """Labels of the two cusps created on an arc where y' has ``sign`` and x' has ``x_prime_sign``."""
    sides = (RIGHT, LEFT) if sign > 0 else (LEFT, RIGHT)
    return tuple("+" if classify(sd, x_prime_sign) == "Up" else "-" for sd in sides)


def find_creation_window(curve, labels, cfg=DEFAULT, arc=None):
    """Longest cusp-free interval whose y' and x' signs produce ``labels``."""
    cusps = find_cusps(curve, cfg)
    n = len(cusps)
    best = None
    for idx in range(n) if arc is None else [arc]:
        s0, s1 = cusps[idx].s, cusps[(idx + 1) % n].s
        length = _fwd(s0, s1)
        ss = s0 + np.linspace(0.0, length, 1001)[1:-1]
        d = curve.derivative(ss)
        ysign = int(np.sign(d[len(ss) // 2, 1]))
        for xs in (1, -1):
            if creation_labels(ysign, xs) != tuple(labels):
                continue
            good = xs * d[:, 0] > 0.05 * np.abs(d[:, 0]).max()
            # longest run of good points
            run, start, bl, bs = 0, 0, 0, 0
            for m, g in enumerate(good):
                if g:
                    if run == 0:
                        start = m
                    run += 1
                    if run > bl:
                        bl, bs = run, start
                else:
                    run = 0
            if bl > 10:
                a, b = ss[bs], ss[bs + bl - 1]
                pad = 0.2 * (b - a)
                cand = (a + pad, b - pad)
                if best is None or cand[1] - cand[0] > best[1] - best[0]:
                    best = cand
    return best


def create_cusp_pair(curve, location, labels, cfg=DEFAULT, amplitude=2.0):
    """Inverse Reidemeister move: a zigzag in y on a cusp-free interval.

    ``location = (a, b)`` with a < b (parameters, may exceed 2 pi); ``labels`` are
    the two new letters in traversal order. ``amplitude`` (> 1) scales the
    backward slope of the zigzag relative to the largest local |y'|.
    """
    _zero_area_guard(curve, cfg)
    a, b = float(location[0]), float(location[1])
    length = b - a
    if not 0 < length < TAU:
        raise PreconditionError("location must be an interval shorter than one turn")
    cusps = find_cusps(curve, cfg)
    for c in cusps:
        if np.mod(c.s - a, TAU) <= length:
            raise PreconditionError(f"location contains the cusp at s={c.s:.6g}")
    ss = a + np.linspace(0.0, length, 1001)
    d = curve.derivative(ss)
    ysign = int(np.sign(d[500, 1]))
    if np.any(ysign * d[:, 1] <= 0):
        raise PreconditionError("y' must keep its sign on the location")
    xs = int(np.sign(d[500, 0]))
    if np.any(xs * d[:, 0] <= 0):
        raise IncompatibleLabels("x' changes sign on the location")
    want = tuple(labels)
    have = creation_labels(ysign, xs)
    if want != have:
        raise IncompatibleLabels(f"x' and y' signs on the location create {have}, not {want}")

    tau, inside = _arc(curve.params, a, length)
    # h = sin^4(pi tau); h' is unimodal on each half
    tt = np.linspace(0.0, 1.0, 2001)
    hp = 4 * np.pi * np.sin(np.pi * tt) ** 3 * np.cos(np.pi * tt)
    K = amplitude * np.max(ysign * d[:, 1]) * length / hp.max()
    wiggle = np.where(inside, -ysign * K * np.sin(np.pi * tau) ** 4, 0.0)
    exclude = ((a, b, 0.25 * length),)
    target = correct_area(curve.with_samples(np.column_stack([curve.x, curve.y + wiggle])), exclude=exclude)
    note = f"create cusps {want[0]}{want[1]} on [{a:.4g}, {b:.4g}]"
    h = _straight(curve, target, cfg, kind="surgery", exclude=exclude, note=note)
    new = find_cusps(target, cfg)
    if len(new) != len(cusps) + 2:
        raise CertificationFailure(f"creation produced {len(new) - len(cusps)} new cusps instead of 2")
    return target, h


def _push_x_positive(curve, a, length, sign, cfg):
    """Make x' have ``sign`` in the middle of a cusp-free arc by an x edit with zero net displacement."""
    s = curve.params
    mx = np.abs(curve.derivative(a + np.linspace(0.0, length, 512))[:, 0]).max()
    # the central bump adds 2 K / (0.2 length) = 4 mx to x' at its peak
    K = 0.4 * mx * length
    u = np.mod(s - a, TAU)

    def step(lo):
        # 0 before lo * length, 1 after (lo + 0.2) * length, measured from the arc start
        return _int_bump((u / length - lo) / 0.2)

    F = sign * K * (step(0.4) - 0.5 * step(0.1) - 0.5 * step(0.7))
    F = np.where(u <= length, F, 0.0)
    # restore the area elsewhere, or the pump (largest where |y'| is) would undo the edit
    exclude = ((a, a + length, 0.1 * length),)
    target = correct_area(curve.with_samples(np.column_stack([curve.x + F, curve.y])), exclude=exclude)
    return target, _straight(curve, target, cfg, exclude=exclude, note="reshape x on a cusp-free arc")


def normalize_word_orientation(curve, cfg=DEFAULT):
    """Turn a (-,+) curve into a (+,-) curve: create a pair, then cancel an old-new pair.

    With A the right cusp (-) and B the left cusp (+), a pair (-,+) is created
    on the arc from A to B and the pair (B, A) is cancelled across the other
    arc, leaving the two new cusps, which read (+,-) from the right cusp.
    """
    _zero_area_guard(curve, cfg)
    cusps = find_cusps(curve, cfg)
    word = CuspWord.from_cusps(cusps).starting_at_right()
    if len(word) != 2:
        raise PreconditionError(f"expected a reduced word of length 2, got {word}")
    if word.letters == ("+", "-"):
        return curve, constant_homotopy(curve, "orientation already (+,-)")
    if word.letters != ("-", "+"):
        raise PreconditionError(f"word {word} is not (-,+)")
    ia = next(k for k, c in enumerate(cusps) if c.side == RIGHT)
    stages = []
    cur = curve
    loc = find_creation_window(cur, ("-", "+"), cfg, arc=ia)
    if loc is None:
        sa, sb = cusps[ia].s, cusps[(ia + 1) % 2].s
        a, length = _sub_arc(sa, sb, 0.15, 0.85)
        cur, h = _push_x_positive(cur, a, length, 1, cfg)
        stages.append(h)
        loc = find_creation_window(cur, ("-", "+"), cfg, arc=ia)
        if loc is None:
            raise WindowObstruction("no room to create the auxiliary cusp pair")
    # prefer the gentlest zigzag tall enough for the fill; stretch heights only as a last resort
    last = None
    attempts = [(amp, False) for amp in (2.0, 3.0, 4.0, 6.0, 8.0, 12.0, 16.0)] + [(4.0, True), (8.0, True)]
    for amp, allow_raise in attempts:
        try:
            mid, hc = create_cusp_pair(cur, loc, ("-", "+"), cfg, amplitude=amp)
            cusps = find_cusps(mid, cfg)
            n = len(cusps)
            # B (left, +) is followed cyclically by A (right, -)
            ib = next(k for k in range(n) if cusps[k].side == LEFT and cusps[k].letter == "+" and cusps[(k + 1) % n].side == RIGHT)
            out, hx = cancel_cusp_pair(mid, (ib, (ib + 1) % n), cfg, allow_raise=allow_raise)
        except (WindowObstruction, CertificationFailure) as e:
            last = e
            continue
        stages += [hc, hx]
        cur = out
        break
    else:
        raise last
    final = cusp_word(cur, cfg).starting_at_right()
    if final.letters != ("+", "-"):
        raise CertificationFailure(f"orientation normalization ended with {final}")
    return cur, concatenate_all(stages)


# ---------------------------------------------------------------------------
# alignment


def _slide_cusps(curve, v, u, cfg):
    """Reparametrize so the cusps at ``v`` move to ``u``, in as many small steps as needed.

    Step j composes the previous keyframe with the circle map sending the
    next knot positions to the current ones, so the sliding speed along the
    curve (and hence the tangent turn between frames) is divided by the step count.
    """
    last = None
    for m in (1, 2, 4, 8, 16, 32):
        knots = [v + (j / m) * (u - v) for j in range(m + 1)]
        frames, segs = [curve], []
        for j in range(m):
            chi = CircleDiffeo(knots[j + 1], knots[j])
            prev = frames[-1]
            frames.append(correct_area(prev.with_samples(prev(chi(prev.params)))))
            segs.append(Segment("reparam", True, diffeo=(tuple(knots[j + 1]), tuple(knots[j])), note=f"slide cusps {j + 1}/{m}"))
        note = f"reparametrize cusps onto target ({m} steps)"
        h = RegularHomotopy(tuple(frames), tuple(segs), (note,))
        try:
            certify(h, cfg, True, what=note)
        except CertificationFailure as e:
            last = e
            continue
        return frames[-1], h
    raise last


def align_cusps(curve, target, cfg=DEFAULT):
    """Move the cusps of ``curve`` to the parameters of the target's cusps, then match its bounding box.

    The words must agree as cyclic words (letters and sides).
    """
    if curve.n == target.n and np.array_equal(curve.samples, target.samples):
        return curve, constant_homotopy(curve, "align: identical")
    _zero_area_guard(curve, cfg)
    cc = find_cusps(curve, cfg)
    ct = find_cusps(target, cfg)
    wc, wt = CuspWord.from_cusps(cc), CuspWord.from_cusps(ct)
    shifts = [r for r in range(len(wc)) if len(wc) == len(wt) and wc.rotated(r).letters == wt.letters and wc.rotated(r).sides == wt.sides]
    if not shifts:
        raise WordMismatch(f"cusp words differ: {wc} vs {wt}")
    n = len(ct)
    u = np.array([c.s for c in ct])

    def knots(r):
        v = [cc[r].s]
        for k in range(1, n):
            v.append(v[-1] + _fwd(cc[(r + k - 1) % n].s, cc[(r + k) % n].s))
        v = np.array(v)
        v += TAU * np.round((u[0] - v[0]) / TAU)
        return v

    cands = [knots(r) for r in shifts]
    v = min(cands, key=lambda vv: np.abs(vv - u).max())
    stages = []
    cur = curve
    if np.abs(v - u).max() > 1e-12:
        cur, h = _slide_cusps(cur, v, u, cfg)
        stages.append(h)
    lo_c, hi_c = cur.samples.min(axis=0), cur.samples.max(axis=0)
    lo_t, hi_t = target.samples.min(axis=0), target.samples.max(axis=0)
    lam = float(np.ptp(target.samples, axis=0).max() / np.ptp(cur.samples, axis=0).max())
    centre_c, centre_t = 0.5 * (lo_c + hi_c), 0.5 * (lo_t + hi_t)
    scaled = cur.with_samples(lam * (cur.samples - centre_c) + centre_t)
    if np.abs(scaled.samples - cur.samples).max() > 0:
        scaled = correct_area(scaled)
        stages.append(_straight(cur, scaled, cfg, kind="scaling", note=f"scale by {lam:.6g} and recentre"))
        cur = scaled
    if not stages:
        return curve, constant_homotopy(curve, "align: nothing to do")
    return cur, concatenate_all(stages)
