"""Named builtin curves, addressable as ``catalog:NAME`` from the command line."""

import re

import numpy as np

from .config import DEFAULT
from .curves import from_function
from .errors import UnknownName
from .homotopy import RegularHomotopy, Segment
from .moves import standard_curve

# Shrinking-loop family: (cos s + r cos 2s, sin s + r sin 2s) with r = 1 - 0.55 t.
# The inner loop exists for r > 1/2 (rot 2) and is gone for r < 1/2 (rot 1);
# the pinch r = 1/2 sits at t = 10/11, where the speed vanishes at s = pi.
LOOP_R0 = 1.0
LOOP_RATE = 0.55
LOOP_PINCH_T = (LOOP_R0 - 0.5) / LOOP_RATE


def loop_radius(t):
    return LOOP_R0 - LOOP_RATE * t


def shrinking_loop_curve(t, n=None, cfg=DEFAULT):
    n = cfg.n_samples if n is None else n
    r = loop_radius(t)
    return from_function(
        lambda s: (np.cos(s) + r * np.cos(2 * s), np.sin(s) + r * np.sin(2 * s)), n, f"fig2-family({t:g})"
    )


def shrinking_loop_homotopy(n_keyframes=13, n=None, cfg=DEFAULT):
    """Straight segments through slices of the family; every keyframe is regular, the pinch is not."""
    ts = np.linspace(0.0, 1.0, n_keyframes)
    if np.any(np.isclose(ts, LOOP_PINCH_T)):
        raise ValueError("a keyframe falls on the pinch")
    frames = tuple(shrinking_loop_curve(t, n, cfg) for t in ts)
    segs = tuple(Segment("straight", note=f"shrinking loop slice {k}") for k in range(n_keyframes - 1))
    return RegularHomotopy(frames, segs, ("shrinking-loop family",))


_PATTERNS = [
    (re.compile(r"^circle$"), lambda m, n, cfg: from_function(lambda s: (np.cos(s), np.sin(s)), n, "circle")),
    (re.compile(r"^figure8$"), lambda m, n, cfg: from_function(lambda s: (np.cos(s), np.sin(2 * s)), n, "figure8")),
    (re.compile(r"^kcircle\((-?\d+)\)$"), lambda m, n, cfg: kcircle(int(m.group(1)), n)),
    (re.compile(r"^std\((-?\d+)\)$"), lambda m, n, cfg: standard_curve(int(m.group(1)), n, cfg)),
    (re.compile(r"^fig2-family\(([-+0-9.eE]+)\)$"), lambda m, n, cfg: shrinking_loop_curve(float(m.group(1)), n, cfg)),
]

NAMES = ("circle", "kcircle(k)", "figure8", "std(n)", "fig2-family(t)")


def kcircle(k, n=None, cfg=DEFAULT):
    if k == 0:
        raise UnknownName("kcircle(0) is a constant map, not a regular curve")
    n = cfg.n_samples if n is None else n
    return from_function(lambda s: (np.cos(k * s), np.sin(k * s)), n, f"kcircle({k})")


def catalog(name, n=None, cfg=DEFAULT):
    n = cfg.n_samples if n is None else n
    key = name.strip().replace(" ", "")
    if key.startswith("catalog:"):
        key = key[len("catalog:"):]
    for pat, make in _PATTERNS:
        m = pat.match(key)
        if m:
            return make(m, n, cfg)
    raise UnknownName(f"unknown catalog name {name!r}; known: {', '.join(NAMES)}")
