"""Fixed corpus of same-rotation-number pairs used by the end-to-end checks."""

import numpy as np

from .config import DEFAULT
from .curves import PlanarClosedCurve, correct_area, from_function, mirror_x, param_grid, relative_min_speed
from .legendrian import is_generic
from .moves import standard_curve


def _fn(g, n, name):
    return from_function(g, n, name)


def jittered_circle(n):
    return _fn(
        lambda s: (np.cos(s) + 0.06 * np.cos(2 * s) - 0.04 * np.sin(3 * s), np.sin(s) + 0.05 * np.sin(2 * s) + 0.03 * np.cos(4 * s)),
        n,
        "jittered-circle",
    )


def limacon(n, sign=1):
    return _fn(lambda s: ((0.5 + np.cos(s)) * np.cos(s), sign * (0.5 + np.cos(s)) * np.sin(s)), n, "limacon")


def corpus(n=None, cfg=DEFAULT):
    """List of ``(name, c0, c1, rot)``; rot runs over -2..2."""
    n = cfg.n_samples if n is None else n
    circle = _fn(lambda s: (np.cos(s), np.sin(s)), n, "circle")
    figure8 = _fn(lambda s: (np.cos(s), np.sin(2 * s)), n, "figure8")
    return [
        ("circle-jittered", circle, jittered_circle(n), 1),
        ("circle-offcentre", circle, _fn(lambda s: (np.cos(s) + 0.3 * np.cos(2 * s), np.sin(s)), n, "c1"), 1),
        ("figure8-std0", figure8, standard_curve(0, n, cfg), 0),
        ("figure8-std0-mirror", figure8, mirror_x(standard_curve(0, n, cfg)), 0),
        (
            "figure8-wobbly",
            figure8,
            _fn(lambda s: (np.cos(s) + 0.1 * np.sin(3 * s), np.sin(2 * s) + 0.08 * np.cos(s)), n, "f8w"),
            0,
        ),
        ("lemniscate-std0", _fn(lambda s: (np.sin(2 * s), np.sin(s)), n, "lemniscate"), standard_curve(0, n, cfg), 0),
        ("double-circle-limacon", _fn(lambda s: (np.cos(2 * s), np.sin(2 * s)), n, "kcircle(2)"), limacon(n), 2),
        ("double-circle-limacon-neg", _fn(lambda s: (np.cos(2 * s), -np.sin(2 * s)), n, "kcircle(-2)"), limacon(n, -1), -2),
        ("ellipse-neg", _fn(lambda s: (np.cos(s), -np.sin(s)), n, "kcircle(-1)"), _fn(lambda s: (2 * np.cos(s), -np.sin(s)), n, "ellipse"), -1),
        ("std2-limacon", standard_curve(2, n, cfg), limacon(n), 2),
    ]


def random_zero_area_curve(rng, n=None, cfg=DEFAULT, harmonics=4, max_tries=200):
    """Random trigonometric curve, moved to zero area, regular and generic.

    A dominant harmonic (cos ks, +-sin ks), k in 1..3, plus decaying noise
    gives a spread of rotation numbers.
    """
    n = cfg.n_samples if n is None else n
    s = param_grid(n)
    for _ in range(max_tries):
        k0 = int(rng.integers(1, 4))
        sg = 1 if rng.random() < 0.5 else -1
        x = 1.5 * np.cos(k0 * s)
        y = 1.5 * sg * np.sin(k0 * s)
        for k in range(1, harmonics + 1):
            a = rng.normal(size=4) / k
            x = x + a[0] * np.cos(k * s) + a[1] * np.sin(k * s)
            y = y + a[2] * np.cos(k * s) + a[3] * np.sin(k * s)
        c = correct_area(PlanarClosedCurve(np.column_stack([x, y]), "random"))
        if relative_min_speed(c, cfg) < 1e-3 or not is_generic(c, cfg):
            continue
        return c
    raise RuntimeError("no admissible random curve drawn")


def random_zero_area_curves(count, seed=0, n=None, cfg=DEFAULT):
    rng = np.random.default_rng(seed)
    return [random_zero_area_curve(rng, n, cfg) for _ in range(count)]
