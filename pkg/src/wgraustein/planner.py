"""End-to-end construction of a regular homotopy between curves of equal rotation number.

Each curve is driven to the standard model of its rotation number:
zero area, generic cusps, reduced cusp word, (+,-) orientation when the
word is mixed, cusps aligned with the model, then a straight-line morph. The
two pipelines are glued with one of them reversed.
"""

import logging

from .config import DEFAULT
from .curves import resample, rotation_number
from .errors import (
    CertificationFailure,
    ConstructionError,
    InterpolationFailure,
    NormalizationFailure,
    PlannerFailure,
    RotationMismatch,
    WindowObstruction,
)
from .homotopy import concatenate, concatenate_all, interpolate_area_projected, reverse, verify
from .legendrian import CuspWord, find_cusps
from .moves import (
    align_cusps,
    cancel_cusp_pair,
    is_normal_form,
    mixed_pairs,
    normalize_area,
    normalize_word_orientation,
    perturb_generic,
    reduce_word,
    standard_curve,
)

log = logging.getLogger(__name__)

PERTURB_MAGNITUDE = 0.02


def _reduce_geometrically(curve, cfg):
    """Cancel mixed pairs until the word is in normal form.

    The pair suggested by the word reducer (its first step) is tried first;
    the other mixed pairs serve as fallbacks when a window is obstructed.
    """
    stages = []
    while True:
        word = CuspWord.from_cusps(find_cusps(curve, cfg))
        if is_normal_form(word):
            return curve, stages
        _, trace = reduce_word(word)
        pairs = mixed_pairs(word)
        first = trace.steps[0].positions if len(trace) else None
        if first in pairs:
            pairs.remove(first)
            pairs.insert(0, first)
        errors = []
        for pair in pairs:
            try:
                curve, h = cancel_cusp_pair(curve, pair, cfg)
            except (WindowObstruction, CertificationFailure) as e:
                errors.append(f"{pair}: {e}")
                continue
            stages.append(h)
            log.info("cancelled %s, word now %s", pair, CuspWord.from_cusps(find_cusps(curve, cfg)))
            break
        else:
            raise PlannerFailure("cancel", "; ".join(errors) or f"no mixed pair in {word}")


def pipeline(curve, cfg=DEFAULT, target=None):
    """Certified homotopy from ``curve`` to the standard model of its rotation number."""
    n = rotation_number(curve, cfg)
    target = standard_curve(n, curve.n, cfg) if target is None else target
    stages = []
    try:
        cur, h = normalize_area(curve, cfg)
    except NormalizationFailure as e:
        raise PlannerFailure("normalize_area", e) from e
    stages.append(h)
    cur, h = perturb_generic(cur, PERTURB_MAGNITUDE, cfg)
    stages.append(h)
    cur, hs = _reduce_geometrically(cur, cfg)
    stages += hs
    word = CuspWord.from_cusps(find_cusps(cur, cfg)).starting_at_right()
    if len(word) == 2 and word.letters == ("-", "+"):
        try:
            cur, h = normalize_word_orientation(cur, cfg)
        except ConstructionError as e:
            raise PlannerFailure("orientation", e) from e
        stages.append(h)
    try:
        cur, h = align_cusps(cur, target, cfg)
    except ConstructionError as e:
        raise PlannerFailure("align", e) from e
    stages.append(h)
    try:
        h = interpolate_area_projected(cur, target, True, cfg, note="morph to standard model")
    except InterpolationFailure as e:
        raise PlannerFailure("interpolate", e) from e
    stages.append(h)
    return concatenate_all(stages)


def plan_whitney_graustein(c0, c1, cfg=DEFAULT, check=True):
    """Regular homotopy from c0 to c1, which must have the same rotation number.

    The result is verified independently of its construction when ``check`` is set.
    """
    n0, n1 = rotation_number(c0, cfg), rotation_number(c1, cfg)
    if n0 != n1:
        raise RotationMismatch(n0, n1)
    if c1.n != c0.n:
        c1 = resample(c1, c0.n)
    target = standard_curve(n0, c0.n, cfg)
    h0 = pipeline(c0, cfg, target)
    h1 = pipeline(c1, cfg, target)
    h = concatenate(h0, reverse(h1))
    if check:
        report = verify(h, c0, c1, expect_zero_area=True, cfg=cfg)
        if not report.passed:
            raise PlannerFailure("verify", "; ".join(report.lines()))
    return h
