"""Executable Whitney-Graustein: regular homotopies of plane curves built from Legendrian fronts."""

from .catalog import catalog
from .config import DEFAULT, ToleranceConfig
from .curves import CircleDiffeo, PlanarClosedCurve, from_fourier, from_function, rotation_number, signed_area
from .errors import *  # noqa: F401,F403
from .homotopy import (
    CertificationReport,
    RegularHomotopy,
    Segment,
    concatenate,
    interpolate_area_projected,
    lift_homotopy,
    reverse,
    verify,
)
from .legendrian import Cusp, CuspWord, LegendrianCurve, cusp_word, detect_cusps, find_cusps, lift, rot_from_cusps
from .moves import (
    align_cusps,
    cancel_cusp_pair,
    create_cusp_pair,
    normalize_area,
    normalize_word_orientation,
    perturb_generic,
    reduce_word,
    standard_curve,
)
from .planner import plan_whitney_graustein

__version__ = "0.1.0"
