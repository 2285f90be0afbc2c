"""JSON documents for curves and homotopies.

Floats are written as decimal strings with 17 significant digits, which
round-trips IEEE doubles exactly.
"""

import json
import math

import numpy as np

from .config import DEFAULT
from .curves import PlanarClosedCurve, from_fourier
from .errors import ParseError, VersionError
from .homotopy import RegularHomotopy, Segment
from .legendrian import LegendrianCurve

VERSION = 1
CURVE_FORMAT = "wgraustein-curve"
HOMOTOPY_FORMAT = "wgraustein-homotopy"


def fmt(v):
    return format(float(v), ".17g")


def _num(text, where):
    try:
        v = float(text)
    except (TypeError, ValueError):
        raise ParseError(f"{where}: not a number: {text!r}") from None
    if not math.isfinite(v):
        raise ParseError(f"{where}: non-finite value {text!r}")
    return v


def _loads(text):
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(e.msg, e.lineno, e.colno) from None


def _check_header(doc, kind):
    if not isinstance(doc, dict):
        raise ParseError("document must be a JSON object")
    if doc.get("format") != kind:
        raise ParseError(f"expected format {kind!r}, got {doc.get('format')!r}")
    if doc.get("version") != VERSION:
        raise VersionError(f"unsupported {kind} version {doc.get('version')!r} (this build reads {VERSION})")


# ---------------------------------------------------------------------------
# curves


def curve_to_dict(curve, z=None):
    d = {"format": CURVE_FORMAT, "version": VERSION}
    if curve.name:
        d["name"] = curve.name
    d["samples"] = [[fmt(a), fmt(b)] for a, b in curve.samples]
    if z is not None:
        d["z"] = [fmt(v) for v in z]
    return d


def legendrian_to_dict(gamma):
    from .curves import PlanarClosedCurve as P

    return curve_to_dict(P(gamma.samples[:, :2], gamma.name), gamma.samples[:, 2])


def _fourier_coeffs(coeffs, where):
    if not isinstance(coeffs, dict):
        raise ParseError(f"{where}: expected an object with a0, a, b")
    a0 = _num(coeffs.get("a0", "0"), f"{where}.a0")
    a = [_num(v, f"{where}.a[{k}]") for k, v in enumerate(coeffs.get("a", []))]
    b = [_num(v, f"{where}.b[{k}]") for k, v in enumerate(coeffs.get("b", []))]
    return {"a0": a0, "a": a, "b": b}


def curve_from_dict(doc, cfg=DEFAULT):
    """Returns a PlanarClosedCurve, or a LegendrianCurve when z samples are present."""
    _check_header(doc, CURVE_FORMAT)
    name = doc.get("name")
    if "samples" in doc:
        rows = doc["samples"]
        if not isinstance(rows, list) or len(rows) < 32:
            raise ParseError("samples must be a list of at least 32 [x, y] pairs")
        pts = np.empty((len(rows), 2))
        for i, row in enumerate(rows):
            if not isinstance(row, list) or len(row) != 2:
                raise ParseError(f"samples[{i}] must be an [x, y] pair")
            pts[i] = [_num(row[0], f"samples[{i}][0]"), _num(row[1], f"samples[{i}][1]")]
        if "z" in doc:
            z = doc["z"]
            if not isinstance(z, list) or len(z) != len(rows):
                raise ParseError("z must have one entry per sample")
            zs = np.array([_num(v, f"z[{i}]") for i, v in enumerate(z)])
            return LegendrianCurve(np.column_stack([pts, zs]), name)
        return PlanarClosedCurve(pts, name)
    if "fourier" in doc:
        f = doc["fourier"]
        if not isinstance(f, dict) or "x" not in f or "y" not in f:
            raise ParseError("fourier must give coefficients for x and y")
        coeffs = {k: _fourier_coeffs(f[k], f"fourier.{k}") for k in ("x", "y")}
        if not any(c["a"] or c["b"] for c in coeffs.values()):
            raise ParseError("fourier coefficients are empty")
        return from_fourier(coeffs, cfg.n_samples, name)
    raise ParseError("curve document needs 'samples' or 'fourier'")


def dumps_curve(curve):
    if isinstance(curve, LegendrianCurve):
        return json.dumps(legendrian_to_dict(curve), indent=1) + "\n"
    return json.dumps(curve_to_dict(curve), indent=1) + "\n"


def loads_curve(text, cfg=DEFAULT):
    return curve_from_dict(_loads(text), cfg)


# ---------------------------------------------------------------------------
# homotopies


def _segment_to_dict(seg):
    return {
        "kind": seg.kind,
        "keep_area_zero": seg.keep_area_zero,
        "exclude": [[fmt(a), fmt(b), fmt(r)] for a, b, r in seg.exclude],
        "diffeo": None if seg.diffeo is None else [[fmt(v) for v in seg.diffeo[0]], [fmt(v) for v in seg.diffeo[1]]],
        "reversed": seg.reversed,
        "note": seg.note,
    }


def _segment_from_dict(d, k):
    where = f"segments[{k}]"
    if not isinstance(d, dict):
        raise ParseError(f"{where} must be an object")
    try:
        exclude = tuple(tuple(_num(v, f"{where}.exclude") for v in row) for row in d.get("exclude", []))
        diffeo = d.get("diffeo")
        if diffeo is not None:
            diffeo = (
                tuple(_num(v, f"{where}.diffeo") for v in diffeo[0]),
                tuple(_num(v, f"{where}.diffeo") for v in diffeo[1]),
            )
        return Segment(d["kind"], bool(d.get("keep_area_zero", False)), exclude, diffeo, bool(d.get("reversed", False)), d.get("note", ""))
    except (KeyError, IndexError, TypeError, ValueError) as e:
        raise ParseError(f"{where}: {e}") from None


def homotopy_to_dict(h, report=None):
    d = {
        "format": HOMOTOPY_FORMAT,
        "version": VERSION,
        "keyframes": [curve_to_dict(c) for c in h.keyframes],
        "segments": [_segment_to_dict(s) for s in h.segments],
        "trace": list(h.trace),
    }
    if report is not None:
        d["report"] = report.to_dict()
    return d


def homotopy_from_dict(doc, cfg=DEFAULT):
    _check_header(doc, HOMOTOPY_FORMAT)
    kfs = doc.get("keyframes")
    segs = doc.get("segments")
    if not isinstance(kfs, list) or not isinstance(segs, list) or not kfs:
        raise ParseError("homotopy document needs keyframes and segments lists")
    if len(segs) != len(kfs) - 1:
        raise ParseError("segment count must be keyframe count - 1")
    frames = tuple(curve_from_dict(k, cfg) for k in kfs)
    return RegularHomotopy(frames, tuple(_segment_from_dict(s, k) for k, s in enumerate(segs)), tuple(doc.get("trace", [])))


def dumps_homotopy(h, report=None):
    return json.dumps(homotopy_to_dict(h, report), indent=1) + "\n"


def loads_homotopy(text, cfg=DEFAULT):
    return homotopy_from_dict(_loads(text), cfg)


def document_kind(text):
    doc = _loads(text)
    return doc.get("format") if isinstance(doc, dict) else None


def read_text(path):
    with open(path, encoding="utf-8") as f:
        return f.read()


def write_text(path, text):
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write(text)
