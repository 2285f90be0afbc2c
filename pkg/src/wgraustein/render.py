"""SVG and CSV output for fronts and homotopy frames."""

import io as _io

import numpy as np

from .config import DEFAULT
from .legendrian import front_projection

SIZE = 480
PAD = 24


def _fit(points_list):
    allp = np.vstack(points_list)
    lo, hi = allp.min(axis=0), allp.max(axis=0)
    span = max(float((hi - lo).max()), 1e-12)
    k = (SIZE - 2 * PAD) / span

    def tx(p):
        q = (np.asarray(p) - lo) * k + PAD
        # SVG y axis points down
        return np.column_stack([q[:, 0], SIZE - q[:, 1]])

    return tx


def _path_d(pts, closed=True):
    head = f"M{pts[0, 0]:.3f},{pts[0, 1]:.3f}"
    body = "".join(f"L{x:.3f},{y:.3f}" for x, y in pts[1:])
    return head + body + ("Z" if closed else "")


def _svg(parts):
    return (
        f'<?xml version="1.0" encoding="UTF-8"?>\n'
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">\n'
        + "\n".join(parts)
        + "\n</svg>\n"
    )


def front_svg(gamma, cfg=DEFAULT):
    """The (y, z) front with a marker per cusp labelled side and sign, e.g. ``R+``."""
    front = front_projection(gamma, cfg)
    tx = _fit([front.points])
    parts = [f'<path class="front" d="{_path_d(tx(front.points))}" fill="none" stroke="black" stroke-width="1.2"/>']
    for c in front.cusps:
        p = gamma(c.s)
        q = tx(np.array([[p[1], p[2]]]))[0]
        parts.append(f'<circle class="cusp" cx="{q[0]:.3f}" cy="{q[1]:.3f}" r="4" fill="red"/>')
        parts.append(f'<text x="{q[0] + 6:.3f}" y="{q[1] - 6:.3f}" font-size="12">{c.side}{c.letter}</text>')
    return _svg(parts)


def render_front_svg(gamma, path, cfg=DEFAULT):
    with open(path, "w", encoding="utf-8") as f:
        f.write(front_svg(gamma, cfg))


def frame_times(frames):
    return np.linspace(0.0, 1.0, frames)


def frames_csv(h, frames=None, cfg=DEFAULT):
    frames = cfg.frame_count if frames is None else frames
    buf = _io.StringIO()
    buf.write("t,s,x,y\n")
    for t in frame_times(frames):
        f = h.evaluate_frame(t)
        for s, (x, y) in zip(f.params, f.samples):
            buf.write(f"{t:.17g},{s:.17g},{x:.17g},{y:.17g}\n")
    return buf.getvalue()


def frames_svg(h, frames=None, cfg=DEFAULT):
    """One ``path`` element per frame, shaded from light (t = 0) to dark (t = 1)."""
    frames = cfg.frame_count if frames is None else frames
    curves = [h.evaluate_frame(t) for t in frame_times(frames)]
    tx = _fit([c.samples for c in curves])
    parts = []
    for k, (t, c) in enumerate(zip(frame_times(frames), curves)):
        g = int(200 * (1 - t))
        parts.append(
            f'<path class="frame" data-t="{t:.6f}" d="{_path_d(tx(c.samples))}" fill="none" '
            f'stroke="rgb({g},{g},{g})" stroke-width="0.8"/>'
        )
    return _svg(parts)


def render_frames(h, path, fmt="csv", frames=None, cfg=DEFAULT):
    text = frames_csv(h, frames, cfg) if fmt == "csv" else frames_svg(h, frames, cfg)
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write(text)
