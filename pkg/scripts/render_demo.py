"""Render the figure-eight to Std(0) homotopy: fronts of both ends and an overlay of frames.

    python3 scripts/render_demo.py [--out DIR] [--frames K]
"""

import argparse
import os

from wgraustein.catalog import catalog
from wgraustein.config import DEFAULT
from wgraustein.legendrian import lift
from wgraustein.planner import plan_whitney_graustein
from wgraustein.render import render_frames, render_front_svg


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--out", default="demo_out")
    p.add_argument("--frames", type=int, default=24)
    args = p.parse_args()
    os.makedirs(args.out, exist_ok=True)
    a, b = catalog("figure8"), catalog("std(0)")
    render_front_svg(lift(a), os.path.join(args.out, "front_figure8.svg"))
    render_front_svg(lift(b), os.path.join(args.out, "front_std0.svg"))
    h = plan_whitney_graustein(a, b, DEFAULT)
    render_frames(h, os.path.join(args.out, "frames.svg"), "svg", args.frames)
    render_frames(h, os.path.join(args.out, "frames.csv"), "csv", args.frames)
    print("\n".join(h.trace))
    print(f"wrote {args.out}/")


if __name__ == "__main__":
    main()
