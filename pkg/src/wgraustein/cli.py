"""Command-line interface.

Exit codes: 0 success, 2 precondition or validation error, 3 planner or
certification failure, 4 I/O error.
"""

import argparse
import logging
import os
import sys

from .catalog import catalog
from .config import DEFAULT
from .curves import PlanarClosedCurve, rotation_number, signed_area
from .errors import ConstructionError, PreconditionError, WGError
from .homotopy import lift_homotopy, verify, zero_area_part
from .io import (
    dumps_curve,
    dumps_homotopy,
    fmt,
    loads_curve,
    loads_homotopy,
    read_text,
    write_text,
)
from .legendrian import CuspWord, LegendrianCurve, find_cusps, lagrangian_projection, lift, rot_formulas
from .moves import normalize_area, reduce_word
from .planner import plan_whitney_graustein
from .render import frames_csv, frames_svg, front_svg

EXIT_OK, EXIT_PRECONDITION, EXIT_CONSTRUCTION, EXIT_IO = 0, 2, 3, 4


def load_curve(ref, cfg, planar=True):
    if ref.startswith("catalog:"):
        return catalog(ref, cfg.n_samples, cfg)
    c = loads_curve(read_text(ref), cfg)
    if planar and isinstance(c, LegendrianCurve):
        c = lagrangian_projection(c)
    return c


def load_homotopy(ref, cfg):
    return loads_homotopy(read_text(ref), cfg)


def _config(args):
    kw = {}
    if args.n_samples is not None:
        kw["n_samples"] = args.n_samples
    if args.seed is not None:
        kw["rng_seed"] = args.seed
    if args.eps_speed is not None:
        kw["eps_speed"] = args.eps_speed
    if args.eps_area is not None:
        kw["eps_area"] = args.eps_area
    if args.frames is not None:
        kw["frame_count"] = args.frames
    return DEFAULT.with_(**kw) if kw else DEFAULT


def cmd_rot(args, cfg):
    print(rotation_number(load_curve(args.file, cfg), cfg))


def cmd_area(args, cfg):
    print(fmt(signed_area(load_curve(args.file, cfg))))


def cmd_normalize_area(args, cfg):
    c = load_curve(args.file, cfg)
    out, h = normalize_area(c, cfg)
    write_text(args.output, dumps_curve(out))
    if args.homotopy:
        write_text(args.homotopy, dumps_homotopy(h))


def cmd_lift(args, cfg):
    write_text(args.output, dumps_curve(lift(load_curve(args.file, cfg), 0.0, cfg)))


def cmd_cusps(args, cfg):
    c = load_curve(args.file, cfg)
    cusps = find_cusps(c, cfg)
    print(f"{'s':>20}  side  orient")
    for cu in cusps:
        print(f"{cu.s:>20.12f}  {cu.side:<4}  {cu.orientation}")
    word = CuspWord.from_cusps(cusps)
    vals = rot_formulas(word)
    if len(set(vals)) != 1:
        raise AssertionError(f"rotation formulas disagree: {vals}")
    print(f"word: {word}")
    for label, v in zip(("lambda_minus - rho_plus", "rho_minus - lambda_plus", "(c_minus - c_plus)/2"), vals):
        print(f"{label} = {int(v)}")


def cmd_reduce(args, cfg):
    normal, trace = reduce_word(args.word)
    print(normal)
    for st in trace.steps:
        print(f"cancel {st.positions} {''.join(st.labels)} -> {st.word_after}")
    if trace.canonicalized:
        print("canonicalized to (+,-)")


def cmd_plan(args, cfg):
    a, b = load_curve(args.a, cfg), load_curve(args.b, cfg)
    h = plan_whitney_graustein(a, b, cfg)
    write_text(args.output, dumps_homotopy(h))
    if args.legendrian:
        os.makedirs(args.legendrian, exist_ok=True)
        part = zero_area_part(h)
        if part is not None:
            for k, (t, g) in enumerate(lift_homotopy(part, cfg)):
                write_text(os.path.join(args.legendrian, f"frame_{k:05d}.json"), dumps_curve(g))


def cmd_verify(args, cfg):
    h = load_homotopy(args.homotopy, cfg)
    a, b = load_curve(args.a, cfg), load_curve(args.b, cfg)
    report = verify(h, a, b, args.zero_area, cfg)
    print("\n".join(report.lines()))
    print("PASS" if report.passed else "FAIL")
    return EXIT_OK if report.passed else EXIT_CONSTRUCTION


def cmd_render(args, cfg):
    if args.what == "front":
        g = load_curve(args.input, cfg, planar=False)
        if isinstance(g, PlanarClosedCurve):
            g = lift(g, 0.0, cfg)
        write_text(args.output, front_svg(g, cfg))
    else:
        h = load_homotopy(args.input, cfg)
        out = frames_csv(h, cfg.frame_count, cfg) if args.format == "csv" else frames_svg(h, cfg.frame_count, cfg)
        write_text(args.output, out)


def cmd_catalog(args, cfg):
    write_text(args.output, dumps_curve(catalog(args.name, cfg.n_samples, cfg)))


def build_parser():
    p = argparse.ArgumentParser(prog="wgraustein", description="Regular homotopies of plane curves via Legendrian fronts.")
    p.add_argument("--n-samples", type=int, default=None, help="samples per curve (default 1024)")
    p.add_argument("--seed", type=int, default=None, help="seed for all randomized retries")
    p.add_argument("--eps-speed", type=float, default=None, help="relative speed floor")
    p.add_argument("--eps-area", type=float, default=None, help="zero-area tolerance")
    p.add_argument("--frames", type=int, default=None, help="frames per segment / rendered frames")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("rot", help="print the rotation number")
    s.add_argument("file")
    s.set_defaults(func=cmd_rot)
    s = sub.add_parser("area", help="print the signed area")
    s.add_argument("file")
    s.set_defaults(func=cmd_area)
    s = sub.add_parser("normalize-area", help="regular homotopy to a zero-area curve")
    s.add_argument("file")
    s.add_argument("-o", "--output", required=True)
    s.add_argument("--homotopy")
    s.set_defaults(func=cmd_normalize_area)
    s = sub.add_parser("lift", help="Legendrian lift of a zero-area curve")
    s.add_argument("file")
    s.add_argument("-o", "--output", required=True)
    s.set_defaults(func=cmd_lift)
    s = sub.add_parser("cusps", help="cusp table, word and rotation formulas")
    s.add_argument("file")
    s.set_defaults(func=cmd_cusps)
    s = sub.add_parser("reduce", help="normal form of a cusp word such as '(-,+,+,-)'")
    s.add_argument("word")
    s.set_defaults(func=cmd_reduce)
    s = sub.add_parser("plan", help="plan a regular homotopy between two curves")
    s.add_argument("a")
    s.add_argument("b")
    s.add_argument("-o", "--output", required=True)
    s.add_argument("--legendrian", metavar="DIR", help="also write lifted frames of the zero-area part")
    s.set_defaults(func=cmd_plan)
    s = sub.add_parser("verify", help="certify a homotopy document against its endpoints")
    s.add_argument("homotopy")
    s.add_argument("a")
    s.add_argument("b")
    s.add_argument("--zero-area", action="store_true")
    s.set_defaults(func=cmd_verify)
    s = sub.add_parser("render", help="render a front (SVG) or homotopy frames (CSV/SVG)")
    s.add_argument("what", choices=["front", "frames"])
    s.add_argument("input")
    s.add_argument("-o", "--output", required=True)
    s.add_argument("--format", choices=["csv", "svg"], default="csv")
    s.set_defaults(func=cmd_render)
    s = sub.add_parser("catalog", help="write a builtin curve")
    s.add_argument("name")
    s.add_argument("-o", "--output", required=True)
    s.set_defaults(func=cmd_catalog)
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(name)s: %(message)s")
    try:
        cfg = _config(args)
        code = args.func(args, cfg)
    except PreconditionError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_PRECONDITION
    except ConstructionError as e:
        print(f"failure: {e}", file=sys.stderr)
        return EXIT_CONSTRUCTION
    except OSError as e:
        print(f"I/O error: {e}", file=sys.stderr)
        return EXIT_IO
    except (ValueError, WGError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_PRECONDITION
    return EXIT_OK if code is None else code


if __name__ == "__main__":
    sys.exit(main())
