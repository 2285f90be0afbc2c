"""Plan and verify every corpus pair; optionally write the homotopy documents.

    python3 scripts/run_corpus.py [--out DIR] [--n-samples N]
"""

import argparse
import os
import time

from wgraustein.config import DEFAULT
from wgraustein.corpus import corpus
from wgraustein.homotopy import verify
from wgraustein.io import dumps_homotopy, write_text
from wgraustein.planner import plan_whitney_graustein


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--out", help="directory for <pair>.json homotopy documents")
    p.add_argument("--n-samples", type=int, default=DEFAULT.n_samples)
    args = p.parse_args()
    cfg = DEFAULT.with_(n_samples=args.n_samples)
    if args.out:
        os.makedirs(args.out, exist_ok=True)
    print(f"{'pair':28s} rot  segments  min speed  max |area|  seconds  result")
    for name, c0, c1, rot in corpus(cfg.n_samples, cfg):
        t0 = time.perf_counter()
        h = plan_whitney_graustein(c0, c1, cfg, check=False)
        r = verify(h, c0, c1, True, cfg)
        secs = time.perf_counter() - t0
        print(f"{name:28s} {rot:+d}  {h.n_segments:8d}  {r.min_rel_speed:9.3g}  {r.max_area:10.2e}  {secs:7.1f}  {'PASS' if r.passed else 'FAIL'}")
        if args.out:
            write_text(os.path.join(args.out, f"{name}.json"), dumps_homotopy(h, r))


if __name__ == "__main__":
    main()
