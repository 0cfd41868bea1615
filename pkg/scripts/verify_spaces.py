"""Randomized axiom checks on several built-in spaces, one summary line each.

    python scripts/verify_spaces.py --samples 100 --seed 0 interval circle simplex2 sphere2
"""
from __future__ import annotations

import argparse
import sys
import time

from sdperv.perv import verify_tstructure
from sdperv.spaces import builtin


def main():
    ap = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    ap.add_argument("spaces", nargs="*", default=["interval", "circle", "simplex2", "sphere2"])
    ap.add_argument("--samples", type=int, default=20)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    failed = 0
    for i, name in enumerate(args.spaces):
        t0 = time.time()
        rep = verify_tstructure(builtin(name), samples=args.samples, seed=args.seed + i)
        print(f"{rep.summary()} [{time.time() - t0:.1f}s]")
        for f in rep.failures[:5]:
            print("  failure:", f)
        failed += not rep.ok
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
