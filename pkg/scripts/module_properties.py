"""Property suites over D^b(Z): truncation coincidence and the hom/tensor bounds.

    python scripts/module_properties.py --complexes 200 --pairs 500 --seed 0
"""
from __future__ import annotations

import argparse
import sys

from sdperv.props import coincidence_suite, inner_suite


def main():
    ap = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    ap.add_argument("--complexes", type=int, default=200)
    ap.add_argument("--pairs", type=int, default=500)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    ok = True
    for title, rep in (("truncation coincidence", coincidence_suite(args.complexes, args.seed)),
                       ("hom and tensor bounds", inner_suite(args.pairs, args.seed))):
        print(f"== {title}")
        print(rep.summary())
        for f in rep.failures[:5]:
            print("  failure:", f)
        ok &= rep.ok
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
