"""Run the RP^3 cone worked example and print expected vs computed values.

    python scripts/run_example.py [--json out.json]
"""
from __future__ import annotations

import argparse
import json
import sys

from sdperv.example import run_rp3_cone


def main():
    ap = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    ap.add_argument("--json", help="also write the checks as JSON")
    args = ap.parse_args()
    checks = run_rp3_cone(verbose=True)
    bad = [c for c in checks if not c.ok]
    print(f"{len(checks) - len(bad)}/{len(checks)} checks match")
    if args.json:
        with open(args.json, "w") as f:
            json.dump([c.__dict__ for c in checks], f, indent=2)
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main())
