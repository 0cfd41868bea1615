"""Where small sheaves sit: the self-dual and KS hearts side by side.

For each sheaf the script prints the half-integer range [a, b] with the
sheaf in pD^{>=a} and pD^{<=b}; a == b means it lies in a heart.

    python scripts/heart_table.py
"""
from __future__ import annotations

from sdperv.cellspace import constant_sheaf, extend_zero, pushforward_open, restrict_open, skyscraper
from sdperv.dz import FreeComplex
from sdperv.perv import member_ks, sd_range
from sdperv.spaces import builtin

Z2 = FreeComplex.two_term([[2]], -1)


def rows():
    for name in ("point", "interval", "circle", "simplex2", "sphere2", "torus"):
        x = builtin(name)
        yield name, "Z_X", constant_sheaf(x)
        yield name, "(Z/2)_X", constant_sheaf(x, Z2)
        v = x.ids[0]
        yield name, f"Z at cell {v}", skyscraper(x, v)
        yield name, f"Z/2 at cell {v}", skyscraper(x, v, Z2)
        if name != "point":
            u = [c for c in x.ids if c != v]
            zu = restrict_open(constant_sheaf(x), u)
            yield name, f"j_! Z off {v}", extend_zero(zu, x)
            yield name, f"Rj_* Z off {v}", pushforward_open(zu, x)


def fmt(r):
    a, b = r
    return f"[{a}, {b}]"


def main():
    print(f"{'space':10} {'sheaf':18} {'sd range':14} {'KS range':14}")
    for name, label, k in rows():
        print(f"{name:10} {label:18} {fmt(sd_range(k, -6, 6)):14} "
              f"{fmt(sd_range(k, -6, 6, member_ks)):14}")


if __name__ == "__main__":
    main()
