"""Acceptance suite: one PASS/FAIL line per criterion.

Run with ``pytest tests/test_acceptance.py -v`` (the lines are printed even
without ``-s``) or directly with ``python tests/test_acceptance.py``.
"""
import random
import sys
import time
from fractions import Fraction

import pytest

from sdperv.cellspace import constant_sheaf, skyscraper
from sdperv.dz import FreeComplex
from sdperv.example import run_rp3_cone
from sdperv.perv import (check_extpr, check_funct, member_sd, random_sheaf, sd_range,
                         verify_tstructure)
from sdperv.props import coincidence_suite, inner_suite
from sdperv.spaces import APEX, BUILTIN, builtin, circle, interval, simplex2, sphere2

Z2_MODEL = FreeComplex.two_term([[2]], -1)


def _line(n, ok, detail):
    return f"CRITERION {n}: {'PASS' if ok else 'FAIL'} - {detail}"


def _emit(capsys, text):
    if capsys is None:
        print(text, flush=True)
    else:
        with capsys.disabled():
            print("\n" + text, flush=True)


# ---------------------------------------------------------------------------
# criteria


def criterion_1():
    checks = run_rp3_cone()
    bad = [c.line() for c in checks if not c.ok]
    return not bad, f"{len(checks) - len(bad)}/{len(checks)} worked-example checks match", bad


def criterion_2():
    z = constant_sheaf(circle())
    grid = [Fraction(k, 4) for k in range(-4, 9)]
    bad = []
    for c in grid:
        le, ge = member_sd(z, c, "le"), member_sd(z, c, "ge")
        if le != (c >= Fraction(1, 2)) or ge != (c <= Fraction(1, 2)):
            bad.append(f"c={c}: le={le} ge={ge}")
    heart = [str(c) for c in grid if member_sd(z, c, "le") and member_sd(z, c, "ge")]
    return not bad, f"heart of Z_S1 on 1/4 Z in [-1, 2] is at {heart}", bad


def criterion_3():
    rep = coincidence_suite(n=200, seed=2024)
    return rep.ok, "200 complexes x 17 half-integer cuts: " + "; ".join(
        f"{n} {p}/{p + f}" for n, (p, f) in sorted(rep.counts.items())), rep.failures


def criterion_4():
    rep = inner_suite(pairs=500, seed=7)
    enough = all(p + f >= 500 for p, f in rep.counts.values()) and len(rep.counts) == 7
    return rep.ok and enough, "; ".join(
        f"{n} {p}/{p + f}" for n, (p, f) in sorted(rep.counts.items())), rep.failures


AXIOM_CHECKS = ["orthogonality", "triangle membership", "triangle check", "idempotence",
                "duality exchange", "stalk biduality", "KS<= in sd<=", "sd>= in KS>=",
                "uniqueness under permutation"]


def criterion_5(samples=100):
    bad, parts = [], []
    for i, space in enumerate((interval, circle, simplex2, sphere2)):
        x = space()
        rep = verify_tstructure(x, samples=samples, seed=100 + i)
        missing = [c for c in AXIOM_CHECKS if rep.counts.get(c, [0, 0])[0] == 0]
        if not rep.ok or missing:
            bad.append((x.name, rep.failures[:5], "never exercised", missing))
        total = sum(p + f for p, f in rep.counts.values())
        fails = sum(f for _, f in rep.counts.values())
        parts.append(f"{x.name} {samples} sheaves, {total - fails}/{total} checks")
    return not bad, "; ".join(parts), bad


def _funct_cases(name, x):
    """(sheaves, point cells, cuts per sheaf) for one built-in space."""
    big = len(x.ids) > 40
    sheaves = [constant_sheaf(x), constant_sheaf(x, Z2_MODEL)]
    if not big:
        rng = random.Random(len(x.ids))
        sheaves += [random_sheaf(x, rng) for _ in range(4)]
    vertices = [c for c in x.ids if x.dim(c) == 0]
    points = vertices if not big else vertices[:2]
    if name == "rp3-cone":
        points = [APEX, vertices[1]]
    return sheaves, points, big


def criterion_6():
    bad = []
    counts = {}
    for name in BUILTIN:
        x = builtin(name)
        sheaves, points, big = _funct_cases(name, x)
        for k in sheaves:
            ge, le = sd_range(k, -4, 6)
            if big:
                cuts = sorted({c for c in (ge, le) if c is not None})
            else:
                cuts = [Fraction(n, 2) for n in range(-4, 7)]
            maps = [("constant",)] + [("inclusion", [p]) for p in points]
            for c in cuts:
                for f in maps:
                    rep = check_funct(f, k, c)
                    for check, prem, conc in rep.checks:
                        key = (f[0], check)
                        c_ = counts.setdefault(key, [0, 0])
                        if prem:
                            c_[0 if conc else 1] += 1
                            if not conc:
                                bad.append((name, f, str(c), check))
    # every implication exercised with a true premise for both map kinds
    idle = [k for k, (p, f) in counts.items() if p + f == 0]
    # external products
    ext = 0
    s1 = circle()
    z = constant_sheaf(s1)
    for c in (Fraction(1, 2), 0, Fraction(-1, 2)):
        prem, conc = check_extpr(z, z, c, c)
        ext += prem
        if prem and not conc:
            bad.append(("extpr Z_S1", str(c)))
    if not check_extpr(z, z, "1/2", "1/2") == (True, True):
        bad.append(("extpr Z_S1 at 1/2", "premise or conclusion false"))
    sky = []
    for space in (s1, interval()):
        for cell in space.ids:
            for m in (None, Z2_MODEL):
                sky.append(skyscraper(space, cell, m))
    for a in sky[::2]:
        for b in sky[1::3]:
            ca, cb = sd_range(a)[0], sd_range(b)[0]
            prem, conc = check_extpr(a, b, ca, cb)
            ext += prem
            if prem and not conc:
                bad.append(("extpr skyscrapers", str(ca), str(cb)))
    nfunct = sum(p + f for p, f in counts.values())
    ok = not bad and not idle and ext > 0
    return ok, (f"{nfunct} functoriality implications with true premise on {len(BUILTIN)} spaces; "
                f"{ext} external product bounds"), bad + [("never exercised", idle)] * bool(idle)


CRITERIA = {1: criterion_1, 2: criterion_2, 3: criterion_3, 4: criterion_4, 5: criterion_5,
            6: criterion_6}


@pytest.mark.parametrize("n", sorted(CRITERIA))
def test_criterion(n, capsys):
    t0 = time.time()
    ok, detail, bad = CRITERIA[n]()
    _emit(capsys, _line(n, ok, f"{detail} ({time.time() - t0:.1f}s)"))
    assert ok, bad[:10]


if __name__ == "__main__":
    failed = 0
    for n, fn in sorted(CRITERIA.items()):
        t0 = time.time()
        ok, detail, bad = fn()
        _emit(None, _line(n, ok, f"{detail} ({time.time() - t0:.1f}s)"))
        failed += not ok
    sys.exit(1 if failed else 0)
