"""The cone over RP^3 with constant coefficients Z: the half-step heart example.

Every value is computed on the pinned triangulation and compared with the
expected closed form. ``run_rp3_cone`` returns one ``Check`` per item.
"""
from __future__ import annotations

import time
from dataclasses import dataclass

from .cellspace import (SheafComplex, cone, constant_sheaf, costalk, extend_zero, fiber,
                        pushforward_open, restrict_open, sections, skyscraper)
from .dz import FreeComplex
from .intlin import FgAbGroup
from .perv import degree0_cycles, find_iso, ks_truncate, member_ks, member_sd, sd_truncate, stalkwise_equal
from .spaces import APEX, rp3_cone


@dataclass
class Check:
    name: str
    expected: str
    computed: str
    ok: bool

    def line(self) -> str:
        return f"[{'ok' if self.ok else 'MISMATCH'}] {self.name}: expected {self.expected}; computed {self.computed}"


def _fmt(h: dict) -> str:
    return "{" + ", ".join(f"H^{i}={g}" for i, g in sorted(h.items())) + "}"


def _between(k: SheafComplex, lo, hi) -> bool:
    return member_sd(k, lo, "ge") and member_sd(k, hi, "le")


def _torsion_at_apex(base, degree: int) -> SheafComplex:
    return skyscraper(base, APEX, FreeComplex.two_term([[2]], degree - 1))


def run_rp3_cone(verbose: bool = False) -> list[Check]:
    t0 = time.time()
    out: list[Check] = []

    def add(name, expected, computed, ok):
        out.append(Check(name, expected, computed, bool(ok)))
        if verbose:
            print(out[-1].line(), f"({time.time() - t0:.1f}s)", flush=True)

    x = rp3_cone()
    u = [c for c in x.ids if c != APEX]
    zx = constant_sheaf(x)
    zu = restrict_open(zx, u)

    # (a) sections over the punctured cone, (b) apex costalk
    z, z2 = FgAbGroup(1), FgAbGroup(0, (2,))
    want = {0: z, 2: z2, 3: z}
    got = sections(zu).cohomology_all()
    add("sections over the punctured cone", _fmt(want), _fmt(got), got == want)
    want = {3: z2, 4: z}
    got = costalk(zx, APEX).cohomology_all()
    add("costalk at the apex", _fmt(want), _fmt(got), got == want)

    # (c) the constant sheaf sits in the heart at 2
    le, ge = member_sd(zx, 2, "le"), member_sd(zx, 2, "ge")
    add("Z_X in pD^{<=2} and pD^{>=2}", "True, True", f"{le}, {ge}", le and ge)

    # (d) truncations of j_! and Rj_*
    apex = skyscraper(x, APEX)
    shriek = extend_zero(zu, x)
    t = sd_truncate(shriek, 2, "lt-ge")
    add("j_!Z in pD^{[1,2]}", "True", str(_between(shriek, 1, 2)), _between(shriek, 1, 2))
    ok = find_iso(t.lower, apex.shift(-1)) is not None
    add("ptau^{<2} j_!Z", "Z_apex[-1]", "Z_apex[-1]" if ok else "other", ok)
    ok = find_iso(t.upper, zx) is not None
    add("ptau^{>=2} j_!Z", "Z_X", "Z_X" if ok else "other", ok)
    bad = t.check()
    add("triangle for j_!Z at 2 (<,>=)", "[]", str(bad), not bad)

    star = pushforward_open(zu, x)
    add("Rj_*Z in pD^{[2,3]}", "True", str(_between(star, 2, 3)), _between(star, 2, 3))
    t2 = sd_truncate(star, 2, "le-gt")
    ok = find_iso(t2.upper, apex.shift(-3)) is not None
    add("ptau^{>2} Rj_*Z", "Z_apex[-3]", "Z_apex[-3]" if ok else "other", ok)
    bad = t2.check()
    add("triangle for Rj_*Z at 2 (<=,>)", "[]", str(bad), not bad)

    # (e) the two heart exact sequences
    p = t2.lower
    q2, q3 = _torsion_at_apex(x, 2), _torsion_at_apex(x, 3)
    found = None
    for f in degree0_cycles(zx, p):
        c = cone(f)[0].reduced()
        if find_iso(c, q2) is not None:
            found = (f, c)
            break
    add("cone(Z_X -> ptau^{<=2}Rj_*Z)", "(Z/2)_apex[-2]", "(Z/2)_apex[-2]" if found else "none",
        found is not None)
    if found is not None:
        f, c = found
        mem = all(_between(k, "3/2", 2) for k in (zx, p, c))
        add("0 -> Z_X -> ptau^{<=2}Rj_*Z -> (Z/2)_apex[-2] -> 0 in pD^{[3/2,2]}", "True",
            str(mem), mem)
        fb = fiber(f)[0].reduced()
        iso = find_iso(fb, q3) is not None
        mem = all(_between(k, 2, "5/2") for k in (fb, zx, p))
        add("fiber(Z_X -> ptau^{<=2}Rj_*Z)", "(Z/2)_apex[-3]", "(Z/2)_apex[-3]" if iso else "other",
            iso)
        add("0 -> (Z/2)_apex[-3] -> Z_X -> ptau^{<=2}Rj_*Z -> 0 in pD^{[2,5/2]}", "True",
            str(mem), mem)

    # KS comparison: same truncation at 2, but the Z/2 term changes hearts
    tk = ks_truncate(star, 2, "le-gt")
    same = stalkwise_equal(tk.lower, p)
    add("KS and sd truncation of Rj_*Z at 2 agree stalkwise", "True", str(same), same)
    ks_heart = member_ks(q2, 2, "le") and member_ks(q2, 2, "ge")
    sd_half = member_sd(q2, "3/2", "le") and member_sd(q2, "3/2", "ge") and not member_sd(q2, 2, "ge")
    add("(Z/2)_apex[-2] in the KS heart at 2 and the sd heart at 3/2", "True, True",
        f"{ks_heart}, {sd_half}", ks_heart and sd_half)
    elapsed = time.time() - t0
    add("runtime (s)", "< 60", f"{elapsed:.1f}", elapsed < 60)
    add("cell count", "<= 500", str(len(x.ids)), len(x.ids) <= 500)
    return out


EXAMPLES = {"rp3-cone": run_rp3_cone}
