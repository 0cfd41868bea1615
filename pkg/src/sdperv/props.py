"""Seeded property suites for the t-structure on D^b(Z).

Each suite draws random free complexes, evaluates an implication with the
premise arranged to hold, and tallies passes and failures per property.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .dz import FreeComplex, hom_complex, qa_truncate, same_cohomology, tensor_complex
from .sampling import ComplexSampler
from .tmod import member, member_local_cohomology, p_truncate, std_member, torsion_pair_truncate

__all__ = ["SuiteReport", "tight_le", "tight_ge", "coincidence_suite", "inner_suite"]

HALF = Fraction(1, 2)
QUARTER_OFFSETS = [Fraction(k, 4) for k in range(4)]


@dataclass
class SuiteReport:
    counts: dict = field(default_factory=dict)
    failures: list = field(default_factory=list)

    def record(self, name: str, ok: bool, detail=None):
        c = self.counts.setdefault(name, [0, 0])
        c[0 if ok else 1] += 1
        if not ok and len(self.failures) < 50:
            self.failures.append((name, detail))

    @property
    def ok(self) -> bool:
        return all(f == 0 for _, f in self.counts.values())

    def summary(self) -> str:
        return "\n".join(f"{n}: {p} passed, {f} failed" for n, (p, f) in sorted(self.counts.items()))


def _degrees(x: FreeComplex):
    h = x.cohomology_all()
    return (min(h), max(h)) if h else None


def tight_le(x: FreeComplex):
    """Least half-integer s with x in pD^{<=s} (None for acyclic x)."""
    d = _degrees(x)
    if d is None:
        return None
    s = Fraction(d[0] - 1)
    while not member(x, s, "le"):
        s += HALF
    return s


def tight_ge(x: FreeComplex):
    """Greatest half-integer s with x in pD^{>=s} (None for acyclic x)."""
    d = _degrees(x)
    if d is None:
        return None
    s = Fraction(d[1] + 1)
    while not member(x, s, "ge"):
        s -= HALF
    return s


def coincidence_suite(n: int = 200, seed: int = 0, sampler: ComplexSampler | None = None,
                      cuts=None) -> SuiteReport:
    """torsion-pair vs lattice truncation, and qa_truncate landing classes."""
    sampler = sampler or ComplexSampler()
    cuts = cuts if cuts is not None else [Fraction(k, 2) for k in range(-8, 9)]
    rng = random.Random(seed)
    rep = SuiteReport()
    for idx in range(n):
        x = sampler.draw(rng)
        for s in cuts:
            for flavor in ("le-gt", "lt-ge"):
                t = p_truncate(x, s, flavor)
                u = torsion_pair_truncate(x, s, flavor)
                bad = t.check() + u.check()
                rep.record("triangle invariants", not bad, (idx, str(s), flavor, bad))
                same = same_cohomology(t.lower, u.lower) and same_cohomology(t.upper, u.upper)
                rep.record("torsion pair = lattice truncation", same, (idx, str(s), flavor))
            lo, hi = qa_truncate(x, s, "le"), qa_truncate(x, s, "ge")
            rep.record("qa le lands in pD^{<=s}", member(lo, s, "le"), (idx, str(s)))
            rep.record("qa ge lands in pD^{>=s}", member(hi, s, "ge"), (idx, str(s)))
    return rep


def _std_top(x: FreeComplex, rng):
    d = _degrees(x)
    return Fraction(d[1]) if d else Fraction(rng.randint(-3, 3))


def _std_bottom(x: FreeComplex, rng):
    d = _degrees(x)
    return Fraction(d[0]) if d else Fraction(rng.randint(-3, 3))


def _or_random(s, rng):
    return s if s is not None else Fraction(rng.randint(-6, 6), 2)


def inner_suite(pairs: int = 500, seed: int = 0, sampler: ComplexSampler | None = None) -> SuiteReport:
    """Hom vanishing, the four inner bounds, the local cohomology criterion and the
    sandwich inclusions, each on ``pairs`` random draws.

    Cuts are chosen at the tight bound plus a random quarter offset, so every
    premise holds and the conclusions are tested near their edge.
    """
    sampler = sampler or ComplexSampler(max_rank=3, lo=-2, hi=2, bound=4)
    rng = random.Random(seed)
    rep = SuiteReport()

    def up(s):   # premise cut for le families
        return s + rng.choice(QUARTER_OFFSETS)

    def down(s):  # premise cut for ge families
        return s - rng.choice(QUARTER_OFFSETS)

    for idx in range(pairs):
        f, g = sampler.draw(rng), sampler.draw(rng)
        hom, ten = hom_complex(f, g), tensor_complex(f, g)
        # F in pD^{<=c}, G in pD^{>=c'} => RHom(F, G) in D^{>=c'-c}
        c, c2 = up(_or_random(tight_le(f), rng)), down(_or_random(tight_ge(g), rng))
        assert member(f, c, "le") and member(g, c2, "ge")
        rep.record("hom vanishing", std_member(hom, c2 - c, "ge"), (idx, str(c), str(c2)))
        # (i) F in pD^{<=c}, G in D^{<=c'} => F (x) G in pD^{<=c+c'}
        c2 = up(_std_top(g, rng))
        rep.record("inner (i)", member(ten, c + c2, "le"), (idx, str(c), str(c2)))
        # (ii) F in D^{<=c}, G in pD^{>=c'} => RHom(F, G) in pD^{>=c'-c}
        c = up(_std_top(f, rng))
        c2 = down(_or_random(tight_ge(g), rng))
        rep.record("inner (ii)", member(hom, c2 - c, "ge"), (idx, str(c), str(c2)))
        # (iii) F in pD^{>=c}, G in D^{<=c'} => RHom(F, G) in pD^{<=c'-c}
        c = down(_or_random(tight_ge(f), rng))
        c2 = up(_std_top(g, rng))
        rep.record("inner (iii)", member(hom, c2 - c, "le"), (idx, str(c), str(c2)))
        # (iv) F in pD^{>=c}, G in pD^{>=c'} => F (x) G in D^{>=c+c'}
        c2 = down(_or_random(tight_ge(g), rng))
        rep.record("inner (iv)", std_member(ten, c + c2, "ge"), (idx, str(c), str(c2)))
        # local cohomology criterion, at a random quarter cut
        for x in (f, g):
            c = Fraction(rng.randint(-16, 16), 4)
            rep.record("local cohomology criterion", member(x, c, "ge") == member_local_cohomology(x, c),
                       (idx, str(c)))
        # sandwich D^{<=c} in pD^{<=c} in D^{<=c+1/2}, D^{>=c+1/2} in pD^{>=c} in D^{>=c}
        c = Fraction(rng.randint(-16, 16), 4)
        ok = (not std_member(f, c, "le") or member(f, c, "le")) and \
             (not member(f, c, "le") or std_member(f, c + HALF, "le")) and \
             (not std_member(f, c + HALF, "ge") or member(f, c, "ge")) and \
             (not member(f, c, "ge") or std_member(f, c, "ge"))
        rep.record("sandwich", ok, (idx, str(c)))
    return rep
