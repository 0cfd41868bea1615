"""Self-dual and Kashiwara-Schapira t-structures on cell-constructible complexes.

Membership is read off stalks (for the <= sides) and costalks
R Gamma_{sigma}(K) (for the >= sides) at the shifted cut c - dim(sigma)/2.
Truncation follows the descending skeleton induction: at each dimension k
the costalks of L = cone(lower -> K) on the k-cells are truncated in D^b(Z)
and glued back through the evaluation maps S_sigma (x) N_sigma -> L.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable

from . import _lab, tmod
from ._lab import Lab
from .cellspace import (SheafComplex, SheafError, SheafMap, cone as sheaf_cone, constant_sheaf,
                        costalk, extend_zero, fiber as sheaf_fiber, global_hom, hom_lab,
                        pushforward_closed, pushforward_open, restrict, restrict_closed,
                        restrict_open, sections, sections_c, shriek_closed, skyscraper,
                        tensor_module, verdier_dual, external_tensor)
from .dz import CutParam, FreeComplex, OPPOSITE, dual, std_truncate_with_map
from .intlin import codim_support
from .poset import StratPoset

__all__ = [
    "PDim", "pdim", "member_sd", "member_ks", "member_sd_dual", "member_sd_pdim", "member_sd_pointwise",
    "membership_witness",
    "SheafTriangle", "sd_truncate", "ks_truncate", "check_funct", "FunctReport",
    "verify_tstructure", "VerifyReport", "sd_range", "check_extpr", "random_sheaf", "stalkwise_equal", "find_iso", "degree0_cycles", "permuted_base",
]


def _cut(c) -> CutParam:
    return c if isinstance(c, CutParam) else CutParam.parse(c)


# ---------------------------------------------------------------------------
# pdim and membership


@dataclass(frozen=True, order=True)
class PDim:
    """Integer or -infinity (only for the zero sheaf)."""

    value: float

    @property
    def is_neg_inf(self) -> bool:
        return self.value == -math.inf

    def __str__(self):
        return "-inf" if self.is_neg_inf else str(int(self.value))


def pdim(k: SheafComplex, i: int) -> PDim:
    """max over cells of dim(sigma) - codim H^i(K_sigma), over cells where it is nonzero."""
    best = -math.inf
    for c in k.base.ids:
        h = k.stalk(c).cohomology(i)
        if h.is_zero():
            continue
        best = max(best, k.base.dim(c) - codim_support(h))
    return PDim(best)


def _sides(side: str):
    if side not in ("le", "lt", "ge", "gt"):
        raise ValueError(f"unknown side {side!r}")
    return side


def member_sd(k: SheafComplex, c, side: str) -> bool:
    """K in pD^{side c}: stalk test for le/lt, costalk test for ge/gt."""
    c = _cut(c)
    _sides(side)
    b = k.base
    for s in b.ids:
        shifted = c - Fraction(b.dim(s), 2)
        x = k.stalk(s) if side in ("le", "lt") else costalk(k, s)
        if not tmod.member(x, shifted, side):
            return False
    return True


def member_sd_dual(k: SheafComplex, c, side: str, dk: SheafComplex | None = None) -> bool:
    """Cross-check: member_sd(D K, -c, opposite side)."""
    dk = verdier_dual(k) if dk is None else dk
    return member_sd(dk, -_cut(c), OPPOSITE[side])


def member_sd_pdim(k: SheafComplex, c) -> bool:
    """Cross-check of the <= side through pdim(H^i K) <= -2(i - c)."""
    c = _cut(c).c
    degs = set()
    for s in k.base.ids:
        degs.update(k.stalk(s).cohomology_all())
    return all(pdim(k, i).value <= -2 * (i - c) for i in degs)


def point_costalk(k: SheafComplex, s) -> FreeComplex:
    """(R Gamma_{x} K)_x for a point x inside the open cell s: costalk(K, s)[-dim s]."""
    from .dz import shift
    return shift(costalk(k, s), -k.base.dim(s))


def member_sd_pointwise(k: SheafComplex, c) -> bool:
    """Cross-check of the >= side through the dimension count

        dim {x : (R Gamma_{x} K)_x not in pD^{>=c+j/2}} < j   for all j >= 0.

    In the cell model the set is a union of open cells, so its dimension is the
    largest dimension of a bad cell.
    """
    c = _cut(c)
    b = k.base
    pts = {s: point_costalk(k, s) for s in b.ids}
    for j in range(b.top_dim + 2):
        bad = [b.dim(s) for s, x in pts.items() if not tmod.member(x, c + Fraction(j, 2), "ge")]
        if bad and max(bad) >= j:
            return False
    return True


def _std_family_ok(x: FreeComplex, c: Fraction, side: str) -> bool:
    return tmod.std_member(x, c, side)


def member_ks(k: SheafComplex, c, side: str) -> bool:
    """K in KS^{side c}: stalks in D^{<= c - dim/2}, costalks in D^{>= c - dim/2}."""
    c = _cut(c)
    _sides(side)
    b = k.base
    for s in b.ids:
        shifted = (c - Fraction(b.dim(s), 2)).c
        x = k.stalk(s) if side in ("le", "lt") else costalk(k, s)
        if not _std_family_ok(x, shifted, side):
            return False
    return True


def membership_witness(k: SheafComplex, c, side: str, structure: str = "sd"):
    """None if K is in the class, else (cell, "stalk"|"costalk", local cut, cohomology)."""
    c = _cut(c)
    _sides(side)
    b = k.base
    for s in b.ids:
        shifted = c - Fraction(b.dim(s), 2)
        kind = "stalk" if side in ("le", "lt") else "costalk"
        x = k.stalk(s) if kind == "stalk" else costalk(k, s)
        ok = tmod.member(x, shifted, side) if structure == "sd" else \
            _std_family_ok(x, shifted.c, side)
        if not ok:
            return s, kind, shifted, x.cohomology_all()
    return None


# ---------------------------------------------------------------------------
# truncation


@dataclass
class SheafTriangle:
    """lower --alpha--> K --beta--> upper --> lower[1], upper = cone(alpha)."""

    k: SheafComplex
    lower: SheafComplex
    upper: SheafComplex
    alpha: SheafMap
    beta: SheafMap
    cut: CutParam
    flavor: str
    structure: str = "sd"
    steps: list = field(default_factory=list)

    def check(self, member: Callable | None = None) -> list[str]:
        member = member or (member_sd if self.structure == "sd" else member_ks)
        bad = []
        lo_side, up_side = tmod.flavor_sides(self.flavor)
        if not member(self.lower, self.cut, lo_side):
            bad.append(f"lower not in {lo_side} {self.cut}")
        if not member(self.upper, self.cut, up_side):
            bad.append(f"upper not in {up_side} {self.cut}")
        c, _, _ = sheaf_cone(self.alpha)
        for s in self.k.base.ids:
            if c.stalk(s).cohomology_all() != self.upper.stalk(s).cohomology_all():
                bad.append(f"cone(alpha) differs from upper at {s}")
                break
        return bad


def _trivial_triangle(k: SheafComplex, c, flavor, structure, lower_is_k: bool) -> SheafTriangle:
    z = SheafComplex.zero(k.base)
    if lower_is_k:
        alpha = SheafMap(k, k, {x: {x: 1} for x in k.lab.keys()}, check=False)
    else:
        alpha = SheafMap(z, k, {}, check=False)
    upper, beta, _ = sheaf_cone(alpha)
    return SheafTriangle(k, k if lower_is_k else z, upper, alpha, beta, _cut(c), flavor, structure)


def _local_truncation(structure: str, c: CutParam, flavor: str):
    """Returns fn(M, k) -> (N, ChainMap N -> M) on costalks of k-cells."""
    lo_side, _ = tmod.flavor_sides(flavor)

    def sd(m: FreeComplex, dim: int):
        t = tmod.p_truncate(m, c - Fraction(dim, 2), flavor)
        return t.lower, t.alpha

    def ks(m: FreeComplex, dim: int):
        x = (c - Fraction(dim, 2)).c
        n = math.floor(x) if lo_side == "le" else math.ceil(x) - 1
        return std_truncate_with_map(m, n, "le")

    return sd if structure == "sd" else ks


def _truncate(k: SheafComplex, c, flavor: str, structure: str, shortcut: bool) -> SheafTriangle:
    c = _cut(c)
    lo_side, up_side = tmod.flavor_sides(flavor)
    member = member_sd if structure == "sd" else member_ks
    if shortcut:
        if member(k, c, lo_side):
            return _trivial_triangle(k, c, flavor, structure, True)
        if member(k, c, up_side):
            return _trivial_triangle(k, c, flavor, structure, False)
    base = k.base
    local = _local_truncation(structure, c, flavor)
    a = SheafComplex.zero(base)
    alpha = SheafMap(a, k, {}, check=False)
    steps = []
    for dim in range(base.top_dim, -1, -1):
        cells = [s for s in base.ids if base.dim(s) == dim]
        l, k_to_l, _ = sheaf_cone(alpha)
        pieces = []
        for s in cells:
            sk = skyscraper(base, s)
            h = hom_lab(sk, l)
            red = h.reduce(use_tags=False)
            from .dz import from_labelled
            m = from_labelled(red.basis, red.diff)
            if m.is_zero_complex():
                continue
            n, n_to_m = local(m, dim)
            if n.is_zero_complex():
                continue
            pieces.append((s, sk, red, m, n, n_to_m))
        steps.append({"dim": dim, "cells": [p[0] for p in pieces]})
        if not pieces:
            continue
        e_lab, ev = _evaluation(pieces, l)
        e, ren = SheafComplex.build(base, e_lab)
        ev_map = SheafMap(e, l, {ren[x]: v for x, v in ev.items()}, check=False)
        tk2, l_to_tk2, _ = sheaf_cone(ev_map)
        k_to_tk2 = l_to_tk2 @ k_to_l
        a_big, a_to_k = sheaf_fiber(k_to_tk2)
        small, incl, _ = a_big.minimal()
        a = small
        alpha = a_to_k @ incl
    upper, beta, _ = sheaf_cone(alpha)
    return SheafTriangle(k, a, upper, alpha, beta, c, flavor, structure, steps)


def _evaluation(pieces, l: SheafComplex):
    """Lab of sum_s S_s (x) N_s and the evaluation map into L."""
    basis: dict = {}
    diff: dict = {}
    tag: dict = {}
    ev: dict = {}
    for s, sk, red, m, n, n_to_m in pieces:
        nb, nd = n.labelled()
        ndeg = {y: d for d, v in nb.items() for y in v}
        # images of N's basis vectors in the hom complex (keys (x, beta))
        mkeys = {d: red.basis.get(d, []) for d in red.basis}
        img: dict = {}
        for y, d in ndeg.items():
            col = n_to_m.mat(d)
            vec = {}
            idx = y[1]
            for r, key in enumerate(mkeys.get(d, [])):
                v = col[r, idx]
                if v:
                    for hk, w in red.incl[key].items():
                        vec[hk] = vec.get(hk, 0) + v * w
            img[y] = {hk: v for hk, v in vec.items() if v}
        # evaluation: (alpha (x) f) -> (-1)^{|alpha||f|} f(alpha)
        by_src: dict = {}
        for y, vec in img.items():
            for (x, beta), v in vec.items():
                by_src.setdefault((y, beta), {})
                by_src[(y, beta)][x] = by_src[(y, beta)].get(x, 0) + v
        for alpha_ in sk.lab.keys():
            da = sk.lab.deg(alpha_)
            sa = -1 if da % 2 else 1
            for y, dy in ndeg.items():
                key = (s, alpha_, y)
                basis.setdefault(da + dy, []).append(key)
                tag[key] = sk.lab.tag[alpha_]
                out = {(s, a2, y): v for a2, v in sk.lab.diff[alpha_].items()}
                for y2, v in nd[y].items():
                    out[(s, alpha_, y2)] = sa * v
                diff[key] = out
                sign = -1 if (da * dy) % 2 else 1
                tgt = by_src.get((y, alpha_), {})
                ev[key] = {x: sign * v for x, v in tgt.items() if v}
    return Lab(basis, diff, tag), ev


def sd_truncate(k: SheafComplex, c, flavor: str = "le-gt", shortcut: bool = True) -> SheafTriangle:
    """Truncation triangle for (pD^{<=c}, pD^{>c}) or (pD^{<c}, pD^{>=c})."""
    return _truncate(k, c, flavor, "sd", shortcut)


def ks_truncate(k: SheafComplex, c, flavor: str = "le-gt", shortcut: bool = True) -> SheafTriangle:
    """Same skeleton induction with standard truncations (perversity ceil(c - n/2))."""
    return _truncate(k, c, flavor, "ks", shortcut)


# ---------------------------------------------------------------------------
# comparisons


def stalkwise_equal(a: SheafComplex, b: SheafComplex) -> bool:
    if a.base.ids != b.base.ids and set(a.base.ids) != set(b.base.ids):
        return False
    return all(a.stalk(s).cohomology_all() == b.stalk(s).cohomology_all() for s in a.base.ids)


def degree0_cycles(a: SheafComplex, b: SheafComplex):
    """Yield chain maps A -> B from a basis of degree 0 cycles of a minimal Hom(A, B)."""
    from .dz import from_labelled
    from .intlin import kernel_basis
    red = hom_lab(a, b).reduce(use_tags=False)
    keys = red.basis.get(0, [])
    if not keys:
        return
    h = from_labelled(red.basis, red.diff)
    z = kernel_basis(h.d(0))
    for j in range(z.cols):
        comp: dict = {}
        for i, e in enumerate(keys):
            v = z[i, j]
            if not v:
                continue
            for (x, al), w in red.incl[e].items():
                row = comp.setdefault(al, {})
                row[x] = row.get(x, 0) + v * w
        yield SheafMap(a, b, comp, check=False)


def find_iso(a: SheafComplex, b: SheafComplex) -> SheafMap | None:
    """Search the degree 0 cycles of a minimal Hom(A, B) for a quasi-isomorphism.

    Only a certificate: None means no basis cycle of the minimal model works.
    """
    if not stalkwise_equal(a, b):
        return None
    if a.is_acyclic():
        return SheafMap(a, b, {}, check=False)
    for f in degree0_cycles(a, b):
        if f.is_quasi_iso():
            return f
    return None


def permuted_base(base: StratPoset, rng: random.Random) -> StratPoset:
    cells = [(s, base.dim(s)) for s in base.ids]
    rng.shuffle(cells)
    cov = list(base.covers)
    rng.shuffle(cov)
    return StratPoset(tuple(cells), tuple(cov), dict(base.incidence), closed=base.closed,
                      name=base.name + "~")


# ---------------------------------------------------------------------------
# functoriality


@dataclass
class FunctReport:
    map_kind: str
    d: int
    checks: list = field(default_factory=list)    # (name, premise, conclusion)

    @property
    def ok(self) -> bool:
        return all(conc for _, prem, conc in self.checks if prem)

    def lines(self) -> list[str]:
        return [f"{name}: premise={prem} conclusion={conc}" for name, prem, conc in self.checks]


def check_funct(f, k: SheafComplex, c) -> FunctReport:
    """Shift bounds for f^{-1}, f^!, Rf_*, Rf_! with fibres of dimension <= d.

    ``f`` is ("inclusion", cells) for a locally closed union of cells, or
    ("constant",) for the map to a point.
    """
    c = _cut(c)
    base = k.base
    half = Fraction(1, 2)
    if f[0] == "inclusion":
        w = list(f[1])
        if not base.is_locally_closed(w):
            raise SheafError("inclusion of a non locally closed region")
        d = 0
        z = base.down_closure(w)
        zb = base.sub(z)
        rep = FunctReport("inclusion", d)
        g_le, g_ge = member_sd(k, c, "le"), member_sd(k, c, "ge")
        inv = restrict(k, w)
        rep.checks.append(("(i) f^-1", g_le, (not g_le) or member_sd(inv, c + d * half, "le")))
        kz = shriek_closed(k, z) if len(z) < len(base) else k
        shr = restrict_open(kz, w) if len(w) < len(z) else kz
        rep.checks.append(("(ii) f^!", g_ge, (not g_ge) or member_sd(shr, c - d * half, "ge")))
        fw = inv
        f_ge, f_le = member_sd(fw, c, "ge"), member_sd(fw, c, "le")
        if len(w) < len(z):
            wb = fw.base
            star_fw = pushforward_open(fw, zb)
            shriek_fw = extend_zero(fw, zb)
        else:
            star_fw = shriek_fw = fw.rebase(zb) if fw.base is not zb else fw
        if len(z) < len(base):
            push = pushforward_closed(star_fw.rebase(zb), base)
            pushc = pushforward_closed(shriek_fw.rebase(zb), base)
        else:
            push, pushc = star_fw.rebase(base), shriek_fw.rebase(base)
        rep.checks.append(("(iii) Rf_*", f_ge, (not f_ge) or member_sd(push, c - d * half, "ge")))
        rep.checks.append(("(iv) Rf_!", f_le, (not f_le) or member_sd(pushc, c + d * half, "le")))
        return rep
    if f[0] == "constant":
        d = base.top_dim
        rep = FunctReport("constant", d)
        g = sections(k).minimal()[0]
        g_le, g_ge = tmod.member(g, c, "le"), tmod.member(g, c, "ge")
        pull = constant_sheaf(base, g)
        rep.checks.append(("(i) f^-1", g_le, (not g_le) or member_sd(pull, c + d * half, "le")))
        omega = verdier_dual(constant_sheaf(base))
        shr = tensor_module(omega, g)
        rep.checks.append(("(ii) f^!", g_ge, (not g_ge) or member_sd(shr, c - d * half, "ge")))
        f_ge, f_le = member_sd(k, c, "ge"), member_sd(k, c, "le")
        rep.checks.append(("(iii) Rf_*", f_ge,
                           (not f_ge) or tmod.member(sections(k), c - d * half, "ge")))
        rep.checks.append(("(iv) Rf_!", f_le,
                           (not f_le) or tmod.member(sections_c(k), c + d * half, "le")))
        return rep
    raise SheafError(f"unsupported map class {f[0]!r}")


# ---------------------------------------------------------------------------
# random samples and the axiom verifier


def random_sheaf(base: StratPoset, rng: random.Random, max_pieces: int = 3) -> SheafComplex:
    """Sums of shifted random two-term projective complexes, skyscrapers and
    constant sheaves with small coefficient groups."""
    from .cellspace import direct_sum
    parts = []
    ids = base.ids
    for _ in range(rng.randint(1, max_pieces)):
        kind = rng.random()
        if kind < 0.55:
            a = rng.randint(-2, 1)
            src = [rng.choice(ids) for _ in range(rng.randint(0, 2))]
            tgt = [rng.choice(ids) for _ in range(rng.randint(0, 2))]
            rows = [[(rng.randint(-3, 3) if base.leq(t, s) else 0) for s in src] for t in tgt]
            gens = {a: src, a + 1: tgt}
            from .intlin import IntMatrix
            parts.append(SheafComplex.from_parts(base, gens,
                                                 {a: IntMatrix.from_rows(rows, cols=len(src))}))
        else:
            mod = rng.choice([1, 1, 2, 3])
            deg = rng.randint(-1, 1)
            m = FreeComplex.from_dict({deg: 1}, {}) if mod == 1 else \
                FreeComplex.two_term([[mod]], deg - 1)
            if kind < 0.8:
                parts.append(skyscraper(base, rng.choice(ids), m))
            else:
                parts.append(constant_sheaf(base, m))
    return direct_sum(*parts).reduced()


@dataclass
class VerifyReport:
    space: str
    samples: int
    counts: dict = field(default_factory=dict)     # check name -> [passed, failed]
    failures: list = field(default_factory=list)

    def record(self, name: str, ok: bool, info=None):
        p = self.counts.setdefault(name, [0, 0])
        p[0 if ok else 1] += 1
        if not ok:
            self.failures.append((name, info))

    @property
    def ok(self) -> bool:
        return not self.failures

    def summary(self) -> str:
        parts = [f"{n}: {p}/{p + f}" for n, (p, f) in sorted(self.counts.items())]
        return f"{self.space} ({self.samples} samples) " + ", ".join(parts)


def _quarter_grid(lo, hi):
    return [Fraction(n, 4) for n in range(int(4 * lo), int(4 * hi) + 1)]


def sd_range(k: SheafComplex, lo: int = -10, hi: int = 10, member: Callable = None):
    """(largest half-integer c with K in D^{>=c}, smallest with K in D^{<=c}) within [lo, hi].

    Entries are None when no grid value qualifies (e.g. the zero sheaf is everywhere).
    """
    member = member or member_sd
    halfs = [Fraction(n, 2) for n in range(2 * lo, 2 * hi + 1)]
    ge = [c for c in halfs if member(k, c, "ge")]
    le = [c for c in halfs if member(k, c, "le")]
    return (max(ge) if ge else None, min(le) if le else None)


def check_extpr(k: SheafComplex, l: SheafComplex, c, c2) -> tuple[bool, bool]:
    """(premise, conclusion) for: K in pD^{>=c}, L in pD^{>=c2} gives K boxtimes L in KS^{>=c+c2}."""
    c, c2 = _cut(c), _cut(c2)
    prem = member_sd(k, c, "ge") and member_sd(l, c2, "ge")
    if not prem:
        return False, True
    return True, member_ks(external_tensor(k, l), c + c2, "ge")


def _same_stalks(a: SheafComplex, b: SheafComplex) -> bool:
    return all(a.stalk(x).cohomology_all() == b.stalk(x).cohomology_all() for x in a.base.ids)


def verify_tstructure(base: StratPoset, samples: int = 20, seed: int = 0,
                      grid: Iterable | None = None, check_permutation: bool = True,
                      check_products: bool | None = None) -> VerifyReport:
    """Randomized check of the t-structure axioms on ``base``.

    Truncation triangles depend only on the canonical half-integer of the cut,
    so they are computed once per half-integer of the grid and reused.
    Orthogonality is tested within a sample and against the previous sample.
    """
    grid = _quarter_grid(-3, 3) if grid is None else [Fraction(g) for g in grid]
    rng = random.Random(seed)
    rep = VerifyReport(base.name or "space", samples)
    if not grid:
        return rep
    halfs = sorted({CutParam(g).canon_le() for g in grid} | {CutParam(g).canon_lt() for g in grid})
    if check_products is None:
        check_products = len(base.ids) <= 6
    pbase = permuted_base(base, random.Random(seed + 1)) if check_permutation else None
    prev = None
    for n in range(samples):
        k = random_sheaf(base, rng)
        dk = verdier_dual(k)
        rep.record("stalk biduality", stalkwise_equal(k, verdier_dual(dk)), n)
        trunc = {s: sd_truncate(k, s, "le-gt") for s in halfs}
        for g in grid:
            cp = CutParam(g)
            mem = {side: member_sd(k, g, side) for side in ("le", "ge", "lt", "gt")}
            for side in mem:
                rep.record("duality exchange", mem[side] == member_sd(dk, -g, OPPOSITE[side]),
                           (n, str(g), side))
                canon = cp.canonical(side)
                base_side = "le" if side in ("le", "lt") else "ge"
                rep.record("cut collapse", mem[side] == member_sd(k, canon, base_side),
                           (n, str(g), side))
            rep.record("pdim form", mem["le"] == member_sd_pdim(k, g), (n, str(g)))
            rep.record("dimension count form", mem["ge"] == member_sd_pointwise(k, g), (n, str(g)))
            if member_ks(k, g, "le"):
                rep.record("KS<= in sd<=", mem["le"], (n, str(g)))
            if mem["ge"]:
                rep.record("sd>= in KS>=", member_ks(k, g, "ge"), (n, str(g)))
            for flavor in tmod.FLAVORS:
                s = cp.canon_le() if flavor == "le-gt" else cp.canon_lt()
                t = trunc[s]
                lo_side, up_side = tmod.flavor_sides(flavor)
                ok = member_sd(t.lower, g, lo_side) and member_sd(t.upper, g, up_side)
                rep.record("triangle membership", ok, (n, str(g), flavor))
                rep.record("orthogonality", global_hom(t.lower, t.upper).is_zero(),
                           (n, str(g), flavor))
                if prev is not None:
                    pt = prev[s]
                    rep.record("orthogonality", global_hom(t.lower, pt.upper).is_zero()
                               and global_hom(pt.lower, t.upper).is_zero(), (n, str(g), "cross"))
        for s, t in trunc.items():
            rep.record("triangle check", not t.check(), (n, str(s)))
            again = sd_truncate(t.lower, s, "le-gt")
            rep.record("idempotence", _same_stalks(again.lower, t.lower)
                       and again.upper.is_acyclic(), (n, str(s)))
            again = sd_truncate(t.upper, s, "le-gt")
            rep.record("idempotence", again.lower.is_acyclic()
                       and _same_stalks(again.upper, t.upper), (n, str(s)))
        # tau^{<=b} tau^{>=a} = tau^{>=a} tau^{<=b} for a < b, on one random pair
        if len(halfs) >= 2:
            a, b = sorted(rng.sample(halfs, 2))
            ge_a = trunc[a - Fraction(1, 2)].upper if a - Fraction(1, 2) in trunc else \
                sd_truncate(k, a - Fraction(1, 2), "le-gt").upper
            x1 = sd_truncate(ge_a, b, "le-gt").lower
            x2 = sd_truncate(trunc[b].lower, a, "lt-ge").upper
            rep.record("truncations commute", _same_stalks(x1, x2), (n, str(a), str(b)))
        if check_permutation:
            s = rng.choice(halfs)
            kp = SheafComplex(pbase, _lab.Lab(k.lab.basis, dict(k.lab.diff), dict(k.lab.tag)))
            tp = sd_truncate(kp, s, "le-gt", shortcut=False)
            t0 = trunc[s]
            same = all(tp.lower.stalk(x).cohomology_all() == t0.lower.stalk(x).cohomology_all()
                       and tp.upper.stalk(x).cohomology_all() == t0.upper.stalk(x).cohomology_all()
                       for x in base.ids)
            rep.record("uniqueness under permutation", same, (n, str(s)))
        if check_products and prev is not None:
            c1 = sd_range(k, -4, 4)[0]
            c2 = sd_range(prev["k"], -4, 4)[0]
            if c1 is not None and c2 is not None:
                prem, conc = check_extpr(k, prev["k"], c1, c2)
                if prem:
                    rep.record("external product bound", conc, (n, str(c1), str(c2)))
        prev = dict(trunc)
        prev["k"] = k
    return rep
