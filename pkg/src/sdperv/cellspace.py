"""Constructible complexes on finite cell posets.

A :class:`SheafComplex` is a bounded complex of finite sums of the
projective sheaves Z_{U_s!} (value Z at t iff s <= t). A differential entry
from a generator at t to a generator at s may be nonzero only when s <= t.
Stalks are subcomplexes, Hom between models is computed termwise, and every
other functor goes through a :class:`ValueSheaf` (a strictly functorial
diagram of free complexes over the poset) that is re-resolved.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterable

from . import _lab
from ._lab import Lab
from ._reduce import reduce_complex
from .dz import FreeComplex, from_labelled
from .intlin import FgAbGroup, IntMatrix
from .poset import (PosetError, SimplicialComplex, StratPoset, face_poset, product_cell,
                    product_poset)

__all__ = [
    "StratPoset", "SimplicialComplex", "face_poset", "product_poset", "PosetError",
    "SheafComplex", "SheafMap", "ValueSheaf", "SheafError", "resolve", "constant_sheaf",
    "skyscraper", "indicator_sheaf", "stalk", "sections", "sections_c", "costalk",
    "costalk_via_dual", "extend_zero", "restrict", "restrict_closed", "restrict_open",
    "pushforward_open", "pushforward_closed", "shriek_closed", "verdier_dual",
    "external_tensor", "tensor", "sheaf_hom", "global_hom", "hom_complex", "tensor_module",
]


class SheafError(ValueError):
    pass


def _cplx_of_lab(lab: Lab) -> FreeComplex:
    return from_labelled(lab.basis, lab.diff)


# ---------------------------------------------------------------------------
# projective models


class SheafComplex:
    """Projective model on ``base``; keys are ints 0..N-1 ordered by degree."""

    __slots__ = ("base", "lab", "_cache")

    def __init__(self, base: StratPoset, lab: Lab, check: bool = True, _ren=None):
        self.base = base
        keys = sorted(lab.keys(), key=lambda x: (lab.deg(x), base.pos(lab.tag[x])))
        ren = {x: n for n, x in enumerate(keys)}
        if _ren is not None:
            _ren.update(ren)
        self.lab = Lab({k: [ren[x] for x in v] for k, v in lab.basis.items()},
                       {ren[x]: {ren[y]: c for y, c in lab.diff[x].items() if c}
                        for x in keys},
                       {ren[x]: lab.tag[x] for x in keys})
        self._cache = {}
        if check:
            for x, dx in self.lab.diff.items():
                tx = self.lab.tag[x]
                if tx not in base:
                    raise SheafError(f"generator at unknown cell {tx!r}")
                for y in dx:
                    if not base.leq(self.lab.tag[y], tx):
                        raise SheafError(f"differential from cell {tx!r} to "
                                         f"{self.lab.tag[y]!r} violates the support condition")
            if not self.lab.check_d2():
                raise SheafError("d o d != 0")

    # -- basics -------------------------------------------------------------
    @classmethod
    def build(cls, base: StratPoset, lab: Lab, check: bool = False):
        """Construct and also return the renaming original key -> normalized key."""
        ren: dict = {}
        k = cls(base, lab, check=check, _ren=ren)
        return k, ren

    @classmethod
    def zero(cls, base: StratPoset) -> "SheafComplex":
        return cls(base, Lab({}, {}, {}), check=False)

    @classmethod
    def from_parts(cls, base: StratPoset, gens: dict, diffs: dict) -> "SheafComplex":
        """``gens``: degree -> [cell]; ``diffs``: degree -> IntMatrix (rows: next degree)."""
        basis = {k: [(k, i) for i in range(len(v))] for k, v in gens.items()}
        tag = {(k, i): c for k, v in gens.items() for i, c in enumerate(v)}
        diff = {x: {} for x in tag}
        for k, m in diffs.items():
            if not isinstance(m, IntMatrix):
                m = IntMatrix.from_rows(m, cols=len(gens.get(k, [])))
            if m.shape != (len(gens.get(k + 1, [])), len(gens.get(k, []))):
                raise SheafError(f"differential in degree {k} has shape {m.shape}")
            for (r, c), v in m.data.items():
                diff[(k, c)][(k + 1, r)] = v
        return cls(base, Lab(basis, diff, tag))

    def degrees(self) -> list:
        return self.lab.degrees()

    def gens(self, k: int) -> list:
        return [self.lab.tag[x] for x in self.lab.basis.get(k, [])]

    def matrix(self, k: int) -> IntMatrix:
        src = self.lab.basis.get(k, [])
        tgt = self.lab.basis.get(k + 1, [])
        pos = {y: n for n, y in enumerate(tgt)}
        data = {}
        for c, x in enumerate(src):
            for y, v in self.lab.diff[x].items():
                data[(pos[y], c)] = v
        return IntMatrix(len(tgt), len(src), data)

    def size(self) -> int:
        return len(self.lab)

    def is_zero_model(self) -> bool:
        return len(self.lab) == 0

    def __repr__(self):
        r = {k: len(v) for k, v in sorted(self.lab.basis.items())}
        return f"SheafComplex(base={self.base!r}, gens={r})"

    def to_json(self) -> dict:
        degs = self.degrees()
        if not degs:
            return {"lo": 0, "generators": [], "diffs": []}
        lo, hi = degs[0], degs[-1]
        return {"lo": lo,
                "generators": [[{"cell": c} for c in self.gens(k)] for k in range(lo, hi + 1)],
                "diffs": [self.matrix(k).to_rows() for k in range(lo, hi)]}

    @classmethod
    def from_json(cls, base: StratPoset, obj) -> "SheafComplex":
        try:
            lo = int(obj.get("lo", 0))
            gens = {lo + i: [g["cell"] for g in row] for i, row in enumerate(obj["generators"])}
            diffs = {}
            for i, rows in enumerate(obj.get("diffs", [])):
                k = lo + i
                diffs[k] = IntMatrix.from_rows(rows, cols=len(gens.get(k, [])))
        except (KeyError, TypeError, AttributeError) as e:
            raise SheafError(f"malformed sheaf description: {e}") from None
        return cls.from_parts(base, gens, diffs)

    # -- stalks -------------------------------------------------------------
    def stalk_lab(self, c) -> Lab:
        if c not in self.base:
            raise SheafError(f"unknown cell {c!r}")
        key = ("stalk", c)
        if key not in self._cache:
            b = self.base
            self._cache[key] = self.lab.sub(x for x in self.lab.keys() if b.leq(self.lab.tag[x], c))
        return self._cache[key]

    def stalk(self, c) -> FreeComplex:
        key = ("stalkc", c)
        if key not in self._cache:
            self._cache[key] = _cplx_of_lab(self.stalk_lab(c))
        return self._cache[key]

    def stalk_cohomology(self) -> dict:
        """cell -> {degree: group} (only nonzero entries)."""
        return {c: self.stalk(c).cohomology_all() for c in self.base.ids}

    def is_acyclic(self) -> bool:
        return all(not v for v in self.stalk_cohomology().values())

    # -- reduction ----------------------------------------------------------
    def minimal(self):
        """Same-cell cancellation; returns (small, incl: small -> self, proj: self -> small)."""
        if "min" not in self._cache:
            red = self.lab.reduce(use_tags=True)
            slab = Lab(red.basis, red.diff, {x: red.tag[x] for x in red.diff})
            small = SheafComplex(self.base, slab, check=False)
            # translate reduced keys to the normalized keys of ``small``
            keys = sorted(slab.keys(), key=lambda x: (slab.deg(x), self.base.pos(slab.tag[x])))
            ren = {x: n for n, x in enumerate(keys)}
            incl = {ren[x]: dict(v) for x, v in red.incl.items()}
            proj = {o: {ren[y]: c for y, c in v.items()} for o, v in red.proj.items()}
            self._cache["min"] = (small, SheafMap(small, self, incl, check=False),
                                  SheafMap(self, small, proj, check=False))
        return self._cache["min"]

    def reduced(self) -> "SheafComplex":
        return self.minimal()[0]

    def shift(self, n: int) -> "SheafComplex":
        return SheafComplex(self.base, _lab.shift(self.lab, n), check=False)

    def rebase(self, base: StratPoset) -> "SheafComplex":
        return SheafComplex(base, self.lab)


def direct_sum(*ks: SheafComplex) -> SheafComplex:
    if not ks:
        raise SheafError("empty direct sum")
    base = ks[0].base
    lab, _ = _lab.direct_sum(*(k.lab for k in ks))
    return SheafComplex(base, lab, check=False)


class SheafMap:
    """Degree-0 chain map of projective models; ``comp[a] = {b: coef}``."""

    __slots__ = ("source", "target", "comp")

    def __init__(self, source: SheafComplex, target: SheafComplex, comp: dict, check=True):
        self.source, self.target = source, target
        self.comp = {a: {b: c for b, c in v.items() if c} for a, v in comp.items()}
        if check:
            b = source.base
            for a, v in self.comp.items():
                for y in v:
                    if not b.leq(target.lab.tag[y], source.lab.tag[a]):
                        raise SheafError("map component violates the support condition")
            if not _lab.is_chain_map(source.lab, target.lab, self.comp):
                raise SheafError("not a chain map")

    def __matmul__(self, other: "SheafMap") -> "SheafMap":
        return SheafMap(other.source, self.target, _lab.compose(self.comp, other.comp), check=False)

    def at_stalk(self, c):
        """Induced map of stalk complexes as a ChainMap of FreeComplex."""
        from .dz import ChainMap
        s, t = self.source.stalk_lab(c), self.target.stalk_lab(c)
        return _lab_map_to_chain(s, t, self.comp, ChainMap)

    def is_quasi_iso(self) -> bool:
        c = cone(self)[0]
        return c.is_acyclic()


def _lab_map_to_chain(s: Lab, t: Lab, comp: dict, ChainMap):
    sc, tc = _cplx_of_lab(s), _cplx_of_lab(t)
    mats = {}
    for k in set(s.basis) | set(t.basis):
        src = s.basis.get(k, [])
        tgt = t.basis.get(k, [])
        pos = {y: n for n, y in enumerate(tgt)}
        data = {}
        for j, a in enumerate(src):
            for y, v in comp.get(a, {}).items():
                if y in pos:
                    data[(pos[y], j)] = v
        mats[k] = IntMatrix(len(tgt), len(src), data)
    return ChainMap(sc, tc, mats)


def cone(f: SheafMap):
    """Returns (C, incl: target -> C, proj: C -> source[1])."""
    c, incl, proj = _lab.cone(f.source.lab, f.target.lab, f.comp)
    cs = SheafComplex(f.source.base, c, check=False)
    # translate to the normalized keys of cs
    keys = sorted(c.keys(), key=lambda x: (c.deg(x), f.source.base.pos(c.tag[x])))
    ren = {x: n for n, x in enumerate(keys)}
    src1 = f.source.shift(1)
    incl_m = {y: {ren[z]: v for z, v in m.items()} for y, m in incl.items()}
    proj_m = {ren[z]: m for z, m in proj.items()}
    return cs, SheafMap(f.target, cs, incl_m, check=False), SheafMap(cs, src1, proj_m, check=False)


def fiber(f: SheafMap):
    """Returns (F, F -> source) with F = cone(f)[-1]."""
    c, incl, proj = _lab.cone(f.source.lab, f.target.lab, f.comp)
    keys = sorted(c.keys(), key=lambda x: (c.deg(x), f.source.base.pos(c.tag[x])))
    ren = {x: n for n, x in enumerate(keys)}
    fb = SheafComplex(f.source.base, _lab.shift(c, -1), check=False)
    to_src = {ren[("s", x)]: {x: 1} for x in f.source.lab.keys()}
    return fb, SheafMap(fb, f.source, to_src, check=False)


# ---------------------------------------------------------------------------
# value sheaves and resolution


class ValueSheaf:
    """Functor from the poset: value(c) is a Lab, restrict(a, b) a sparse chain map
    value(a) -> value(b) for a <= b, strictly functorial."""

    def __init__(self, base: StratPoset, value: Callable, restrict: Callable,
                 support: Iterable | None = None):
        self.base = base
        self._value = value
        self._restrict = restrict
        self._vcache: dict = {}
        self.support = None if support is None else set(support)

    def value(self, c) -> Lab:
        if c not in self._vcache:
            self._vcache[c] = self._value(c)
        return self._vcache[c]

    def restrict_vec(self, a, b, vec: dict) -> dict:
        if a == b:
            return dict(vec)
        return self._restrict(a, b, vec)


def _filter_restrict(keep_fn):
    """Restriction given by keeping the coordinates that survive at the target."""
    def r(a, b, vec):
        return {k: v for k, v in vec.items() if keep_fn(b, k)}
    return r


def resolve(vs: ValueSheaf, cells: Iterable | None = None, minimize: bool = True):
    """Projective model P with a quasi-isomorphism P -> vs.

    Cells are processed in (dim, id) order. At a cell s, P(s) is spanned by
    the generators already placed at faces of s; new generators at s mirror
    a minimal model of the fiber of P(s) -> value(s). Returns the model and
    the augmentation (generator -> vector in the value at its own cell).
    """
    base = vs.base
    order = base.ids if cells is None else [c for c in base.ids if c in set(cells)]
    if vs.support is not None:
        sup = vs.support
        order = [c for c in order if c in sup or any(base.leq(f, c) for f in sup)]
    gdeg: dict = {}
    gcell: dict = {}
    gdiff: dict = {}
    gpsi: dict = {}
    by_cell: dict = {}
    counter = 0
    for s in order:
        F = vs.value(s)
        below = [g for f in base.closure(s) if f != s for g in by_cell.get(f, ())]
        if not len(F) and not below:
            continue
        basis: dict = {}
        diff: dict = {}
        for k, v in F.basis.items():
            for x in v:
                key = ("f", x)
                basis.setdefault(k + 1, []).append(key)
                diff[key] = {("f", y): -c for y, c in F.diff[x].items()}
        for g in below:
            key = ("p", g)
            basis.setdefault(gdeg[g], []).append(key)
            d = {("p", h): c for h, c in gdiff[g].items()}
            phi = vs.restrict_vec(gcell[g], s, gpsi[g])
            for y, c in phi.items():
                d[("f", y)] = d.get(("f", y), 0) - c
            diff[key] = {k: c for k, c in d.items() if c}
        if not basis:
            continue
        red = reduce_complex(basis, diff, None, track=True)
        new: dict = {}
        for m in sorted(red.basis):
            for e in red.basis[m]:
                new[e] = counter
                gdeg[counter] = m - 1
                gcell[counter] = s
                by_cell.setdefault(s, []).append(counter)
                counter += 1
        for e, g in new.items():
            lift = red.incl[e]
            d = {}
            psi = {}
            for (kind, x), c in lift.items():
                if kind == "p":
                    d[x] = d.get(x, 0) + c
                else:
                    psi[x] = psi.get(x, 0) - c
            for y, c in red.diff[e].items():
                d[new[y]] = d.get(new[y], 0) - c
            gdiff[g] = {x: c for x, c in d.items() if c}
            gpsi[g] = {x: c for x, c in psi.items() if c}
    basis: dict = {}
    for g, k in gdeg.items():
        basis.setdefault(k, []).append(g)
    model = SheafComplex(base, Lab(basis, dict(gdiff), dict(gcell)), check=False)
    if minimize:
        model = model.reduced()
    return model


# ---------------------------------------------------------------------------
# basic objects


def indicator_value_sheaf(base: StratPoset, region: Iterable, module: FreeComplex | None = None):
    """Z (or ``module``) on a locally closed region, zero elsewhere, identity maps."""
    region = set(region)
    if not base.is_locally_closed(region):
        raise SheafError("region is not locally closed")
    m = module if module is not None else FreeComplex.from_dict({0: 1}, {})
    basis, diff = m.labelled()
    val = Lab(basis, diff)
    empty = Lab({}, {})

    def value(c):
        return val if c in region else empty

    def restrict(a, b, vec):
        return vec if b in region else {}

    return ValueSheaf(base, value, restrict, support=region)


def indicator_sheaf(base: StratPoset, region: Iterable) -> SheafComplex:
    """Projective model of Z extended by zero from a locally closed region."""
    region = frozenset(region)
    return _indicator_cached(base, region)


@lru_cache(maxsize=256)
def _indicator_cached(base, region):
    if region == frozenset(base.ids) and base.closed:
        return constant_sheaf(base)
    if len(region) == 1:
        (c,) = region
        return skyscraper(base, c)
    return resolve(indicator_value_sheaf(base, region))


def tensor_module(k: SheafComplex, m: FreeComplex) -> SheafComplex:
    """K (x) M for a complex M of free abelian groups (Koszul signs)."""
    if m.is_zero_complex():
        return SheafComplex.zero(k.base)
    mb, md = m.labelled()
    basis: dict = {}
    diff: dict = {}
    tag: dict = {}
    mdeg = {x: d for d, v in mb.items() for x in v}
    for x in k.lab.keys():
        dx = k.lab.deg(x)
        for y, dy in mdeg.items():
            key = (x, y)
            basis.setdefault(dx + dy, []).append(key)
            tag[key] = k.lab.tag[x]
            out = {(x2, y): c for x2, c in k.lab.diff[x].items()}
            s = -1 if dx % 2 else 1
            for y2, c in md[y].items():
                out[(x, y2)] = s * c
            diff[key] = out
    return SheafComplex(k.base, Lab(basis, diff, tag), check=False)


def constant_sheaf(base: StratPoset, m: FreeComplex | None = None) -> SheafComplex:
    """Z_X (x) M. On a closed cell complex: Z_{U_s!} in degree -dim s with
    incidence differential (cellular chains of each closed cell)."""
    if m is None:
        m = FreeComplex.from_dict({0: 1}, {})
    if base.closed:
        basis: dict = {}
        diff: dict = {}
        tag: dict = {}
        for c in base.ids:
            basis.setdefault(-base.dim(c), []).append(c)
            tag[c] = c
            diff[c] = {f: base.inc(f, c) for f in base.faces(c)}
        z = SheafComplex(base, Lab(basis, diff, tag), check=False)
    else:
        z = resolve(indicator_value_sheaf(base, base.ids))
    if m.ranks == (1,) and m.lo == 0:
        return z
    return tensor_module(z, m)


def skyscraper(base: StratPoset, c, m: FreeComplex | None = None) -> SheafComplex:
    """Z (x) M supported on the single cell c (extension by zero from U_c of the
    closed cell); generators at t >= c in degree dim c - dim t."""
    if c not in base:
        raise SheafError(f"unknown cell {c!r}")
    basis: dict = {}
    diff: dict = {}
    tag: dict = {}
    d0 = base.dim(c)
    for t in base.star(c):
        basis.setdefault(d0 - base.dim(t), []).append(t)
        tag[t] = t
        diff[t] = {f: base.inc(f, t) for f in base.faces(t) if base.leq(c, f)}
    z = SheafComplex(base, Lab(basis, diff, tag), check=False)
    if m is None or (m.ranks == (1,) and m.lo == 0):
        return z
    return tensor_module(z, m)


# ---------------------------------------------------------------------------
# Hom, sections, costalks


def hom_complex(a: SheafComplex, b: SheafComplex) -> FreeComplex:
    """RHom(A, B) computed from the projective model of A."""
    if a.base is not b.base and a.base.ids != b.base.ids:
        raise SheafError("base mismatch")
    lab = hom_lab(a, b)
    return _cplx_of_lab(lab)


def hom_lab(a: SheafComplex, b: SheafComplex) -> Lab:
    base = a.base
    return _lab.hom(a.lab, b.lab, lambda tb, ta: base.leq(tb, ta), below=base.closure)


def global_hom(a: SheafComplex, b: SheafComplex) -> FgAbGroup:
    """Hom in the derived category: H^0 RHom(A, B)."""
    return hom_complex(a, b).cohomology(0)


def stalk(k: SheafComplex, c) -> FreeComplex:
    return k.stalk(c)


def _check_open(base: StratPoset, u):
    u = list(u)
    for c in u:
        if c not in base:
            raise SheafError(f"unknown cell {c!r}")
    if not base.is_open(u):
        raise SheafError("region is not open (not closed under cofaces)")
    return u


def sections(k: SheafComplex, u: Iterable | None = None) -> FreeComplex:
    """R Gamma(U; K) = RHom(Z_U extended by zero, K)."""
    base = k.base
    u = base.ids if u is None else _check_open(base, u)
    if not u:
        return FreeComplex.zero()
    p = indicator_sheaf(base, u)
    return hom_complex(p, k)


def sections_c_lab(k: SheafComplex, u: Iterable) -> Lab:
    """Compactly supported sections: basis (x, r) for r in U with cell(x) <= r,
    degree deg x + dim r."""
    base = k.base
    u = set(u)
    lab = k.lab
    basis: dict = {}
    diff: dict = {}
    # generators grouped by cell, and for each cell r the generators below it
    for x in lab.keys():
        tx = lab.tag[x]
        dx = lab.deg(x)
        sgn = -1 if dx % 2 else 1
        for r in base.star(tx):
            if r not in u:
                continue
            key = (x, r)
            basis.setdefault(dx + base.dim(r), []).append(key)
            out = {(y, r): c for y, c in lab.diff[x].items()}
            for r2 in base.cofaces(r):
                if r2 in u:
                    out[(x, r2)] = sgn * base.inc(r, r2)
            diff[key] = out
    return Lab(basis, diff)


def sections_c(k: SheafComplex, u: Iterable | None = None) -> FreeComplex:
    base = k.base
    u = base.ids if u is None else _check_open(base, u)
    return _cplx_of_lab(sections_c_lab(k, u))


def costalk(k: SheafComplex, c) -> FreeComplex:
    """R Gamma_{c}(K) at c: RHom of the skyscraper model at c into K."""
    if c not in k.base:
        raise SheafError(f"unknown cell {c!r}")
    key = ("costalk", c)
    if key not in k._cache:
        k._cache[key] = hom_complex(skyscraper(k.base, c), k)
    return k._cache[key]


def costalk_via_dual(k: SheafComplex, c) -> FreeComplex:
    """Cross-check: costalk(K, c) = dual(stalk(D K, c))[dim c]."""
    from .dz import dual, shift
    return shift(dual(verdier_dual(k).stalk(c)), k.base.dim(c))


# ---------------------------------------------------------------------------
# restriction and extension


def extend_zero(k: SheafComplex, x: StratPoset) -> SheafComplex:
    """j_! for an open sub-poset: generators keep their cells."""
    cells = k.base.ids
    for c in cells:
        if c not in x:
            raise SheafError(f"cell {c!r} not in the ambient space")
    if not x.is_open(cells):
        raise SheafError("base is not open in the ambient space")
    return SheafComplex(x, k.lab, check=False)


def restrict_closed(k: SheafComplex, z: Iterable) -> SheafComplex:
    z = list(z)
    base = k.base
    if not base.is_closed(z):
        raise SheafError("region is not closed (not closed under faces)")
    zb = base.sub(z, name=f"{base.name}|closed")
    keep = set(z)
    lab = k.lab.sub(x for x in k.lab.keys() if k.lab.tag[x] in keep)
    return SheafComplex(zb, lab, check=False)


def restrict_open(k: SheafComplex, u: Iterable) -> SheafComplex:
    base = k.base
    u = _check_open(base, u)
    ub = base.sub(u, name=f"{base.name}|open")
    keep = set(u)
    if all(k.lab.tag[x] in keep for x in k.lab.keys()):
        return SheafComplex(ub, k.lab, check=False)

    def value(c):
        return k.stalk_lab(c)

    def restr(a, b, vec):
        return vec

    return resolve(ValueSheaf(ub, value, restr))


def restrict(k: SheafComplex, w: Iterable) -> SheafComplex:
    """Restriction to a locally closed union of cells W = U n Z."""
    w = list(w)
    base = k.base
    for c in w:
        if c not in base:
            raise SheafError(f"unknown cell {c!r}")
    if not base.is_locally_closed(w):
        raise SheafError("region is not locally closed")
    z = base.down_closure(w)
    kz = restrict_closed(k, z) if len(z) < len(base) else k
    if len(w) == len(z):
        return kz
    return restrict_open(kz, w)


def pushforward_closed(k: SheafComplex, x: StratPoset) -> SheafComplex:
    """i_* = i_! for a closed sub-poset."""
    z = set(k.base.ids)
    if not x.is_closed(z):
        raise SheafError("base is not closed in the ambient space")
    empty = Lab({}, {})

    def value(c):
        return k.stalk_lab(c) if c in z else empty

    def restr(a, b, vec):
        return vec if b in z else {}

    return resolve(ValueSheaf(x, value, restr, support=z))


def pushforward_open(g: SheafComplex, x: StratPoset) -> SheafComplex:
    """Rj_* for an open sub-poset, as D_X j_! D_U."""
    return verdier_dual(extend_zero(verdier_dual(g), x))


def shriek_closed(k: SheafComplex, z: Iterable) -> SheafComplex:
    """i^! for a closed union of cells, as D_Z i^{-1} D_X."""
    return verdier_dual(restrict_closed(verdier_dual(k), z))


# ---------------------------------------------------------------------------
# duality and tensor products


def dual_lab(lab: Lab) -> Lab:
    """Hom(-, Z[0]) with keys kept: degree n holds duals of degree -n,
    d^n = -(-1)^n (d^(-n-1))^T."""
    basis = {-k: list(v) for k, v in lab.basis.items()}
    diff: dict = {x: {} for x in lab.keys()}
    for x in lab.keys():
        n = -lab.deg(x) - 1      # x* sits in dual degree -deg x; sources of d into x
        for y, c in lab.diff[x].items():
            # (d^T): y* -> x* with coefficient c; y* has dual degree -deg y = n
            s = -1 if n % 2 == 0 else 1
            diff[y][x] = s * c
    return Lab(basis, diff)


def dual_value_sheaf(k: SheafComplex) -> ValueSheaf:
    base = k.base

    def value(c):
        return dual_lab(sections_c_lab(k, base.star(c)))

    def keep(b, key):
        return base.leq(b, key[1])

    return ValueSheaf(base, value, _filter_restrict(keep))


def verdier_dual(k: SheafComplex) -> SheafComplex:
    """D K with (D K)(U_c) = Hom(R Gamma_c(U_c; K), Z)."""
    return resolve(dual_value_sheaf(k))


def tensor(k: SheafComplex, l: SheafComplex) -> SheafComplex:
    """K (x) L on the same base (stalkwise tensor product), re-resolved."""
    if k.base.ids != l.base.ids:
        raise SheafError("base mismatch")
    base = k.base

    def value(c):
        a, b = k.stalk_lab(c), l.stalk_lab(c)
        basis: dict = {}
        diff: dict = {}
        for x in a.keys():
            for y in b.keys():
                basis.setdefault(a.deg(x) + b.deg(y), []).append((x, y))
                s = -1 if a.deg(x) % 2 else 1
                out = {(x2, y): c for x2, c in a.diff[x].items()}
                for y2, c in b.diff[y].items():
                    out[(x, y2)] = s * c
                diff[(x, y)] = out
        return Lab(basis, diff)

    return resolve(ValueSheaf(base, value, lambda a, b, vec: vec))


def sheaf_hom(k: SheafComplex, l: SheafComplex) -> SheafComplex:
    """R Hom(K, L) = D(K (x) D L)."""
    return verdier_dual(tensor(k, verdier_dual(l)))


def external_tensor(k: SheafComplex, l: SheafComplex) -> SheafComplex:
    """K boxtimes L on the product poset."""
    base = product_poset(k.base, l.base)
    basis: dict = {}
    diff: dict = {}
    tag: dict = {}
    for x in k.lab.keys():
        for y in l.lab.keys():
            dx = k.lab.deg(x)
            key = (x, y)
            basis.setdefault(dx + l.lab.deg(y), []).append(key)
            tag[key] = product_cell(k.lab.tag[x], l.lab.tag[y])
            s = -1 if dx % 2 else 1
            out = {(x2, y): c for x2, c in k.lab.diff[x].items()}
            for y2, c in l.lab.diff[y].items():
                out[(x, y2)] = s * c
            diff[key] = out
    return SheafComplex(base, Lab(basis, diff, tag), check=False)
