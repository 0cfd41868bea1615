"""Labelled sparse complexes: basis keys grouped by degree, sparse differential.

These are the working representation for sheaf models, where every key
carries a tag (the cell of a projective generator ``Z_{U_sigma!}``).
"""
from __future__ import annotations

from dataclasses import dataclass, field

from ._reduce import reduce_complex


@dataclass
class Lab:
    basis: dict                      # degree -> list of keys
    diff: dict                       # key -> {key: coef}
    tag: dict = field(default_factory=dict)

    def __post_init__(self):
        self.basis = {k: list(v) for k, v in self.basis.items() if v}
        self._deg = {x: k for k, v in self.basis.items() for x in v}
        for x in self._deg:
            self.diff.setdefault(x, {})

    def deg(self, x) -> int:
        return self._deg[x]

    def keys(self):
        for k in sorted(self.basis):
            yield from self.basis[k]

    def __contains__(self, x):
        return x in self._deg

    def __len__(self):
        return len(self._deg)

    def degrees(self):
        return sorted(self.basis)

    def check_d2(self) -> bool:
        for x in self._deg:
            acc: dict = {}
            for y, v in self.diff[x].items():
                for z, w in self.diff[y].items():
                    acc[z] = acc.get(z, 0) + v * w
            if any(acc.values()):
                return False
        return True

    def sub(self, keep) -> "Lab":
        """Subcomplex (or quotient, caller's responsibility) on the given keys."""
        keep = set(keep)
        return Lab({k: [x for x in v if x in keep] for k, v in self.basis.items()},
                   {x: {y: c for y, c in self.diff[x].items() if y in keep} for x in keep},
                   {x: self.tag.get(x) for x in keep})

    def relabel(self, fn) -> "Lab":
        return Lab({k: [fn(x) for x in v] for k, v in self.basis.items()},
                   {fn(x): {fn(y): c for y, c in dx.items()} for x, dx in self.diff.items()},
                   {fn(x): t for x, t in self.tag.items()})

    def reduce(self, use_tags: bool = True, track: bool = True):
        return reduce_complex(self.basis, self.diff, self.tag if use_tags else None, track=track)


def compose(g: dict, f: dict) -> dict:
    """Sparse map composition g o f, maps given as key -> {key: coef}."""
    out = {}
    for x, fx in f.items():
        acc: dict = {}
        for y, v in fx.items():
            for z, w in g.get(y, {}).items():
                acc[z] = acc.get(z, 0) + v * w
        acc = {z: c for z, c in acc.items() if c}
        if acc:
            out[x] = acc
    return out


def add_maps(*ms, coefs=None) -> dict:
    coefs = coefs or [1] * len(ms)
    out: dict = {}
    for m, s in zip(ms, coefs):
        for x, mx in m.items():
            acc = out.setdefault(x, {})
            for y, v in mx.items():
                w = acc.get(y, 0) + s * v
                if w:
                    acc[y] = w
                else:
                    acc.pop(y, None)
    return {x: v for x, v in out.items() if v}


def apply(m: dict, vec: dict) -> dict:
    acc: dict = {}
    for x, c in vec.items():
        for y, v in m.get(x, {}).items():
            acc[y] = acc.get(y, 0) + c * v
    return {y: c for y, c in acc.items() if c}


def is_chain_map(src: Lab, tgt: Lab, f: dict) -> bool:
    for x in src.keys():
        lhs = apply(tgt.diff, f.get(x, {}))
        rhs = apply(f, src.diff[x])
        if lhs != rhs:
            return False
        for y in f.get(x, {}):
            if tgt.deg(y) != src.deg(x):
                return False
    return True


def shift(a: Lab, n: int, wrap=None) -> Lab:
    """a[n]; keys optionally wrapped by ``wrap``."""
    w = wrap or (lambda x: x)
    s = -1 if n % 2 else 1
    return Lab({k - n: [w(x) for x in v] for k, v in a.basis.items()},
               {w(x): {w(y): s * c for y, c in dx.items()} for x, dx in a.diff.items()},
               {w(x): t for x, t in a.tag.items()})


def direct_sum(*parts: Lab) -> tuple[Lab, list]:
    """Keys become (index, key). Returns the sum and the wrap functions."""
    basis: dict = {}
    diff: dict = {}
    tag: dict = {}
    for n, p in enumerate(parts):
        for k, v in p.basis.items():
            basis.setdefault(k, []).extend((n, x) for x in v)
        for x, dx in p.diff.items():
            diff[(n, x)] = {(n, y): c for y, c in dx.items()}
        for x, t in p.tag.items():
            tag[(n, x)] = t
    return Lab(basis, diff, tag), [(lambda x, n=n: (n, x)) for n in range(len(parts))]


def cone(src: Lab, tgt: Lab, f: dict):
    """C^n = tgt^n + src^(n+1); d(b, a) = (db + f a, -da).

    Keys are ("t", y) and ("s", x). Returns (C, incl: tgt -> C, proj: C -> src[1])
    with the maps as sparse dicts; proj uses the keys of src.
    """
    basis: dict = {}
    diff: dict = {}
    tag: dict = {}
    for k, v in tgt.basis.items():
        basis.setdefault(k, []).extend(("t", y) for y in v)
    for k, v in src.basis.items():
        basis.setdefault(k - 1, []).extend(("s", x) for x in v)
    for y in tgt.keys():
        diff[("t", y)] = {("t", z): c for z, c in tgt.diff[y].items()}
        tag[("t", y)] = tgt.tag.get(y)
    for x in src.keys():
        d = {("t", z): c for z, c in f.get(x, {}).items()}
        for z, c in src.diff[x].items():
            d[("s", z)] = -c
        diff[("s", x)] = d
        tag[("s", x)] = src.tag.get(x)
    c = Lab(basis, diff, tag)
    incl = {y: {("t", y): 1} for y in tgt.keys()}
    proj = {("s", x): {x: 1} for x in src.keys()}
    return c, incl, proj


def fiber(src: Lab, tgt: Lab, f: dict):
    """F = cone(f)[-1] with the projection F -> src (a chain map)."""
    c, incl, _ = cone(src, tgt, f)
    fb = shift(c, -1)
    to_src = {("s", x): {x: 1} for x in src.keys()}
    # the tgt[-1] summand maps to zero
    return fb, to_src, incl


def hom(a: Lab, b: Lab, allowed, key=None, below=None) -> Lab:
    """Hom complex between projective models.

    Basis E(x, alpha) for x in b, alpha in a with ``allowed(tag b x, tag a alpha)``;
    degree deg x - deg alpha; d E = d_b o E - (-1)^n E o d_a.
    ``below(tag)``, if given, lists the allowed target tags directly.
    """
    # incoming differentials of a: alpha -> [(beta, c)] with d beta = c alpha + ...
    into: dict = {}
    for beta in a.keys():
        for alpha, c in a.diff[beta].items():
            into.setdefault(alpha, []).append((beta, c))
    # which targets are allowed for each source tag
    by_tag: dict = {}
    for x in b.keys():
        by_tag.setdefault(b.tag.get(x), []).append(x)
    basis: dict = {}
    diff: dict = {}
    cache: dict = {}
    for alpha in a.keys():
        ta = a.tag.get(alpha)
        if ta not in cache:
            if below is not None:
                cache[ta] = [x for t in below(ta) for x in by_tag.get(t, ())]
            else:
                cache[ta] = [x for t, xs in by_tag.items() if allowed(t, ta) for x in xs]
        for x in cache[ta]:
            n = b.deg(x) - a.deg(alpha)
            basis.setdefault(n, []).append((x, alpha))
    present = {k for v in basis.values() for k in v}
    for n, keys in basis.items():
        sg = -1 if n % 2 else 1
        for (x, alpha) in keys:
            out: dict = {}
            for y, c in b.diff[x].items():
                out[(y, alpha)] = out.get((y, alpha), 0) + c
            for beta, c in into.get(alpha, ()):
                k = (x, beta)
                out[k] = out.get(k, 0) - sg * c
            diff[(x, alpha)] = {k: v for k, v in out.items() if v and k in present}
    return Lab(basis, diff, {})
