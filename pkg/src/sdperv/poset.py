"""Finite cell posets with signed incidences.

Open sets are up-sets (unions of open stars U_sigma = {tau >= sigma}); closed
sets are down-sets. Every cover (face, coface) carries an incidence number
[face : coface] = +-1 with the boundary of the boundary equal to zero, so
cellular (co)chains can be formed on any locally closed union of cells.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Sequence


class PosetError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class StratPoset:
    """Cells ``(id, dim)`` and covering pairs ``(face, coface)``.

    ``incidence`` maps covers to +-1; when omitted it is computed by
    orienting the cells as a regular CW complex. ``closed`` records whether
    the closure of every cell lies in the poset (so closed cells are balls).
    """

    cells: tuple
    covers: tuple
    incidence: dict = field(default=None)
    closed: bool = True
    name: str = ""

    def __post_init__(self):
        cells = tuple((c, int(d)) for c, d in self.cells)
        object.__setattr__(self, "cells", cells)
        object.__setattr__(self, "covers", tuple((a, b) for a, b in self.covers))
        ids = [c for c, _ in cells]
        if len(set(ids)) != len(ids):
            raise PosetError("duplicate cell ids")
        dim = dict(cells)
        for d in dim.values():
            if d < 0:
                raise PosetError("negative cell dimension")
        for a, b in self.covers:
            if a not in dim or b not in dim:
                raise PosetError(f"cover ({a!r}, {b!r}) mentions an unknown cell")
            if dim[b] != dim[a] + 1:
                raise PosetError(f"cover ({a!r}, {b!r}) does not raise dimension by one")
        order = sorted(range(len(ids)), key=lambda i: (dim[ids[i]], i))
        object.__setattr__(self, "_ids", [ids[i] for i in order])
        object.__setattr__(self, "_dim", dim)
        object.__setattr__(self, "_pos", {c: n for n, c in enumerate(self._ids)})
        faces: dict = {c: [] for c in ids}
        cofaces: dict = {c: [] for c in ids}
        for a, b in self.covers:
            faces[b].append(a)
            cofaces[a].append(b)
        for c in ids:
            faces[c].sort(key=self._pos.__getitem__)
            cofaces[c].sort(key=self._pos.__getitem__)
        object.__setattr__(self, "_faces", faces)
        object.__setattr__(self, "_cofaces", cofaces)
        # closures as bitmasks over positions
        down = {}
        for c in self._ids:
            m = 1 << self._pos[c]
            for f in faces[c]:
                m |= down[f]
            down[c] = m
        object.__setattr__(self, "_down", down)
        up = {c: 1 << self._pos[c] for c in ids}
        for c in reversed(self._ids):
            for f in faces[c]:
                up[f] |= up[c]
        object.__setattr__(self, "_up", up)
        if self.incidence is None:
            object.__setattr__(self, "incidence", _orient(self))
        else:
            inc = {tuple(k): int(v) for k, v in self.incidence.items()}
            if set(inc) != set(self.covers):
                raise PosetError("incidence must be given on exactly the covers")
            object.__setattr__(self, "incidence", inc)
        _check_dd(self)

    # -- queries --------------------------------------------------------------
    @property
    def ids(self) -> list:
        """Cell ids in (dim, input order) order."""
        return list(self._ids)

    def __len__(self):
        return len(self._ids)

    def __contains__(self, c):
        return c in self._dim

    def dim(self, c) -> int:
        return self._dim[c]

    @property
    def top_dim(self) -> int:
        return max(self._dim.values(), default=-1)

    def pos(self, c) -> int:
        return self._pos[c]

    def faces(self, c) -> list:
        return self._faces[c]

    def cofaces(self, c) -> list:
        return self._cofaces[c]

    def leq(self, a, b) -> bool:
        return bool(self._down[b] >> self._pos[a] & 1)

    def _cells_of(self, mask: int) -> list:
        ids, out = self._ids, []
        while mask:
            low = mask & -mask
            out.append(ids[low.bit_length() - 1])
            mask ^= low
        return out

    def star(self, c) -> list:
        """Open star U_c = {tau >= c}."""
        return self._cells_of(self._up[c])

    def closure(self, c) -> list:
        return self._cells_of(self._down[c])

    def mask(self, cells: Iterable) -> int:
        m = 0
        for c in cells:
            m |= 1 << self._pos[c]
        return m

    def up_closure(self, cells: Iterable) -> list:
        m = 0
        for c in cells:
            m |= self._up[c]
        return self._cells_of(m)

    def down_closure(self, cells: Iterable) -> list:
        m = 0
        for c in cells:
            m |= self._down[c]
        return self._cells_of(m)

    def is_open(self, cells: Iterable) -> bool:
        cells = list(cells)
        return set(self.up_closure(cells)) == set(cells)

    def is_closed(self, cells: Iterable) -> bool:
        cells = list(cells)
        return set(self.down_closure(cells)) == set(cells)

    def is_locally_closed(self, cells: Iterable) -> bool:
        cells = set(cells)
        # W = U n Z with U = up-closure, Z = down-closure
        u = set(self.up_closure(cells))
        z = set(self.down_closure(cells))
        return u & z == cells

    def complement(self, cells: Iterable) -> list:
        s = set(cells)
        return [c for c in self._ids if c not in s]

    def inc(self, face, coface) -> int:
        return self.incidence[(face, coface)]

    # -- constructions ----------------------------------------------------------
    def sub(self, cells: Iterable, name: str = "") -> "StratPoset":
        """Locally closed sub-poset, keeping incidences."""
        cells = list(cells)
        for c in cells:
            if c not in self:
                raise PosetError(f"unknown cell {c!r}")
        if not self.is_locally_closed(cells):
            raise PosetError("region is not locally closed")
        keep = set(cells)
        cov = [(a, b) for a, b in self.covers if a in keep and b in keep]
        return StratPoset(tuple((c, self._dim[c]) for c in self._ids if c in keep), tuple(cov),
                          {k: self.incidence[k] for k in cov},
                          closed=self.closed and self.is_closed(cells), name=name)

    def to_json(self) -> dict:
        return {"cells": [{"id": c, "dim": self._dim[c]} for c in self._ids],
                "covers": [[a, b] for a, b in self.covers],
                "incidence": [[a, b, self.incidence[(a, b)]] for a, b in self.covers]}

    @classmethod
    def from_json(cls, obj) -> "StratPoset":
        try:
            cells = [(c["id"], c["dim"]) for c in obj["cells"]]
            covers = [tuple(p) for p in obj.get("covers", [])]
        except (KeyError, TypeError) as e:
            raise PosetError(f"malformed space description: {e}") from None
        inc = None
        if "incidence" in obj:
            inc = {(a, b): s for a, b, s in obj["incidence"]}
        return cls(tuple(cells), tuple(covers), inc, closed=obj.get("closed", True),
                   name=obj.get("name", ""))

    def __repr__(self):
        f = [0] * (self.top_dim + 1)
        for d in self._dim.values():
            f[d] += 1
        return f"StratPoset({self.name or 'anonymous'}, f={tuple(f)})"


def _orient(p: StratPoset) -> dict:
    """Incidence numbers of a regular CW complex from its face poset."""
    inc = {}
    for c in p._ids:
        fs = p._faces[c]
        d = p._dim[c]
        if d == 0 or not fs:
            continue
        if d == 1:
            if len(fs) != 2:
                # a loop-free edge needs two endpoints; a half-open edge keeps one
                for f in fs:
                    inc[(f, c)] = 1
                continue
            inc[(fs[0], c)] = -1
            inc[(fs[1], c)] = 1
            continue
        # facets sharing a ridge must induce opposite signs on it
        ridge_to: dict = {}
        for f in fs:
            for r in p._faces[f]:
                ridge_to.setdefault(r, []).append(f)
        sign = {fs[0]: 1}
        queue = [fs[0]]
        while queue:
            f = queue.pop()
            for r in p._faces[f]:
                for g in ridge_to[r]:
                    if g == f:
                        continue
                    s = -sign[f] * inc[(r, f)] * inc[(r, g)]
                    if g in sign:
                        if sign[g] != s:
                            raise PosetError(f"cell {c!r} is not orientable as a regular cell")
                    else:
                        sign[g] = s
                        queue.append(g)
        for f in fs:
            if f not in sign:
                raise PosetError(f"boundary of cell {c!r} is disconnected")
            inc[(f, c)] = sign[f]
    return inc


def _check_dd(p: StratPoset):
    for c in p._ids:
        acc: dict = {}
        for f in p._faces[c]:
            for g in p._faces[f]:
                acc[g] = acc.get(g, 0) + p.incidence[(f, c)] * p.incidence[(g, f)]
        if any(acc.values()):
            raise PosetError(f"incidences do not satisfy dd = 0 at cell {c!r}")


# ---------------------------------------------------------------------------
# simplicial complexes


def _simplex_id(vs: Sequence) -> str:
    return "-".join(str(v) for v in vs)


@dataclass(frozen=True, eq=False)
class SimplicialComplex:
    """Vertices and facets; faces are sorted vertex tuples (lexicographic orientation)."""

    vertices: tuple
    facets: tuple
    name: str = ""

    def __post_init__(self):
        verts = tuple(self.vertices)
        key = {v: n for n, v in enumerate(verts)}
        facets = []
        for f in self.facets:
            f = tuple(sorted(set(f), key=key.__getitem__)) if all(v in key for v in f) else None
            if f is None:
                raise PosetError("facet uses an unknown vertex")
            facets.append(f)
        object.__setattr__(self, "vertices", verts)
        object.__setattr__(self, "facets", tuple(facets))
        object.__setattr__(self, "_key", key)

    @property
    def simplices(self) -> list:
        out = set()
        for f in self.facets:
            for k in range(1, len(f) + 1):
                out.update(itertools.combinations(f, k))
        for v in self.vertices:
            out.add((v,))
        return sorted(out, key=lambda s: (len(s), [self._key[v] for v in s]))

    def f_vector(self) -> tuple:
        f: dict = {}
        for s in self.simplices:
            f[len(s) - 1] = f.get(len(s) - 1, 0) + 1
        return tuple(f[k] for k in sorted(f))

    def cone(self, apex="a") -> "SimplicialComplex":
        if apex in self._key:
            raise PosetError("apex name clashes with a vertex")
        return SimplicialComplex((apex,) + self.vertices,
                                 tuple((apex,) + f for f in self.facets),
                                 name=f"cone({self.name})")


def face_poset(s: SimplicialComplex, name: str = "") -> StratPoset:
    """One cell per simplex; covers are codimension-one faces with
    incidence [tau minus v_i : tau] = (-1)^i."""
    simp = s.simplices
    cells = [(_simplex_id(t), len(t) - 1) for t in simp]
    covers = []
    inc = {}
    for t in simp:
        if len(t) < 2:
            continue
        for i in range(len(t)):
            f = t[:i] + t[i + 1:]
            k = (_simplex_id(f), _simplex_id(t))
            covers.append(k)
            inc[k] = -1 if i % 2 else 1
    return StratPoset(tuple(cells), tuple(covers), inc, closed=True, name=name or s.name)


def check_closed_faces(cells: Iterable[Sequence]) -> None:
    """Raise if a list of simplices is not closed under taking faces."""
    s = {tuple(sorted(c)) for c in cells}
    for t in s:
        for i in range(len(t)):
            f = t[:i] + t[i + 1:]
            if f and f not in s:
                raise PosetError(f"face {f} of {t} missing")


def product_poset(p: StratPoset, q: StratPoset, name: str = "") -> StratPoset:
    """Product cells (a, b) with dim a + dim b and Koszul-signed incidences."""
    def cid(a, b):
        return f"{a}|{b}"
    cells = [(cid(a, b), p.dim(a) + q.dim(b)) for a in p.ids for b in q.ids]
    covers = []
    inc = {}
    for a in p.ids:
        for b in q.ids:
            for a2 in p.cofaces(a):
                k = (cid(a, b), cid(a2, b))
                covers.append(k)
                inc[k] = p.inc(a, a2)
            for b2 in q.cofaces(b):
                k = (cid(a, b), cid(a, b2))
                covers.append(k)
                inc[k] = (-1) ** p.dim(a) * q.inc(b, b2)
    return StratPoset(tuple(cells), tuple(covers), inc, closed=p.closed and q.closed,
                      name=name or f"{p.name}x{q.name}")


def product_cell(a, b) -> str:
    return f"{a}|{b}"
