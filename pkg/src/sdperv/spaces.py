"""Built-in spaces used by tests, scripts and the CLI."""
from __future__ import annotations

from functools import lru_cache

from ._rp3data import FACETS as _RP3_FACETS
from .poset import SimplicialComplex, StratPoset, face_poset, product_poset

APEX = "a"


def point() -> StratPoset:
    return face_poset(SimplicialComplex(("0",), (("0",),)), name="point")


def interval() -> StratPoset:
    """Closed interval: vertices 0, 1 and the edge 0-1."""
    return face_poset(SimplicialComplex(("0", "1"), (("0", "1"),)), name="interval")


def circle() -> StratPoset:
    """Hollow triangle, a model of S^1."""
    return face_poset(SimplicialComplex(("0", "1", "2"), (("0", "1"), ("1", "2"), ("0", "2"))),
                      name="circle")


def simplex2() -> StratPoset:
    return face_poset(SimplicialComplex(("0", "1", "2"), (("0", "1", "2"),)), name="simplex2")


def sphere2() -> StratPoset:
    """Boundary of the 3-simplex."""
    v = ("0", "1", "2", "3")
    facets = tuple(tuple(x for x in v if x != w) for w in v)
    return face_poset(SimplicialComplex(v, facets), name="sphere2")


def rp3_complex() -> SimplicialComplex:
    verts = tuple(str(i) for i in sorted({v for f in _RP3_FACETS for v in f}))
    return SimplicialComplex(verts, tuple(tuple(str(v) for v in f) for f in _RP3_FACETS),
                             name="rp3")


@lru_cache(maxsize=None)
def rp3() -> StratPoset:
    return face_poset(rp3_complex(), name="rp3")


@lru_cache(maxsize=None)
def rp3_cone() -> StratPoset:
    """Cone over the pinned RP^3 triangulation with apex cell ``a``."""
    return face_poset(rp3_complex().cone(APEX), name="rp3-cone")


def torus() -> StratPoset:
    return product_poset(circle(), circle(), name="torus")


BUILTIN = {
    "point": point,
    "interval": interval,
    "circle": circle,
    "simplex2": simplex2,
    "sphere2": sphere2,
    "rp3": rp3,
    "rp3-cone": rp3_cone,
    "torus": torus,
}


def builtin(name: str) -> StratPoset:
    try:
        return BUILTIN[name]()
    except KeyError:
        raise KeyError(f"unknown built-in space {name!r}; choose from {sorted(BUILTIN)}") from None
