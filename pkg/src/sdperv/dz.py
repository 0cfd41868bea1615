"""Bounded complexes of finite-rank free abelian groups (a model of D^b(Z)).

A :class:`FreeComplex` stores ranks and differentials ``d^i: X^i -> X^(i+1)``
as integer matrices acting on column vectors. Derived Hom and tensor are
computed termwise because every term is free.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Sequence

from . import intlin
from ._reduce import reduce_complex
from .intlin import FgAbGroup, IntMatrix

__all__ = [
    "CutParam", "FreeComplex", "ChainMap", "cohomology", "shift", "cone", "fiber",
    "hom_complex", "tensor_complex", "dual", "std_truncate", "qa_truncate",
    "is_quasi_iso", "direct_sum", "std_truncate_with_map", "qa_truncate_with_map",
    "same_cohomology", "from_labelled", "SIDES", "OPPOSITE",
]


# ---------------------------------------------------------------------------
# cuts


@dataclass(frozen=True)
class CutParam:
    """A rational cut point together with its half-integer projections."""

    c: Fraction

    def __post_init__(self):
        object.__setattr__(self, "c", Fraction(self.c))

    @classmethod
    def parse(cls, text) -> "CutParam":
        if isinstance(text, CutParam):
            return text
        return cls(Fraction(str(text).strip()))

    def canon_le(self) -> Fraction:
        """max{s in Z/2 : s <= c}"""
        return Fraction(math.floor(2 * self.c), 2)

    def canon_ge(self) -> Fraction:
        """min{s in Z/2 : s >= c}"""
        return Fraction(math.ceil(2 * self.c), 2)

    def canon_lt(self) -> Fraction:
        """max{s in Z/2 : s < c}; the strict family is T^{<c} = T^{<= canon_lt}."""
        return Fraction(math.ceil(2 * self.c) - 1, 2)

    def canon_gt(self) -> Fraction:
        return Fraction(math.floor(2 * self.c) + 1, 2)

    def canonical(self, side: str) -> Fraction:
        """Half-integer s such that the side-family at c equals the le/ge family at s."""
        return {"le": self.canon_le, "lt": self.canon_lt,
                "ge": self.canon_ge, "gt": self.canon_gt}[side]()

    def __add__(self, other) -> "CutParam":
        other = other.c if isinstance(other, CutParam) else Fraction(other)
        return CutParam(self.c + other)

    def __sub__(self, other) -> "CutParam":
        other = other.c if isinstance(other, CutParam) else Fraction(other)
        return CutParam(self.c - other)

    def __neg__(self):
        return CutParam(-self.c)

    def __str__(self):
        return f"{self.c.numerator}/{self.c.denominator}" if self.c.denominator != 1 \
            else str(self.c.numerator)


SIDES = ("le", "lt", "ge", "gt")
OPPOSITE = {"le": "ge", "ge": "le", "lt": "gt", "gt": "lt"}


# ---------------------------------------------------------------------------
# complexes


@dataclass(frozen=True, eq=False)
class FreeComplex:
    """Complex Z^ranks[0] -> Z^ranks[1] -> ... starting in degree ``lo``."""

    lo: int
    ranks: tuple = ()
    diffs: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "ranks", tuple(int(r) for r in self.ranks))
        object.__setattr__(self, "diffs", tuple(self.diffs))
        if len(self.ranks) == 0:
            if self.diffs:
                raise ValueError("zero complex with differentials")
        elif len(self.diffs) != len(self.ranks) - 1:
            raise ValueError("need one differential between each pair of adjacent degrees")
        for k, d in enumerate(self.diffs):
            if d.shape != (self.ranks[k + 1], self.ranks[k]):
                raise ValueError(f"d^{self.lo + k} has shape {d.shape}, expected "
                                 f"{(self.ranks[k + 1], self.ranks[k])}")
        for k in range(len(self.diffs) - 1):
            if not (self.diffs[k + 1] @ self.diffs[k]).is_zero():
                raise ValueError(f"d^{self.lo + k + 1} o d^{self.lo + k} != 0")

    @property
    def hi(self) -> int:
        return self.lo + len(self.ranks) - 1

    @classmethod
    def _trusted(cls, lo: int, ranks: tuple, diffs: tuple) -> "FreeComplex":
        """Skip the d o d check for complexes that are correct by construction."""
        x = object.__new__(cls)
        object.__setattr__(x, "lo", lo)
        object.__setattr__(x, "ranks", tuple(ranks))
        object.__setattr__(x, "diffs", tuple(diffs))
        return x

    @classmethod
    def zero(cls) -> "FreeComplex":
        return cls(0, (), ())

    @classmethod
    def from_dict(cls, ranks: dict, diffs: dict) -> "FreeComplex":
        """``ranks``: degree -> rank, ``diffs``: degree i -> IntMatrix d^i."""
        degs = [k for k, r in ranks.items() if r]
        if not degs:
            return cls.zero()
        lo, hi = min(degs), max(degs)
        rk = tuple(ranks.get(i, 0) for i in range(lo, hi + 1))
        ds = []
        for i in range(lo, hi):
            d = diffs.get(i)
            ds.append(d if d is not None and d.shape == (rk[i + 1 - lo], rk[i - lo])
                      else IntMatrix.zeros(rk[i + 1 - lo], rk[i - lo]))
        return cls(lo, rk, tuple(ds))

    @classmethod
    def module(cls, m: FgAbGroup, degree: int = 0) -> "FreeComplex":
        """Free model of a group placed in ``degree`` (a two-term resolution)."""
        t = len(m.torsion)
        if t == 0:
            return cls.from_dict({degree: m.rank}, {})
        return cls.from_dict({degree - 1: t, degree: m.rank + t},
                             {degree - 1: IntMatrix(m.rank + t, t,
                                                    {(m.rank + i, i): d for i, d in enumerate(m.torsion)})})

    @classmethod
    def two_term(cls, mat, degree: int = 0) -> "FreeComplex":
        """[Z^cols --mat--> Z^rows] in degrees ``degree``, ``degree+1``."""
        if not isinstance(mat, IntMatrix):
            mat = IntMatrix.from_rows(mat)
        return cls(degree, (mat.cols, mat.rows), (mat,))

    def rank(self, i: int) -> int:
        if self.lo <= i <= self.hi:
            return self.ranks[i - self.lo]
        return 0

    def d(self, i: int) -> IntMatrix:
        if self.lo <= i < self.hi:
            return self.diffs[i - self.lo]
        return IntMatrix.zeros(self.rank(i + 1), self.rank(i))

    def degrees(self):
        return range(self.lo, self.hi + 1)

    def is_zero_complex(self) -> bool:
        return all(r == 0 for r in self.ranks)

    def __repr__(self):
        return f"FreeComplex(lo={self.lo}, ranks={self.ranks})"

    # -- labelled view ------------------------------------------------------
    def labelled(self):
        basis = {i: [(i, a) for a in range(self.rank(i))] for i in self.degrees() if self.rank(i)}
        diff = {}
        for i in self.degrees():
            for a in range(self.rank(i)):
                diff[(i, a)] = {}
            for (r, c), v in self.d(i).data.items():
                diff[(i, c)][(i + 1, r)] = v
        return basis, diff

    @cached_property
    def _reduction(self):
        basis, diff = self.labelled()
        return reduce_complex(basis, diff)

    @cached_property
    def _cohomology(self) -> dict:
        red = self._reduction
        out = {}
        ranks = {k: len(v) for k, v in red.basis.items()}
        idx = {x: n for k in red.basis for n, x in enumerate(red.basis[k])}
        mats = {}
        for k in ranks:
            data = {}
            for x in red.basis[k]:
                for y, v in red.diff[x].items():
                    data[(idx[y], idx[x])] = v
            mats[k] = IntMatrix(ranks.get(k + 1, 0), ranks[k], data)
        for k in ranks:
            d_out = intlin.elementary_divisors(mats[k])
            d_in = intlin.elementary_divisors(mats[k - 1]) if k - 1 in mats else []
            g = FgAbGroup(ranks[k] - len(d_out) - len(d_in), tuple(x for x in d_in if x > 1))
            if not g.is_zero():
                out[k] = g
        return out

    def cohomology(self, i: int) -> FgAbGroup:
        return self._cohomology.get(i, FgAbGroup())

    def cohomology_all(self) -> dict:
        """Nonzero cohomology groups keyed by degree."""
        return dict(self._cohomology)

    def is_acyclic(self) -> bool:
        return not self._cohomology

    def minimal(self) -> "tuple[FreeComplex, ChainMap, ChainMap]":
        """Homotopy-equivalent small model with inclusion and projection maps."""
        red = self._reduction
        small = _from_labelled(red.basis, red.diff)
        keys = {k: red.basis.get(k, []) for k in range(small.lo, small.hi + 1)}
        inc = {}
        pro = {}
        for i in small.degrees():
            data = {}
            for c, x in enumerate(keys[i]):
                for (deg, r), v in red.incl[x].items():
                    data[(r, c)] = v
            inc[i] = IntMatrix(self.rank(i), small.rank(i), data)
        pos = {x: n for k in keys for n, x in enumerate(keys[k])}
        for i in self.degrees():
            data = {}
            for a in range(self.rank(i)):
                for y, v in red.proj.get((i, a), {}).items():
                    data[(pos[y], a)] = v
            pro[i] = IntMatrix(small.rank(i), self.rank(i), data)
        return small, ChainMap(small, self, inc), ChainMap(self, small, pro)


def _from_labelled(basis: dict, diff: dict, order=None) -> FreeComplex:
    degs = [k for k, v in basis.items() if v]
    if not degs:
        return FreeComplex.zero()
    idx = {x: n for k in basis for n, x in enumerate(basis[k])}
    ranks = {k: len(basis[k]) for k in degs}
    mats = {}
    for k in degs:
        data = {}
        for x in basis[k]:
            for y, v in diff.get(x, {}).items():
                data[(idx[y], idx[x])] = v
        mats[k] = IntMatrix(ranks.get(k + 1, 0), ranks[k], data)
    lo, hi = min(degs), max(degs)
    rk = tuple(ranks.get(i, 0) for i in range(lo, hi + 1))
    ds = tuple(mats[i] if i in mats else IntMatrix.zeros(rk[i + 1 - lo], 0)
               for i in range(lo, hi))
    return FreeComplex._trusted(lo, rk, ds)


def from_labelled(basis: dict, diff: dict) -> FreeComplex:
    """Build a complex from degree -> [keys] and key -> {key: coef}."""
    return _from_labelled(basis, diff)


def cohomology(x: FreeComplex, i: int) -> FgAbGroup:
    return x.cohomology(i)


def direct_sum(*xs: FreeComplex) -> FreeComplex:
    xs = [x for x in xs if x.ranks]
    if not xs:
        return FreeComplex.zero()
    lo = min(x.lo for x in xs)
    hi = max(x.hi for x in xs)
    ranks = {i: sum(x.rank(i) for x in xs) for i in range(lo, hi + 1)}
    diffs = {}
    for i in range(lo, hi):
        data = {}
        r0 = c0 = 0
        for x in xs:
            for (r, c), v in x.d(i).data.items():
                data[(r0 + r, c0 + c)] = v
            r0 += x.rank(i + 1)
            c0 += x.rank(i)
        diffs[i] = IntMatrix(ranks[i + 1], ranks[i], data)
    return FreeComplex.from_dict(ranks, diffs)


def shift(x: FreeComplex, n: int) -> FreeComplex:
    """X[n]: degree i holds X^(i+n), differential multiplied by (-1)^n."""
    if not x.ranks:
        return x
    s = -1 if n % 2 else 1
    return FreeComplex(x.lo - n, x.ranks, tuple(d.scale(s) for d in x.diffs))


@dataclass(frozen=True, eq=False)
class ChainMap:
    source: FreeComplex
    target: FreeComplex
    mats: dict = field(default_factory=dict)

    def __post_init__(self):
        for i in set(self.source.degrees()) | set(self.target.degrees()):
            m = self.mat(i)
            if m.shape != (self.target.rank(i), self.source.rank(i)):
                raise ValueError(f"chain map component in degree {i} has wrong shape")
        for i in self.source.degrees():
            lhs = self.target.d(i) @ self.mat(i)
            rhs = self.mat(i + 1) @ self.source.d(i)
            if lhs != rhs:
                raise ValueError(f"chain map does not commute with d in degree {i}")

    def mat(self, i: int) -> IntMatrix:
        m = self.mats.get(i)
        if m is None:
            return IntMatrix.zeros(self.target.rank(i), self.source.rank(i))
        return m

    @classmethod
    def identity(cls, x: FreeComplex) -> "ChainMap":
        return cls(x, x, {i: IntMatrix.identity(x.rank(i)) for i in x.degrees()})

    @classmethod
    def zero(cls, s: FreeComplex, t: FreeComplex) -> "ChainMap":
        return cls(s, t, {})

    def __matmul__(self, other: "ChainMap") -> "ChainMap":
        """Composite ``self o other``."""
        degs = set(other.source.degrees())
        return ChainMap(other.source, self.target,
                        {i: self.mat(i) @ other.mat(i) for i in degs})

    def scale(self, s: int) -> "ChainMap":
        return ChainMap(self.source, self.target, {i: m.scale(s) for i, m in self.mats.items()})

    def is_zero(self) -> bool:
        return all(m.is_zero() for m in self.mats.values())


def cone(f: ChainMap):
    """Mapping cone C with C^i = Y^i + X^(i+1), d(y, x) = (dy + f x, -dx).

    Returns ``(C, (f, i, p))`` for the triangle X -> Y -> C -> X[1].
    """
    x, y = f.source, f.target
    lo = min([y.lo] * bool(y.ranks) + [x.lo - 1] * bool(x.ranks), default=0)
    hi = max([y.hi] * bool(y.ranks) + [x.hi - 1] * bool(x.ranks), default=-1)
    ranks = {i: y.rank(i) + x.rank(i + 1) for i in range(lo, hi + 1)}
    diffs = {}
    for i in range(lo, hi):
        d = IntMatrix.block([[y.d(i), f.mat(i + 1)],
                             [IntMatrix.zeros(x.rank(i + 2), y.rank(i)), -x.d(i + 1)]])
        diffs[i] = d
    c = FreeComplex.from_dict(ranks, diffs)
    inc = {}
    proj = {}
    xs = shift(x, 1)
    for i in c.degrees():
        yi, xi = y.rank(i), x.rank(i + 1)
        inc[i] = IntMatrix(yi + xi, yi, {(k, k): 1 for k in range(yi)})
        # sign (-1) on the X[1] component makes p a chain map to X[1]
        proj[i] = IntMatrix(xi, yi + xi, {(k, yi + k): 1 for k in range(xi)})
    i_map = ChainMap(y, c, inc)
    p_map = ChainMap(c, xs, {i: proj[i] for i in c.degrees()})
    return c, (f, i_map, p_map)


def fiber(f: ChainMap):
    """Fiber F = C(f)[-1] and the map F -> X (projection to the source)."""
    x, y = f.source, f.target
    c, _ = cone(f)
    fb = shift(c, -1)
    # F^i = C^(i-1) = Y^(i-1) + X^i
    mats = {}
    for i in fb.degrees():
        yi = y.rank(i - 1)
        mats[i] = IntMatrix(x.rank(i), yi + x.rank(i), {(k, yi + k): 1 for k in range(x.rank(i))})
    return fb, ChainMap(fb, x, mats)


def hom_complex(x: FreeComplex, y: FreeComplex) -> FreeComplex:
    """Hom^n = prod_i Hom(X^i, Y^(i+n)); d f = d_Y f - (-1)^n f d_X."""
    if not x.ranks or not y.ranks:
        return FreeComplex.zero()
    basis, diff = _hom_labelled(x, y)
    return _from_labelled(basis, diff)


def _hom_labelled(x: FreeComplex, y: FreeComplex):
    basis: dict = {}
    for i in x.degrees():
        for j in y.degrees():
            n = j - i
            for a in range(x.rank(i)):
                for b in range(y.rank(j)):
                    basis.setdefault(n, []).append((i, a, j, b))
    dys = {j: y.d(j) for j in y.degrees()}
    dxs = {i: x.d(i - 1) for i in x.degrees()}   # into X^i
    dy_col = {j: {} for j in y.degrees()}
    for j, m in dys.items():
        for (r, c), v in m.data.items():
            dy_col[j].setdefault(c, []).append((r, v))
    dx_row = {i: {} for i in x.degrees()}
    for i, m in dxs.items():
        for (r, c), v in m.data.items():
            dx_row[i].setdefault(r, []).append((c, v))
    diff = {}
    for n, keys in basis.items():
        sgn = -1 if n % 2 else 1
        for key in keys:
            i, a, j, b = key
            out = {}
            for r, v in dy_col[j].get(b, ()):
                k = (i, a, j + 1, r)
                out[k] = out.get(k, 0) + v
            # (f o d_X) for f = E_{b,a} on X^i: nonzero on sources c in X^(i-1) with d(c)_a != 0
            for c, v in dx_row[i].get(a, ()):
                k = (i - 1, c, j, b)
                out[k] = out.get(k, 0) - sgn * v
            diff[key] = {k: v for k, v in out.items() if v}
    return basis, diff


def tensor_complex(x: FreeComplex, y: FreeComplex) -> FreeComplex:
    """Total complex, d(a (x) b) = da (x) b + (-1)^|a| a (x) db."""
    if not x.ranks or not y.ranks:
        return FreeComplex.zero()
    basis: dict = {}
    for i in x.degrees():
        for j in y.degrees():
            for a in range(x.rank(i)):
                for b in range(y.rank(j)):
                    basis.setdefault(i + j, []).append((i, a, j, b))
    xcol = {i: {} for i in x.degrees()}
    for i in x.degrees():
        for (r, c), v in x.d(i).data.items():
            xcol[i].setdefault(c, []).append((r, v))
    ycol = {j: {} for j in y.degrees()}
    for j in y.degrees():
        for (r, c), v in y.d(j).data.items():
            ycol[j].setdefault(c, []).append((r, v))
    diff = {}
    for keys in basis.values():
        for key in keys:
            i, a, j, b = key
            sgn = -1 if i % 2 else 1
            out = {}
            for r, v in xcol[i].get(a, ()):
                out[(i + 1, r, j, b)] = v
            for r, v in ycol[j].get(b, ()):
                out[(i, a, j + 1, r)] = sgn * v
            diff[key] = out
    return _from_labelled(basis, diff)


def dual(x: FreeComplex) -> FreeComplex:
    """Hom(X, Z[0]): degree n holds (X^-n)^*, d^n = -(-1)^n (d_X^(-n-1))^T."""
    if not x.ranks:
        return x
    ranks = {-i: x.rank(i) for i in x.degrees()}
    diffs = {}
    for n in range(-x.hi, -x.lo):
        s = 1 if n % 2 else -1
        diffs[n] = x.d(-n - 1).T.scale(s)
    return FreeComplex.from_dict(ranks, diffs)


# ---------------------------------------------------------------------------
# truncations


def std_truncate_with_map(x: FreeComplex, n: int, side: str):
    """Standard truncation with its canonical map.

    side "le": returns (tau^{<=n} X, inclusion into X).
    side "ge": returns (tau^{>=n} X, map X -> tau^{>=n} X), the latter modelled
    as the cone of tau^{<=n-1} X -> X.
    """
    if side == "le":
        if not x.ranks or n >= x.hi:
            return x, ChainMap.identity(x)
        if n < x.lo:
            z = FreeComplex.zero()
            return z, ChainMap.zero(z, x)
        kb = intlin.kernel_basis(x.d(n))
        k = kb.cols
        ranks = {i: x.rank(i) for i in range(x.lo, n)}
        ranks[n] = k
        diffs = {i: x.d(i) for i in range(x.lo, n - 1)}
        if n - 1 >= x.lo:
            diffs[n - 1] = intlin.lattice_coords(kb, x.d(n - 1))
        t = FreeComplex.from_dict(ranks, diffs)
        mats = {i: IntMatrix.identity(x.rank(i)) for i in range(x.lo, n)}
        mats[n] = kb
        return t, ChainMap(t, x, mats)
    if side == "ge":
        low, inc = std_truncate_with_map(x, n - 1, "le")
        c, (_, i_map, _) = cone(inc)
        return c, i_map
    raise ValueError(f"unknown side {side!r}")


def std_truncate(x: FreeComplex, n: int, side: str) -> FreeComplex:
    return std_truncate_with_map(x, n, side)[0]


def qa_truncate_with_map(x: FreeComplex, s, side: str):
    """Truncations of the quasi-abelian category of f.g. torsion-free groups.

    For integer n:
      le n      ... X^(n-1) -> Ker d^n
      le n+1/2  ... X^(n-1) -> X^n -> Im d^n     (Im = saturation of the image)
      ge n      Coker d^(n-1) -> X^(n+1) -> ...  (Coker = X^n / saturated image)
      ge n+1/2  Coim d^n -> X^(n+1) -> ...      (Coim = X^n / Ker d^n)
    The map goes sub -> X for "le" and X -> quotient for "ge".
    """
    s = Fraction(s)
    if (2 * s).denominator != 1:
        raise ValueError("qa_truncate needs a half-integer")
    half = s.denominator == 2
    n = math.floor(s)
    if side == "le":
        if not half:
            return std_truncate_with_map(x, n, "le")
        if not x.ranks or n >= x.hi:
            return x, ChainMap.identity(x)
        if n < x.lo:
            z = FreeComplex.zero()
            return z, ChainMap.zero(z, x)
        im = intlin.image_saturation(x.d(n))
        ranks = {i: x.rank(i) for i in range(x.lo, n + 1)}
        ranks[n + 1] = im.cols
        diffs = {i: x.d(i) for i in range(x.lo, n)}
        diffs[n] = intlin.lattice_coords(im, x.d(n))
        t = FreeComplex.from_dict(ranks, diffs)
        mats = {i: IntMatrix.identity(x.rank(i)) for i in range(x.lo, n + 1)}
        mats[n + 1] = im
        return t, ChainMap(t, x, mats)
    if side == "ge":
        if not x.ranks or n < x.lo or (n == x.lo and not half):
            return x, ChainMap.identity(x)
        if n > x.hi or (n == x.hi and half):
            z = FreeComplex.zero()
            return z, ChainMap.zero(x, z)
        at = n
        if not half:
            sub = intlin.image_saturation(x.d(n - 1))
        else:
            sub = intlin.kernel_basis(x.d(n))
        q, sec = intlin.quotient_by_saturated(sub)
        ranks = {at: q.rows}
        ranks.update({i: x.rank(i) for i in range(at + 1, x.hi + 1)})
        diffs = {i: x.d(i) for i in range(at + 1, x.hi)}
        diffs[at] = x.d(at) @ sec
        t = FreeComplex.from_dict(ranks, diffs)
        mats = {i: IntMatrix.identity(x.rank(i)) for i in range(at + 1, x.hi + 1)}
        mats[at] = q
        return t, ChainMap(x, t, mats)
    raise ValueError(f"unknown side {side!r}")


def qa_truncate(x: FreeComplex, s, side: str) -> FreeComplex:
    return qa_truncate_with_map(x, s, side)[0]


def is_quasi_iso(f: ChainMap) -> bool:
    c, _ = cone(f)
    return c.is_acyclic()


def same_cohomology(x: FreeComplex, y: FreeComplex) -> bool:
    """Objects of D^b(Z) are determined by their cohomology groups."""
    return x.cohomology_all() == y.cohomology_all()
