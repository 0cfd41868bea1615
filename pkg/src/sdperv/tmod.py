"""The self-dual t-structure on D^b(Z) indexed by real cuts.

Membership is decided by the torsion / torsion-free description

    pD^{<=n}     = D^{<=n}
    pD^{<=n-1/2} = {X in D^{<=n} : H^n(X) torsion}
    pD^{>=n-1/2} = D^{>=n}
    pD^{>=n}     = {X in D^{>=n} : H^n(X) torsion free}

and cross-checked against the codimension formula codim H^i >= 2(i - c)
together with the duality X in pD^{>=c} iff dual(X) in pD^{<=-c}.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from . import intlin
from .dz import (ChainMap, CutParam, FreeComplex, OPPOSITE, cone, dual, fiber,
                 qa_truncate_with_map, std_truncate_with_map)
from .intlin import FgAbGroup, IntMatrix

__all__ = [
    "FLAVORS", "TruncTriangle", "member", "member_codim", "member_dual", "std_member",
    "member_local_cohomology", "p_truncate", "torsion_pair_truncate", "std_triangle",
    "flavor_sides",
]

FLAVORS = ("le-gt", "lt-ge")


def flavor_sides(flavor: str) -> tuple[str, str]:
    if flavor not in FLAVORS:
        raise ValueError(f"unknown flavor {flavor!r}; expected one of {FLAVORS}")
    return ("le", "gt") if flavor == "le-gt" else ("lt", "ge")


def _cut(c) -> CutParam:
    return c if isinstance(c, CutParam) else CutParam.parse(c)


def _half_parts(s: Fraction) -> tuple[int, bool]:
    """s = n or s = n - 1/2; returns (n, is_half)."""
    if s.denominator == 1:
        return int(s), False
    return int(s + Fraction(1, 2)), True


def member(x: FreeComplex, c, side: str) -> bool:
    """x in pD^{side c} for side in le, lt, ge, gt."""
    s = _cut(c).canonical(side)
    n, half = _half_parts(s)
    h = x.cohomology_all()
    if side in ("le", "lt"):
        if any(i > n for i in h):
            return False
        return not half or n not in h or h[n].is_torsion()
    if any(i < n for i in h):
        return False
    return half or n not in h or h[n].is_torsion_free()


def member_codim(x: FreeComplex, c, side: str) -> bool:
    """Same predicate through codim(H^i) >= 2(i - c) (strict for lt) and duality."""
    c = _cut(c).c
    if side in ("ge", "gt"):
        return member_codim(dual(x), -c, OPPOSITE[side])
    for i, g in x.cohomology_all().items():
        cd = intlin.codim_support(g)
        bound = 2 * (i - c)
        if side == "le" and not cd >= bound:
            return False
        if side == "lt" and not cd > bound:
            return False
    return True


def member_dual(x: FreeComplex, c, side: str) -> bool:
    """member(dual x, -c, opposite side)."""
    return member(dual(x), -_cut(c).c, OPPOSITE[side])


def std_member(x: FreeComplex, c, side: str) -> bool:
    """Membership for the standard t-structure with real cuts:
    D^{<=c} = D^{<=floor c}, D^{<c} = D^{<=ceil(c)-1}, D^{>=c} = D^{>=ceil c},
    D^{>c} = D^{>=floor(c)+1}."""
    c = _cut(c).c
    degs = x.cohomology_all().keys()
    if side == "le":
        return all(i <= math.floor(c) for i in degs)
    if side == "lt":
        return all(i <= math.ceil(c) - 1 for i in degs)
    if side == "ge":
        return all(i >= math.ceil(c) for i in degs)
    if side == "gt":
        return all(i >= math.floor(c) + 1 for i in degs)
    raise ValueError(f"unknown side {side!r}")


def member_local_cohomology(x: FreeComplex, c) -> bool:
    """x in pD^{>=c} via vanishing of H^i R Gamma_Z x for i < c + codim Z / 2.

    Z = Spec Z gives H^i x = 0 for i < c. For Z = {p}: H^i R Gamma_p x is an
    extension of Gamma_p H^i x by H^1_p H^(i-1) x, so it vanishes iff the
    p-primary part of H^i and the rank of H^(i-1) both vanish. Primes not
    dividing any torsion coefficient behave identically, so one generic
    representative suffices for them.
    """
    c = _cut(c).c
    h = x.cohomology_all()
    if any(i < c for i in h):
        return False
    primes = set()
    for g in h.values():
        for d in g.torsion:
            primes.update(intlin._factorize(d))
    generic = 2
    while generic in primes:
        generic = next(q for q in range(generic + 1, generic + 1000) if intlin.is_prime(q))
    for p in sorted(primes) + [generic]:
        for i in h:
            for j in (i, i + 1):
                if not j < c + Fraction(1, 2):
                    continue
                gam0, _ = intlin.local_cohomology_at_prime(x.cohomology(j), p)
                _, gam1 = intlin.local_cohomology_at_prime(x.cohomology(j - 1), p)
                if not gam0.is_zero() or gam1:
                    return False
    return True


# ---------------------------------------------------------------------------
# truncation triangles


@dataclass(frozen=True)
class TruncTriangle:
    """lower --alpha--> X --beta--> upper --> lower[1].

    ``upper`` is modelled as cone(alpha) so beta is the canonical inclusion and
    the connecting map is the cone projection.
    """

    x: FreeComplex
    lower: FreeComplex
    upper: FreeComplex
    alpha: ChainMap
    beta: ChainMap
    delta: ChainMap
    cut: CutParam
    flavor: str

    def check(self) -> list[str]:
        """Return a list of failed invariants (empty when all hold)."""
        bad = []
        if not _null_homotopic_through_cone(self):
            bad.append("beta o alpha is not null-homotopic")
        c, _ = cone(self.alpha)
        if c.cohomology_all() != self.upper.cohomology_all():
            bad.append("cone(alpha) differs from upper")
        lo_side, up_side = flavor_sides(self.flavor)
        if not member(self.lower, self.cut, lo_side):
            bad.append(f"lower not in pD^{lo_side} {self.cut}")
        if not member(self.upper, self.cut, up_side):
            bad.append(f"upper not in pD^{up_side} {self.cut}")
        return bad


def _null_homotopic_through_cone(t: TruncTriangle) -> bool:
    # With upper = cone(alpha) and beta the inclusion Y -> cone, the
    # composite is d h + h d for h(l) = (0, l) in C^(i-1) = X^(i-1) + L^i.
    x, low, up = t.x, t.lower, t.upper
    for i in low.degrees():
        comp = (t.beta @ t.alpha).mat(i)
        # h_i: L^i -> C^(i-1) = X^(i-1) + L^i, h_(i+1): L^(i+1) -> C^i
        h_i = IntMatrix(x.rank(i - 1) + low.rank(i), low.rank(i),
                        {(x.rank(i - 1) + k, k): 1 for k in range(low.rank(i))})
        h_n = IntMatrix(x.rank(i) + low.rank(i + 1), low.rank(i + 1),
                        {(x.rank(i) + k, k): 1 for k in range(low.rank(i + 1))})
        rhs = up.d(i - 1) @ h_i + h_n @ low.d(i)
        if comp != rhs:
            return False
    return True


def _triangle(x: FreeComplex, lower: FreeComplex, alpha: ChainMap, cut, flavor) -> TruncTriangle:
    upper, (_, beta, delta) = cone(alpha)
    return TruncTriangle(x, lower, upper, alpha, beta, delta, _cut(cut), flavor)


def _lower_cut(c, flavor: str) -> Fraction:
    """Half-integer s with lower family = pD^{<=s}."""
    lo_side, _ = flavor_sides(flavor)
    return _cut(c).canonical(lo_side)


def p_truncate(x: FreeComplex, c, flavor: str = "le-gt") -> TruncTriangle:
    """Truncation triangle for the pair (pD^{<=c}, pD^{>c}) or (pD^{<c}, pD^{>=c}).

    The lower term is the quasi-abelian truncation in torsion-free lattices:
    at s = n the kernel truncation, at s = n - 1/2 the complex
    X^(n-2) -> X^(n-1) -> sat(Im d^(n-1)).
    """
    s = _lower_cut(c, flavor)
    lower, alpha = qa_truncate_with_map(x, s, "le")
    return _triangle(x, lower, alpha, c, flavor)


def torsion_pair_truncate(x: FreeComplex, n_half, flavor: str = "le-gt") -> TruncTriangle:
    """Same triangle through the (torsion, torsion free) pair.

    At s = n - 1/2: lower = fiber(tau^{<=n} X -> (H^n X / torsion)[-n]).
    At integer s = n: lower = fiber(X -> X^n/Ker d^n -> X^(n+1) -> ...).
    """
    s = _lower_cut(n_half, flavor)
    n, half = _half_parts(s)
    if not half:
        q, to_q = qa_truncate_with_map(x, Fraction(2 * n + 1, 2), "ge")
        lower, to_x = fiber(to_q)
        return _triangle(x, lower, to_x, n_half, flavor)
    t, inc = std_truncate_with_map(x, n, "le")
    if t.rank(n) == 0:
        return _triangle(x, t, inc, n_half, flavor)
    # H^n(t)/torsion = Ker d^n / sat(Im d^(n-1)) as a lattice quotient of t^n
    sat = intlin.image_saturation(t.d(n - 1))
    q, _ = intlin.quotient_by_saturated(sat)
    target = FreeComplex.from_dict({n: q.rows}, {})
    proj = ChainMap(t, target, {n: q})
    lower, to_t = fiber(proj)
    return _triangle(x, lower, inc @ to_t, n_half, flavor)


def std_triangle(x: FreeComplex, n: int) -> TruncTriangle:
    """Standard tau^{<=n} X -> X -> cone, as a TruncTriangle at integer cut n."""
    lower, alpha = std_truncate_with_map(x, n, "le")
    return _triangle(x, lower, alpha, n, "le-gt")
