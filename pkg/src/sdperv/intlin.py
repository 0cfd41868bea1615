"""Exact integer linear algebra and finitely generated abelian groups.

Everything here works with Python ints, so there is no overflow and no
modular shortcut: 2-torsion is computed, never assumed away.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

__all__ = [
    "IntMatrix",
    "FgAbGroup",
    "INF",
    "smith_normal_form",
    "elementary_divisors",
    "group_from_presentation",
    "codim_support",
    "torsion_split",
    "local_cohomology_at_prime",
    "kernel_basis",
    "image_saturation",
    "is_prime",
]

INF = math.inf


@dataclass(frozen=True, eq=False)
class IntMatrix:
    """Sparse integer matrix; ``data`` maps ``(row, col)`` to a nonzero int."""

    rows: int
    cols: int
    data: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError("negative matrix shape")
        for (i, j), v in self.data.items():
            if not (0 <= i < self.rows and 0 <= j < self.cols):
                raise ValueError(f"entry ({i}, {j}) outside {self.rows}x{self.cols}")
            if v == 0:
                raise ValueError("explicit zero stored in sparse matrix")

    # construction -------------------------------------------------------
    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols, {})

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, {(i, i): 1 for i in range(n)})

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> "IntMatrix":
        r = len(rows)
        c = len(rows[0]) if r else (cols or 0)
        data = {}
        for i, row in enumerate(rows):
            if len(row) != c:
                raise ValueError("ragged rows")
            for j, v in enumerate(row):
                if v:
                    data[(i, j)] = int(v)
        return cls(r, c, data)

    @classmethod
    def diag(cls, entries: Sequence[int], rows: int | None = None, cols: int | None = None):
        n = len(entries)
        return cls(rows if rows is not None else n, cols if cols is not None else n,
                   {(i, i): int(v) for i, v in enumerate(entries) if v})

    # views --------------------------------------------------------------
    @property
    def entries(self) -> tuple:
        """Row-major tuple of all rows*cols entries."""
        return tuple(self.data.get((i, j), 0) for i in range(self.rows) for j in range(self.cols))

    def to_rows(self) -> list[list[int]]:
        out = [[0] * self.cols for _ in range(self.rows)]
        for (i, j), v in self.data.items():
            out[i][j] = v
        return out

    def __getitem__(self, ij):
        return self.data.get(ij, 0)

    @property
    def shape(self):
        return (self.rows, self.cols)

    def is_zero(self) -> bool:
        return not self.data

    def __eq__(self, other):
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return self.shape == other.shape and self.data == other.data

    def __hash__(self):
        return hash((self.rows, self.cols, frozenset(self.data.items())))

    def __repr__(self):
        return f"IntMatrix({self.to_rows()!r})" if self.rows * self.cols <= 64 else \
            f"IntMatrix<{self.rows}x{self.cols}, nnz={len(self.data)}>"

    # algebra ------------------------------------------------------------
    @property
    def T(self) -> "IntMatrix":
        return IntMatrix(self.cols, self.rows, {(j, i): v for (i, j), v in self.data.items()})

    def __neg__(self):
        return IntMatrix(self.rows, self.cols, {k: -v for k, v in self.data.items()})

    def scale(self, s: int) -> "IntMatrix":
        if s == 0:
            return IntMatrix.zeros(self.rows, self.cols)
        return IntMatrix(self.rows, self.cols, {k: s * v for k, v in self.data.items()})

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} + {other.shape}")
        data = dict(self.data)
        for k, v in other.data.items():
            w = data.get(k, 0) + v
            if w:
                data[k] = w
            else:
                data.pop(k, None)
        return IntMatrix(self.rows, self.cols, data)

    def __sub__(self, other):
        return self + (-other)

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        by_row: dict[int, dict[int, int]] = {}
        for (k, j), v in other.data.items():
            by_row.setdefault(k, {})[j] = v
        data: dict = {}
        for (i, k), a in self.data.items():
            row = by_row.get(k)
            if not row:
                continue
            for j, b in row.items():
                data[(i, j)] = data.get((i, j), 0) + a * b
        return IntMatrix(self.rows, other.cols, {k: v for k, v in data.items() if v})

    def apply(self, vec: Sequence[int]) -> list[int]:
        out = [0] * self.rows
        for (i, j), v in self.data.items():
            out[i] += v * vec[j]
        return out

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "IntMatrix":
        rmap = {r: a for a, r in enumerate(rows)}
        cmap = {c: b for b, c in enumerate(cols)}
        return IntMatrix(len(rows), len(cols), {
            (rmap[i], cmap[j]): v for (i, j), v in self.data.items() if i in rmap and j in cmap})

    @staticmethod
    def block(blocks: Sequence[Sequence["IntMatrix"]]) -> "IntMatrix":
        """Assemble a block matrix; every block row must share a row count."""
        heights = [b[0].rows for b in blocks]
        widths = [b.cols for b in blocks[0]] if blocks else []
        data = {}
        r0 = 0
        for bi, brow in enumerate(blocks):
            c0 = 0
            for bj, m in enumerate(brow):
                if m.rows != heights[bi] or m.cols != widths[bj]:
                    raise ValueError("inconsistent block shapes")
                for (i, j), v in m.data.items():
                    data[(r0 + i, c0 + j)] = v
                c0 += widths[bj]
            r0 += heights[bi]
        return IntMatrix(sum(heights), sum(widths), data)

    def det(self) -> int:
        if self.rows != self.cols:
            raise ValueError("determinant of a non-square matrix")
        _, d, _, sign = _snf_dense(self.to_rows(), self.rows, self.cols, track_sign=True)
        return sign * math.prod(d[i][i] for i in range(self.rows))


# ---------------------------------------------------------------------------
# Smith normal form


def _snf_dense(a: list[list[int]], m: int, n: int, track_sign: bool = False):
    """Dense SNF on a copy of ``a``. Returns (U, D, V, sign) as row lists.

    Pivot: smallest absolute nonzero entry of the active block, ties broken
    by lowest row then lowest column. ``sign`` is det(U)*det(V) when
    ``track_sign`` is set (used only by ``det``).
    """
    a = [row[:] for row in a]
    u = [[int(i == j) for j in range(m)] for i in range(m)]
    v = [[int(i == j) for j in range(n)] for i in range(n)]
    sign = 1

    def swap_rows(i, j):
        nonlocal sign
        if i != j:
            a[i], a[j] = a[j], a[i]
            u[i], u[j] = u[j], u[i]
            sign = -sign

    def swap_cols(i, j):
        nonlocal sign
        if i != j:
            for row in a:
                row[i], row[j] = row[j], row[i]
            for row in v:
                row[i], row[j] = row[j], row[i]
            sign = -sign

    t = 0
    while t < min(m, n):
        best = None
        for i in range(t, m):
            row = a[i]
            for j in range(t, n):
                x = row[j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
                    if best[0] == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        _, pi, pj = best
        swap_rows(t, pi)
        swap_cols(t, pj)
        while True:
            p = a[t][t]
            done = True
            # clear column t
            for i in range(t + 1, m):
                if a[i][t]:
                    q = a[i][t] // p
                    if q:
                        ai, at = a[i], a[t]
                        for j in range(t, n):
                            ai[j] -= q * at[j]
                        ui, ut = u[i], u[t]
                        for j in range(m):
                            ui[j] -= q * ut[j]
                    if a[i][t]:
                        done = False
            # clear row t
            for j in range(t + 1, n):
                if a[t][j]:
                    q = a[t][j] // p
                    if q:
                        for row in a:
                            row[j] -= q * row[t]
                        for row in v:
                            row[j] -= q * row[t]
                    if a[t][j]:
                        done = False
            if done:
                # divisibility of the rest of the block
                bad = None
                for i in range(t + 1, m):
                    for j in range(t + 1, n):
                        if a[i][j] % p:
                            bad = i
                            break
                    if bad is not None:
                        break
                if bad is None:
                    break
                # add offending row to row t and continue
                ai, at = a[bad], a[t]
                for j in range(t, n):
                    at[j] += ai[j]
                ub, ut = u[bad], u[t]
                for j in range(m):
                    ut[j] += ub[j]
                continue
            # re-pivot on the smallest remaining entry in row/col t
            best = (abs(a[t][t]), t, t)
            for i in range(t + 1, m):
                if a[i][t] and abs(a[i][t]) < best[0]:
                    best = (abs(a[i][t]), i, t)
            for j in range(t + 1, n):
                if a[t][j] and abs(a[t][j]) < best[0]:
                    best = (abs(a[t][j]), t, j)
            swap_rows(t, best[1])
            swap_cols(t, best[2])
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
            sign = -sign
        t += 1
    return u, a, v, sign


def smith_normal_form(a: IntMatrix) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Return ``(U, D, V)`` with ``U @ a @ V == D``, U and V unimodular.

    D is diagonal with nonnegative entries d1 | d2 | ... followed by zeros.
    """
    m, n = a.shape
    u, d, v, _ = _snf_dense(a.to_rows(), m, n)
    return (IntMatrix.from_rows(u, cols=m), IntMatrix.from_rows(d, cols=n),
            IntMatrix.from_rows(v, cols=n))


def _eliminate_units(data: dict) -> tuple[int, dict]:
    """Pivot away +-1 entries of a sparse matrix; return (#pivots, remainder).

    Row/column operations with unit pivots do not change elementary divisors.
    """
    rows: dict[int, dict[int, int]] = {}
    cols: dict[int, dict[int, int]] = {}
    for (i, j), v in data.items():
        rows.setdefault(i, {})[j] = v
        cols.setdefault(j, {})[i] = v
    npiv = 0
    while True:
        best = None
        for j in sorted(cols):
            col = cols[j]
            for i in sorted(col):
                if abs(col[i]) == 1:
                    cost = (len(rows[i]) - 1) * (len(col) - 1)
                    if best is None or cost < best[0]:
                        best = (cost, i, j)
                        if cost == 0:
                            break
            if best is not None and best[0] == 0:
                break
        if best is None:
            break
        _, pi, pj = best
        u = rows[pi][pj]
        prow = rows.pop(pi)
        pcol = cols.pop(pj)
        for j in prow:
            if j != pj:
                del cols[j][pi]
        for i in pcol:
            if i != pi:
                del rows[i][pj]
        # rank-one update on the remaining block
        for i, a_ij in pcol.items():
            if i == pi:
                continue
            f = a_ij * u  # u == 1/u for units
            r = rows[i]
            for j, b in prow.items():
                if j == pj:
                    continue
                w = r.get(j, 0) - f * b
                c = cols[j]
                if w:
                    r[j] = w
                    c[i] = w
                else:
                    r.pop(j, None)
                    c.pop(i, None)
        for j in list(cols):
            if not cols[j]:
                del cols[j]
        for i in list(rows):
            if not rows[i]:
                del rows[i]
        npiv += 1
    rem = {(i, j): v for i, r in rows.items() for j, v in r.items()}
    return npiv, rem


def elementary_divisors(a: IntMatrix) -> list[int]:
    """Nonzero diagonal of the Smith form of ``a`` (ascending, divisibility chain)."""
    npiv, rem = _eliminate_units(a.data)
    if not rem:
        return [1] * npiv
    ri = sorted({i for i, _ in rem})
    ci = sorted({j for _, j in rem})
    rmap = {r: k for k, r in enumerate(ri)}
    cmap = {c: k for k, c in enumerate(ci)}
    dense = [[0] * len(ci) for _ in ri]
    for (i, j), v in rem.items():
        dense[rmap[i]][cmap[j]] = v
    _, d, _, _ = _snf_dense(dense, len(ri), len(ci))
    divs = [d[k][k] for k in range(min(len(ri), len(ci))) if d[k][k]]
    return [1] * npiv + divs


def rank(a: IntMatrix) -> int:
    return len(elementary_divisors(a))


# ---------------------------------------------------------------------------
# Finitely generated abelian groups


def _invariant_factors(orders: Iterable[int]) -> tuple[int, ...]:
    """Invariant factors of a finite sum of cyclic groups Z/n (n >= 1)."""
    prime_powers: dict[int, list[int]] = {}
    for n in orders:
        n = abs(int(n))
        if n <= 1:
            continue
        for p, e in _factorize(n).items():
            prime_powers.setdefault(p, []).append(p ** e)
    if not prime_powers:
        return ()
    length = max(len(v) for v in prime_powers.values())
    factors = [1] * length
    for p, powers in prime_powers.items():
        powers.sort(reverse=True)
        for k, q in enumerate(powers):
            factors[length - 1 - k] *= q
    return tuple(f for f in factors if f > 1)


def _factorize(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    return _factorize(p) == {p: 1}


@dataclass(frozen=True)
class FgAbGroup:
    """Z^rank + Z/d1 + ... + Z/dk in invariant-factor form (d1 | d2 | ...).

    Equality of instances is isomorphism of groups.
    """

    rank: int = 0
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "torsion", tuple(int(d) for d in self.torsion))
        if self.rank < 0:
            raise ValueError("negative rank")
        for d in self.torsion:
            if d < 2:
                raise ValueError(f"invariant factor {d} < 2")
        for a, b in zip(self.torsion, self.torsion[1:]):
            if b % a:
                raise ValueError(f"invariant factors {self.torsion} are not a divisibility chain")

    @classmethod
    def from_cyclic(cls, rank: int = 0, orders: Iterable[int] = ()) -> "FgAbGroup":
        """Build from any list of cyclic orders, e.g. ``from_cyclic(0, [2, 3])`` is Z/6."""
        orders = list(orders)
        return cls(rank + sum(1 for n in orders if n == 0), _invariant_factors(o for o in orders if o))

    @classmethod
    def zero(cls) -> "FgAbGroup":
        return cls()

    def is_zero(self) -> bool:
        return self.rank == 0 and not self.torsion

    def is_torsion(self) -> bool:
        return self.rank == 0

    def is_torsion_free(self) -> bool:
        return not self.torsion

    def __add__(self, other: "FgAbGroup") -> "FgAbGroup":
        return FgAbGroup.from_cyclic(self.rank + other.rank, self.torsion + other.torsion)

    def order_of_torsion(self) -> int:
        return math.prod(self.torsion)

    def primary_part(self, p: int) -> "FgAbGroup":
        out = []
        for d in self.torsion:
            q = 1
            while d % p == 0:
                d //= p
                q *= p
            out.append(q)
        return FgAbGroup.from_cyclic(0, out)

    def to_json(self) -> dict:
        return {"rank": self.rank, "torsion": list(self.torsion)}

    @classmethod
    def from_json(cls, obj) -> "FgAbGroup":
        return cls(int(obj.get("rank", 0)), tuple(obj.get("torsion", ())))

    def __str__(self):
        if self.is_zero():
            return "0"
        parts = []
        if self.rank:
            parts.append("Z" if self.rank == 1 else f"Z^{self.rank}")
        parts += [f"Z/{d}" for d in self.torsion]
        return " + ".join(parts)


def group_from_presentation(relations: IntMatrix) -> FgAbGroup:
    """Cokernel of ``relations: Z^cols -> Z^rows`` in canonical form."""
    divs = elementary_divisors(relations)
    return FgAbGroup(relations.rows - len(divs), tuple(d for d in divs if d > 1))


def codim_support(m: FgAbGroup) -> float:
    """Codimension of Supp(M) in Spec Z: 0, 1, or INF for the zero group."""
    if m.rank > 0:
        return 0
    if m.torsion:
        return 1
    return INF


def torsion_split(m: FgAbGroup) -> tuple[FgAbGroup, int]:
    return FgAbGroup(0, m.torsion), m.rank


def local_cohomology_at_prime(m: FgAbGroup, p: int) -> tuple[FgAbGroup, bool]:
    """Cohomology of [M -> M[1/p]] in degrees 0 and 1.

    H^0 is the p-primary torsion. H^1 = M[1/p]/image is nonzero exactly
    when M has positive rank (the torsion of M dies or maps onto itself).
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    return m.primary_part(p), m.rank > 0


# ---------------------------------------------------------------------------
# lattices


def kernel_basis(a: IntMatrix) -> IntMatrix:
    """Columns form a basis of ker(a) (a saturated sublattice of Z^cols)."""
    _, d, v = smith_normal_form(a)
    r = sum(1 for i in range(min(d.rows, d.cols)) if d[i, i])
    return v.submatrix(range(v.rows), range(r, v.cols))


def _inverse_unimodular(u: IntMatrix) -> IntMatrix:
    n = u.rows
    # SNF of a unimodular matrix is the identity: P u Q = I => u^-1 = Q P
    p, d, q = smith_normal_form(u)
    if any(d[i, i] != 1 for i in range(n)):
        raise ValueError("matrix is not unimodular")
    return q @ p


def image_saturation(a: IntMatrix) -> IntMatrix:
    """Columns form a basis of the saturation of the column space of ``a``."""
    u, d, _ = smith_normal_form(a)
    r = sum(1 for i in range(min(d.rows, d.cols)) if d[i, i])
    uinv = _inverse_unimodular(u)
    return uinv.submatrix(range(uinv.rows), range(r))


def lattice_coords(basis: IntMatrix, vecs: IntMatrix) -> IntMatrix:
    """Solve ``basis @ X == vecs`` exactly for a saturated basis (columns)."""
    u, d, v = smith_normal_form(basis)
    s = basis.cols
    if any(d[i, i] != 1 for i in range(s)):
        raise ValueError("basis is not saturated")
    # u basis v = [I; 0]  =>  left inverse is v [I 0] u
    left = v @ u.submatrix(range(s), range(u.cols))
    x = left @ vecs
    if basis @ x != vecs:
        raise ValueError("vectors do not lie in the lattice")
    return x


def quotient_by_saturated(basis: IntMatrix) -> tuple[IntMatrix, IntMatrix]:
    """For saturated S = span(basis) in Z^m return (q, sec).

    ``q: Z^m -> Z^(m-s)`` is the quotient map and ``sec`` a section with
    ``q @ sec == I``.
    """
    m, s = basis.shape
    u, d, _ = smith_normal_form(basis)
    if any(d[i, i] != 1 for i in range(s)):
        raise ValueError("basis is not saturated")
    uinv = _inverse_unimodular(u)
    q = u.submatrix(range(s, m), range(m))
    sec = uinv.submatrix(range(m), range(s, m))
    return q, sec
