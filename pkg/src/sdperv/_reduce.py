"""Homotopy-equivalent shrinking of sparse free complexes.

Works on labelled bases: every basis element is a hashable key with a
degree and an optional tag (the cell of a projective generator). Two moves:

* Gaussian elimination of a unit entry d(a)_b = +-1 (a in degree k, b in
  degree k+1), allowed only when ``tag[a] == tag[b]``;
* a unimodular change of basis inside one (tag, degree) block to expose
  units hidden behind non-unit entries (e.g. d = (2, 3)).

Both moves keep the explicit inclusion (``incl``) and projection
(``proj``) chain maps between the reduced and the original complex.
"""
from __future__ import annotations

from dataclasses import dataclass

from .intlin import _snf_dense


@dataclass
class Reduction:
    basis: dict          # degree -> list of keys (reduced complex)
    diff: dict           # key -> {key: coef}, d(x) = sum coef * y
    incl: dict           # reduced key -> {original key: coef}
    proj: dict           # original key -> {reduced key: coef}
    tag: dict            # reduced key -> tag

    def project(self, vec: dict) -> dict:
        out: dict = {}
        for o, c in vec.items():
            for y, p in self.proj.get(o, {}).items():
                w = out.get(y, 0) + c * p
                if w:
                    out[y] = w
                else:
                    out.pop(y, None)
        return out

    def lift(self, vec: dict) -> dict:
        out: dict = {}
        for x, c in vec.items():
            for o, p in self.incl[x].items():
                w = out.get(o, 0) + c * p
                if w:
                    out[o] = w
                else:
                    out.pop(o, None)
        return out


def _axpy(target: dict, coef: int, src: dict, skip=None):
    for k, v in src.items():
        if k == skip:
            continue
        w = target.get(k, 0) + coef * v
        if w:
            target[k] = w
        else:
            target.pop(k, None)


class _Work:
    def __init__(self, basis, diff, tag, track):
        self.deg = {}
        self.order = {}
        n = 0
        for k in sorted(basis):
            for x in basis[k]:
                self.deg[x] = k
                self.order[x] = n
                n += 1
        self.tag = {x: (tag.get(x) if tag else None) for x in self.deg}
        self.col = {x: {} for x in self.deg}
        self.row = {x: {} for x in self.deg}
        for x, dx in diff.items():
            for y, v in dx.items():
                if v:
                    if self.deg[y] != self.deg[x] + 1:
                        raise ValueError(f"differential from {x!r} to {y!r} is not of degree +1")
                    self.col[x][y] = v
                    self.row[y][x] = v
        self.track = track
        self.lift = {x: {x: 1} for x in self.deg} if track else None
        self.prow = {x: {x: 1} for x in self.deg} if track else None
        self.counter = 0

    # -- elimination --------------------------------------------------------
    def cancel(self, a, b):
        col, row = self.col, self.row
        u = col[a][b]
        da = col.pop(a)
        rb = row.pop(b)
        db = col.pop(b)
        ra = row.pop(a)
        for y in da:
            if y != b:
                del row[y][a]
        for x in rb:
            if x != a:
                del col[x][b]
        for y in db:
            del row[y][b]
        for z in ra:
            del col[z][a]
        for x, dxb in rb.items():
            if x == a:
                continue
            f = -u * dxb
            cx = col[x]
            for y, v in da.items():
                if y == b:
                    continue
                w = cx.get(y, 0) + f * v
                if w:
                    cx[y] = w
                    row[y][x] = w
                else:
                    cx.pop(y, None)
                    row[y].pop(x, None)
            if self.track:
                _axpy(self.lift[x], f, self.lift[a])
        if self.track:
            pb = self.prow[b]
            for y, v in da.items():
                if y != b:
                    _axpy(self.prow[y], -u * v, pb)
            del self.prow[a], self.prow[b], self.lift[a], self.lift[b]
        for z in (a, b):
            del self.deg[z], self.tag[z], self.order[z]

    def morse(self) -> int:
        done = 0
        progress = True
        while progress:
            progress = False
            for a in sorted(self.col, key=self.order.__getitem__):
                if a not in self.col:
                    continue
                best = None
                ta = self.tag[a]
                for b, v in self.col[a].items():
                    if (v == 1 or v == -1) and self.tag[b] == ta:
                        cost = len(self.row[b])
                        if best is None or cost < best[0] or (
                                cost == best[0] and self.order[b] < self.order[best[1]]):
                            best = (cost, b)
                if best is not None:
                    self.cancel(a, best[1])
                    done += 1
                    progress = True
        return done

    # -- block basis changes --------------------------------------------------
    def _new_key(self):
        self.counter += 1
        return ("_r", self.counter)

    def change_basis(self, old, m, minv):
        """Replace keys ``old`` by new_j = sum_i m[i][j] old_i."""
        n = len(old)
        new = [self._new_key() for _ in range(n)]
        col, row = self.col, self.row
        oldset = set(old)
        outgoing = [col.pop(o) for o in old]
        incoming = [row.pop(o) for o in old]
        for o, dx in zip(old, outgoing):
            for y in dx:
                if y not in oldset:
                    del row[y][o]
        sources = {}
        for o_idx, ro in enumerate(incoming):
            for z, v in ro.items():
                if z not in oldset:
                    sources.setdefault(z, [0] * n)[o_idx] = v
                    del col[z][old[o_idx]]
        for j, nk in enumerate(new):
            self.deg[nk] = self.deg[old[0]]
            self.tag[nk] = self.tag[old[0]]
            self.order[nk] = self.order[old[0]] + (j + 1) / (n + 1)
            acc: dict = {}
            for i in range(n):
                if m[i][j]:
                    _axpy(acc, m[i][j], outgoing[i])
            col[nk] = acc
            row[nk] = {}
        for j, nk in enumerate(new):
            for y, v in col[nk].items():
                row[y][nk] = v
        for z, c in sources.items():
            for j, nk in enumerate(new):
                w = sum(minv[j][i] * c[i] for i in range(n) if c[i])
                if w:
                    col[z][nk] = w
                    row[nk][z] = w
        if self.track:
            olift = [self.lift.pop(o) for o in old]
            oprow = [self.prow.pop(o) for o in old]
            for j, nk in enumerate(new):
                acc = {}
                for i in range(n):
                    if m[i][j]:
                        _axpy(acc, m[i][j], olift[i])
                self.lift[nk] = acc
                acc = {}
                for i in range(n):
                    if minv[j][i]:
                        _axpy(acc, minv[j][i], oprow[i])
                self.prow[nk] = acc
        for o in old:
            del self.deg[o], self.tag[o], self.order[o]
        return new

    def expose_units(self) -> bool:
        groups: dict = {}
        for x in self.deg:
            groups.setdefault((self.deg[x], _tagkey(self.tag[x])), []).append(x)
        for key in sorted(groups, key=lambda k: (k[0], k[1])):
            a_keys = [x for x in groups.get(key, []) if x in self.deg]
            if not a_keys:
                continue
            k, t = key
            b_keys = [y for y in groups.get((k + 1, t), []) if y in self.deg]
            if not b_keys:
                continue
            a_keys.sort(key=self.order.__getitem__)
            b_keys.sort(key=self.order.__getitem__)
            bidx = {y: i for i, y in enumerate(b_keys)}
            block = [[0] * len(a_keys) for _ in b_keys]
            nz = False
            for j, x in enumerate(a_keys):
                for y, v in self.col[x].items():
                    i = bidx.get(y)
                    if i is not None:
                        block[i][j] = v
                        nz = True
            if not nz:
                continue
            u, d, v, _ = _snf_dense(block, len(b_keys), len(a_keys))
            if not any(d[i][i] == 1 for i in range(min(len(b_keys), len(a_keys)))):
                continue
            vinv = _inv(v)
            uinv = _inv(u)
            self.change_basis(a_keys, v, vinv)
            self.change_basis(b_keys, uinv, u)
            return True
        return False


def _tagkey(t):
    return (t is not None, repr(t))


def _inv(m):
    n = len(m)
    u, d, v, _ = _snf_dense(m, n, n)
    # u m v = I  =>  m^-1 = v u
    return [[sum(v[i][k] * u[k][j] for k in range(n)) for j in range(n)] for i in range(n)]


def reduce_complex(basis: dict, diff: dict, tag: dict | None = None,
                   track: bool = True, minimize: bool = True) -> Reduction:
    """Shrink a labelled complex; see module docstring.

    ``basis`` maps degree -> list of keys, ``diff`` maps key -> {key: coef}.
    """
    w = _Work(basis, diff, tag, track)
    w.morse()
    if minimize:
        while w.expose_units():
            w.morse()
    out_basis: dict = {}
    for x in sorted(w.deg, key=w.order.__getitem__):
        out_basis.setdefault(w.deg[x], []).append(x)
    proj: dict = {}
    if track:
        for y, r in w.prow.items():
            for o, c in r.items():
                proj.setdefault(o, {})[y] = c
    return Reduction(
        basis=out_basis,
        diff={x: dict(w.col[x]) for x in w.deg},
        incl=w.lift if track else {},
        proj=proj,
        tag=dict(w.tag),
    )
