"""Generate the pinned triangulation of RP^3 stored in sdperv/_rp3data.py.

RP^3 is the antipodal quotient of the boundary of [-1,1]^4 (a regular CW
complex with f-vector (8, 16, 12, 4)). Its barycentric subdivision is a
simplicial complex, which is then shrunk by edge contractions satisfying the
link condition (these preserve the PL homeomorphism type).

    python scripts/build_rp3.py --seed 0 --tries 200 --write
"""
from __future__ import annotations

import argparse
import itertools
import random
from pathlib import Path


def cube_quotient_faces():
    faces = [s for s in itertools.product((-1, 0, 1), repeat=4) if any(s)]
    rep = {}
    for s in faces:
        neg = tuple(-x for x in s)
        rep[s] = min(s, neg)
    classes = sorted(set(rep.values()))

    def le(a, b):
        # face a lies in face b of the cube: b's fixed coordinates agree with a
        return all(y == 0 or x == y for x, y in zip(a, b))

    def qle(a, b):
        na = tuple(-x for x in a)
        return le(a, b) or le(na, b)

    return classes, qle


def barycentric(classes, qle):
    dim = {c: sum(1 for x in c if x == 0) for c in classes}
    idx = {c: n for n, c in enumerate(classes)}
    chains = []
    top = [c for c in classes if dim[c] == 3]

    def extend(chain):
        last = chain[-1]
        below = [c for c in classes if dim[c] == dim[last] - 1 and qle(c, last)]
        if not below:
            chains.append(tuple(sorted(idx[c] for c in chain)))
            return
        for c in below:
            extend(chain + [c])

    for t in top:
        extend([t])
    return [tuple(f) for f in set(chains)]


def faces_of(facets):
    out = set()
    for f in facets:
        for k in range(1, len(f) + 1):
            out.update(itertools.combinations(sorted(f), k))
    return out


def link(simplex, facets):
    s = set(simplex)
    out = set()
    for f in facets:
        if s <= set(f):
            rest = tuple(sorted(set(f) - s))
            for k in range(0, len(rest) + 1):
                out.update(itertools.combinations(rest, k))
    return out


def contract(facets, rng):
    facets = [tuple(sorted(f)) for f in facets]
    while True:
        edges = sorted({e for f in facets for e in itertools.combinations(f, 2)})
        rng.shuffle(edges)
        done = False
        for a, b in edges:
            la, lb, lab = link((a,), facets), link((b,), facets), link((a, b), facets)
            if la & lb != lab:
                continue
            new = []
            for f in facets:
                if a in f and b in f:
                    continue
                if b in f:
                    f = tuple(sorted(set(f) - {b} | {a}))
                new.append(f)
            facets = new
            done = True
            break
        if not done:
            return facets


def relabel(facets):
    verts = sorted({v for f in facets for v in f})
    m = {v: n for n, v in enumerate(verts)}
    return sorted(tuple(sorted(m[v] for v in f)) for f in facets)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--tries", type=int, default=50)
    ap.add_argument("--write", action="store_true")
    args = ap.parse_args()
    classes, qle = cube_quotient_faces()
    base = barycentric(classes, qle)
    print("barycentric subdivision:", len(base), "tetrahedra")
    best = None
    for t in range(args.tries):
        rng = random.Random(args.seed + t)
        fs = relabel(contract(base, rng))
        n = len(faces_of(fs))
        if best is None or n < best[0]:
            best = (n, fs, args.seed + t)
            print(f"seed {args.seed + t}: {len({v for f in fs for v in f})} vertices, {n} cells")
    n, fs, seed = best
    if args.write:
        path = Path(__file__).resolve().parents[1] / "src" / "sdperv" / "_rp3data.py"
        lines = ["# Generated by scripts/build_rp3.py (seed %d); do not edit." % seed,
                 '"""Pinned triangulation of RP^3 (facets as vertex index tuples)."""', "",
                 "FACETS = ("]
        for f in fs:
            lines.append(f"    {f},")
        lines.append(")")
        path.write_text("\n".join(lines) + "\n")
        print("wrote", path)


if __name__ == "__main__":
    main()
