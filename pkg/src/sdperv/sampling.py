"""Seeded random objects for property tests and the scripts."""
from __future__ import annotations

import random
from dataclasses import dataclass

from . import intlin
from .dz import FreeComplex
from .intlin import FgAbGroup, IntMatrix


@dataclass(frozen=True)
class ComplexSampler:
    """Random complexes with ranks <= max_rank, degrees in [lo, hi] and
    differential entries in [-bound, bound]."""

    max_rank: int = 4
    lo: int = -3
    hi: int = 3
    bound: int = 4
    tries: int = 20

    def _matrix(self, rng, rows, cols):
        return IntMatrix.from_rows([[rng.randint(-self.bound, self.bound) for _ in range(cols)]
                                    for _ in range(rows)], cols=cols)

    def _after(self, rng, prev: IntMatrix, rows: int) -> IntMatrix:
        """Random d with d @ prev = 0 and small entries (falls back to sparser draws)."""
        if prev.is_zero():
            return self._matrix(rng, rows, prev.rows)
        # rows of d are integer combinations of a basis of the left kernel of prev
        kb = intlin.kernel_basis(prev.T)
        if kb.cols == 0:
            return IntMatrix.zeros(rows, prev.rows)
        for _ in range(self.tries):
            coef = IntMatrix.from_rows([[rng.choice((-1, 0, 0, 1)) for _ in range(kb.cols)]
                                        for _ in range(rows)], cols=kb.cols)
            d = coef @ kb.T
            if all(abs(v) <= self.bound for v in d.data.values()):
                return d
        return IntMatrix.zeros(rows, prev.rows)

    def draw(self, rng: random.Random) -> FreeComplex:
        lo = rng.randint(self.lo, self.hi)
        hi = rng.randint(lo, self.hi)
        ranks = {i: rng.randint(0, self.max_rank) for i in range(lo, hi + 1)}
        diffs = {}
        prev = None
        for i in range(lo, hi):
            if prev is None:
                d = self._matrix(rng, ranks[i + 1], ranks[i])
            else:
                d = self._after(rng, prev, ranks[i + 1])
            diffs[i] = d
            prev = d
        return FreeComplex.from_dict(ranks, diffs)


def random_complex(rng: random.Random, **kw) -> FreeComplex:
    return ComplexSampler(**kw).draw(rng)


def random_group(rng: random.Random, max_rank: int = 2) -> FgAbGroup:
    orders = [rng.choice((2, 3, 4, 6, 9)) for _ in range(rng.randint(0, 2))]
    return FgAbGroup.from_cyclic(rng.randint(0, max_rank), orders)
