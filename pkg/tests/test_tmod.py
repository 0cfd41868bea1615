import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from sdperv.dz import FreeComplex, direct_sum, dual, hom_complex, same_cohomology, shift
from sdperv.intlin import FgAbGroup
from sdperv.sampling import random_complex
from sdperv.tmod import (member, member_codim, member_dual, member_local_cohomology,
                         p_truncate, std_member, torsion_pair_truncate)

Z = FgAbGroup(1)
Z2 = FgAbGroup(0, (2,))


def z_at(deg=0):
    return FreeComplex.module(Z, deg)


def torsion_at(n=2, deg=0):
    """Free model of Z/n sitting in degree deg."""
    return FreeComplex.two_term([[n]], deg - 1)


QUARTERS = [Fraction(k, 4) for k in range(-12, 13)]


@pytest.mark.parametrize("x,c,side,expected", [
    (torsion_at(), "-1/2", "le", True),
    (z_at(), "0", "ge", True),
    (torsion_at(), "0", "ge", False),
    (z_at(), "-1/4", "le", False),
    (z_at(), "0", "le", True),
    (z_at(), "-1/2", "ge", True),
    (torsion_at(), "-1/2", "ge", True),
    (torsion_at(), "-1", "le", False),
    (torsion_at(deg=1), "1/2", "le", True),
    (torsion_at(deg=1), "0", "le", False),
])
def test_member_examples(x, c, side, expected):
    assert member(x, c, side) is expected
    assert member_codim(x, c, side) is expected
    assert member_dual(x, c, side) is expected


def test_real_cuts_canonicalize():
    # Z[0] lies in pD^{<=c} exactly for c >= 0 and in pD^{>=c} exactly for c <= 0
    for c in QUARTERS:
        assert member(z_at(), c, "le") == (c >= 0)
        assert member(z_at(), c, "ge") == (c <= 0)
        # the heart at a non-half-integer cut is empty
        if (2 * c).denominator != 1:
            assert not (member(z_at(), c, "le") and member(z_at(), c, "ge"))


def test_hearts():
    groups = [FgAbGroup(1), FgAbGroup(0, (2,)), FgAbGroup(2, (3,)), FgAbGroup(0, (2, 4)), FgAbGroup(3)]
    for g in groups:
        x = FreeComplex.module(g, 0)
        in_half = member(x, "-1/2", "le") and member(x, "-1/2", "ge")
        in_zero = member(x, 0, "le") and member(x, 0, "ge")
        assert in_half == g.is_torsion()
        assert in_zero == g.is_torsion_free()


class TestTruncate:
    def test_split_sum(self):
        x = direct_sum(z_at(), torsion_at())
        for t in (p_truncate(x, "-1/2"), torsion_pair_truncate(x, "-1/2")):
            assert t.check() == []
            assert t.lower.cohomology_all() == {0: Z2}
            assert t.upper.cohomology_all() == {0: Z}

    def test_already_lower(self):
        x = direct_sum(z_at(-1), torsion_at())
        for t in (p_truncate(x, 0), torsion_pair_truncate(x, 0)):
            assert same_cohomology(t.lower, x)
            assert t.upper.is_acyclic()

    @pytest.mark.parametrize("flavor", ["le-gt", "lt-ge"])
    def test_torsion_in_degree_one(self, flavor):
        x = FreeComplex.two_term([[2]], 0)
        t = p_truncate(x, "1/2", flavor)
        u = torsion_pair_truncate(x, "1/2", flavor)
        assert t.check() == [] and u.check() == []
        if flavor == "le-gt":
            assert same_cohomology(t.lower, x) and t.upper.is_acyclic()
        else:
            assert t.lower.is_acyclic() and same_cohomology(t.upper, x)
        assert same_cohomology(t.lower, u.lower) and same_cohomology(t.upper, u.upper)
        t0 = p_truncate(x, 0)
        assert t0.lower.is_acyclic() and same_cohomology(t0.upper, x)

    def test_invalid_flavor(self):
        with pytest.raises(ValueError):
            p_truncate(z_at(), 0, "le-ge")


def test_sandwich_examples():
    x = torsion_at(deg=1)
    assert not std_member(x, "1/2", "le")
    assert member(x, "1/2", "le")
    assert std_member(x, 1, "le")


seeds = st.integers(0, 10 ** 6)


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_membership_agrees_three_ways(seed):
    rng = random.Random(seed)
    x = random_complex(rng)
    for c in QUARTERS:
        for side in ("le", "lt", "ge", "gt"):
            a = member(x, c, side)
            assert a == member_codim(x, c, side) == member_dual(x, c, side)
        assert member(x, c, "ge") == member_local_cohomology(x, c)
        # shifting moves cuts by integers
        assert member(shift(x, 1), c - 1, "le") == member(x, c, "le")


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_truncations_agree(seed):
    rng = random.Random(seed)
    x = random_complex(rng)
    for k in range(-8, 9):
        s = Fraction(k, 2)
        for flavor in ("le-gt", "lt-ge"):
            t = p_truncate(x, s, flavor)
            u = torsion_pair_truncate(x, s, flavor)
            assert t.check() == [] and u.check() == []
            assert same_cohomology(t.lower, u.lower)
            assert same_cohomology(t.upper, u.upper)


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_orthogonality(seed):
    rng = random.Random(seed)
    x, y = random_complex(rng), random_complex(rng)
    for k in range(-6, 7):
        s = Fraction(k, 2)
        a = p_truncate(x, s, "lt-ge").lower
        b = p_truncate(y, s, "lt-ge").upper
        assert 0 not in hom_complex(a, b).cohomology_all()
        assert member(a, s, "le") == member(dual(a), -s, "ge")
