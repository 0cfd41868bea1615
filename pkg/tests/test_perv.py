import math
import random
from fractions import Fraction

import pytest

from sdperv.cellspace import (constant_sheaf, direct_sum, extend_zero, restrict_open, sections,
                              skyscraper, verdier_dual)
from sdperv.dz import FreeComplex
from sdperv.intlin import FgAbGroup
from sdperv.perv import (check_extpr, check_funct, find_iso, ks_truncate, member_ks, member_sd,
                         member_sd_dual, member_sd_pdim, member_sd_pointwise,
                         membership_witness, pdim, permuted_base,
                         random_sheaf, sd_range, sd_truncate, stalkwise_equal, verify_tstructure)
from sdperv.spaces import circle, interval, point, simplex2

Z2_MODEL = FreeComplex.two_term([[2]], -1)   # Z/2 in degree 0
QUARTERS = [Fraction(k, 4) for k in range(-8, 9)]


def heart_cuts(k, member):
    return [c for c in QUARTERS if member(k, c, "le") and member(k, c, "ge")]


class TestPdim:
    def test_examples(self):
        x = circle()
        assert pdim(constant_sheaf(x), 0).value == 1
        assert pdim(constant_sheaf(x, Z2_MODEL), 0).value == 0
        assert pdim(skyscraper(x, "0", Z2_MODEL), 0).value == -1
        assert pdim(constant_sheaf(x), 1).value == -math.inf


class TestMembership:
    def test_circle_heart_is_one_half(self):
        z = constant_sheaf(circle())
        assert heart_cuts(z, member_sd) == [Fraction(1, 2)]
        assert not member_sd(z, "1/4", "le") and not member_sd(z, "3/4", "ge")
        assert member_ks(z, "1/2", "le") and member_ks(z, "1/2", "ge")

    def test_torsion_skyscraper(self):
        s = skyscraper(point(), "0", Z2_MODEL)
        assert heart_cuts(s, member_sd) == [Fraction(-1, 2)]
        assert Fraction(0) in heart_cuts(s, member_ks)
        assert Fraction(-1, 2) not in heart_cuts(s, member_ks)

    def test_witness(self):
        z = constant_sheaf(circle())
        w = membership_witness(z, "1/4", "le")
        assert w is not None and w[1] == "stalk" and circle().dim(w[0]) == 1
        assert membership_witness(z, "1/2", "le") is None
        w = membership_witness(z, "3/4", "ge")
        assert w is not None and w[1] == "costalk"
        with pytest.raises(ValueError):
            member_sd(z, 0, "<=")

    def test_crosschecks_on_samples(self):
        rng = random.Random(11)
        for space in (interval(), circle(), simplex2()):
            for _ in range(6):
                k = random_sheaf(space, rng)
                dk = verdier_dual(k)
                for c in QUARTERS:
                    for side in ("le", "ge", "lt", "gt"):
                        assert member_sd(k, c, side) == member_sd_dual(k, c, side, dk)
                    assert member_sd(k, c, "le") == member_sd_pdim(k, c)
                    assert member_sd(k, c, "ge") == member_sd_pointwise(k, c)

    def test_sd_range(self):
        z = constant_sheaf(circle())
        assert sd_range(z) == (Fraction(1, 2), Fraction(1, 2))
        # the zero sheaf lies in every class
        from sdperv.cellspace import SheafComplex
        assert sd_range(SheafComplex.zero(circle()), -2, 2) == (2, -2)


class TestTruncation:
    def test_already_lower(self):
        x = circle()
        z = constant_sheaf(x)
        t = sd_truncate(z, 1)
        assert t.check() == []
        assert stalkwise_equal(t.lower, z) and t.upper.is_acyclic()
        t = ks_truncate(z, "1/2")
        assert t.check() == [] and t.upper.is_acyclic()

    @pytest.mark.parametrize("flavor", ["le-gt", "lt-ge"])
    def test_mixed_sum_splits(self, flavor):
        x = interval()
        k = direct_sum(constant_sheaf(x), skyscraper(x, "0", Z2_MODEL), skyscraper(x, "1").shift(-2))
        for c in QUARTERS:
            for trunc in (sd_truncate, ks_truncate):
                t = trunc(k, c, flavor)
                assert t.check() == []

    def test_open_arc_shriek(self):
        # j_! Z on an open arc of the circle already lies in the heart at 1/2:
        # the (<, >=) truncation puts everything in the upper term
        x = circle()
        u = ["0-1", "1", "1-2"]
        k = extend_zero(restrict_open(constant_sheaf(x), u), x)
        t = sd_truncate(k, "1/2", "lt-ge")
        assert t.check() == []
        assert member_sd(k, "1/2", "le") and member_sd(k, "1/2", "ge")
        assert t.lower.is_acyclic()
        assert find_iso(t.upper, k) is not None

    def test_no_shortcut_agrees(self):
        rng = random.Random(2)
        x = simplex2()
        for _ in range(4):
            k = random_sheaf(x, rng)
            for c in ("-1/2", "0", "1"):
                a, b = sd_truncate(k, c), sd_truncate(k, c, shortcut=False)
                assert b.check() == []
                assert stalkwise_equal(a.lower, b.lower) and stalkwise_equal(a.upper, b.upper)


class TestFunct:
    def test_point_inclusion(self):
        z = constant_sheaf(circle())
        rep = check_funct(("inclusion", ["0"]), z, "1/2")
        assert rep.ok
        names = [n for n, _, _ in rep.checks]
        assert names == ["(i) f^-1", "(ii) f^!", "(iii) Rf_*", "(iv) Rf_!"]
        # i^! Z = Z[-1] lies in pD^{>=1/2} over the point
        assert dict((n, p) for n, p, _ in rep.checks)["(ii) f^!"]

    def test_constant_map(self):
        z = constant_sheaf(circle())
        rep = check_funct(("constant",), z, "1/2")
        assert rep.ok and rep.d == 1
        assert dict((n, p) for n, p, _ in rep.checks)["(iii) Rf_*"]
        from sdperv.tmod import member
        assert member(sections(z), 0, "ge")

    def test_open_edge(self):
        rep = check_funct(("inclusion", ["0-1"]), constant_sheaf(circle()), "1/2")
        assert rep.ok and rep.d == 0

    def test_unsupported(self):
        from sdperv.cellspace import SheafError
        with pytest.raises(SheafError):
            check_funct(("projection",), constant_sheaf(circle()), 0)


def test_extpr():
    c = circle()
    z = constant_sheaf(c)
    assert check_extpr(z, z, "1/2", "1/2") == (True, True)
    s = skyscraper(c, "0", Z2_MODEL)
    e = skyscraper(c, "0-1")
    prem, conc = check_extpr(s, e, "-1/2", "1/2")
    assert prem and conc


def test_verify_small():
    rep = verify_tstructure(interval(), samples=3, seed=1)
    assert rep.ok, rep.failures[:3]
    assert rep.counts["orthogonality"][0] > 0
    empty = verify_tstructure(interval(), samples=0)
    assert empty.ok and empty.counts == {}


def test_permuted_base_same_cells():
    x = simplex2()
    y = permuted_base(x, random.Random(0))
    assert sorted(y.ids) == sorted(x.ids)
