import random

import pytest
from hypothesis import given, settings, strategies as st

from sdperv.cellspace import (SheafComplex, SheafError, constant_sheaf, costalk, costalk_via_dual,
                              direct_sum, extend_zero, external_tensor, global_hom, hom_complex,
                              pushforward_closed, pushforward_open, restrict_closed, restrict_open,
                              sections, sections_c, sheaf_hom, shriek_closed, skyscraper, tensor,
                              verdier_dual)
from sdperv.dz import FreeComplex
from sdperv.intlin import FgAbGroup
from sdperv.perv import random_sheaf, stalkwise_equal
from sdperv.spaces import circle, interval, point, simplex2, sphere2, torus

Z = FgAbGroup(1)
Z2 = FgAbGroup(0, (2,))


def h(x):
    return x.cohomology_all()


@pytest.mark.parametrize("space,expected", [
    (point, {0: Z}),
    (interval, {0: Z}),
    (circle, {0: Z, 1: Z}),
    (simplex2, {0: Z}),
    (sphere2, {0: Z, 2: Z}),
    (torus, {0: Z, 1: FgAbGroup(2), 2: Z}),
])
def test_sections_of_constant(space, expected):
    x = space()
    assert h(sections(constant_sheaf(x))) == expected
    # compact spaces: compact support changes nothing
    assert h(sections_c(constant_sheaf(x))) == expected


def test_constant_with_coefficients():
    x = circle()
    k = constant_sheaf(x, FreeComplex.two_term([[2]], -1))
    assert h(sections(k)) == {0: Z2, 1: Z2}
    assert all(h(k.stalk(c)) == {0: Z2} for c in x.ids)


def test_stalks_and_costalks():
    x = sphere2()
    z = constant_sheaf(x)
    for c in x.ids:
        assert h(z.stalk(c)) == {0: Z}
        # a cell of dimension d in a surface: local cohomology in degree 2 - d
        assert h(costalk(z, c)) == {2 - x.dim(c): Z}
        assert h(costalk_via_dual(z, c)) == h(costalk(z, c))
    y = interval()
    zi = constant_sheaf(y)
    assert h(costalk(zi, "0")) == {}
    assert h(costalk(zi, "0-1")) == {0: Z}


def test_skyscrapers():
    x = circle()
    s = skyscraper(x, "0")
    assert {c: h(s.stalk(c)) for c in x.ids} == {"0": {0: Z}, "1": {}, "2": {},
                                                "0-1": {}, "0-2": {}, "1-2": {}}
    e = skyscraper(x, "0-1")
    assert h(e.stalk("0")) == {} and h(e.stalk("0-1")) == {0: Z}
    assert h(sections(e)) == {1: Z}   # compact base: sections of j_! Z_e are R Gamma_c(e)
    assert h(sections_c(e)) == {1: Z}
    assert h(hom_complex(s, s)) == {0: Z}
    assert h(hom_complex(s, e)) == {1: Z}
    assert h(hom_complex(e, s)) == {}
    assert global_hom(s, s) == Z
    with pytest.raises(SheafError):
        skyscraper(x, "9")


def test_verdier_dual():
    x = circle()
    d = verdier_dual(constant_sheaf(x))
    assert all(h(d.stalk(c)) == {-1: Z} for c in x.ids)
    # dual of Z on an open edge is R j_* Z[1]
    de = verdier_dual(skyscraper(x, "0-1"))
    assert {c for c in x.ids if h(de.stalk(c))} == {"0", "1", "0-1"}
    assert all(h(de.stalk(c)) == {-1: Z} for c in ("0", "1", "0-1"))
    # closed interval: the dualizing complex vanishes at the boundary
    di = verdier_dual(constant_sheaf(interval()))
    assert h(di.stalk("0")) == {} and h(di.stalk("0-1")) == {-1: Z}


def test_open_closed_functors():
    x = circle()
    z = constant_sheaf(x)
    u = ["0-1", "1", "1-2"]          # open arc around vertex 1
    zu = restrict_open(z, u)
    assert h(sections(zu)) == {0: Z}
    shriek, star = extend_zero(zu, x), pushforward_open(zu, x)
    assert h(sections(shriek)) == {1: Z}   # compactly supported cohomology of an arc
    assert h(sections(star)) == {0: Z}
    assert h(star.stalk("0")) == {0: Z} and h(shriek.stalk("0")) == {}
    zc = restrict_closed(z, ["0", "2", "0-2"])
    assert h(sections(zc)) == {0: Z}
    pc = pushforward_closed(zc, x)
    assert h(pc.stalk("1")) == {} and h(pc.stalk("0")) == {0: Z}
    # i^! of Z at a vertex of the circle is Z[-1]
    ish = shriek_closed(z, ["0"])
    assert h(ish.stalk("0")) == {1: Z}
    with pytest.raises(SheafError):
        restrict_open(z, ["0"])
    with pytest.raises(SheafError):
        restrict_closed(z, ["0-1"])


def test_recollement_stalks():
    # j_! j^* K -> K -> i_* i^* K is exact stalkwise
    x = simplex2()
    rng = random.Random(5)
    u = x.star("0")
    zc = [c for c in x.ids if c not in u]
    for _ in range(5):
        k = random_sheaf(x, rng)
        a = extend_zero(restrict_open(k, u), x)
        b = pushforward_closed(restrict_closed(k, zc), x)
        assert stalkwise_equal(direct_sum(a, b), k)


def test_tensor_and_hom():
    x = circle()
    z = constant_sheaf(x)
    s = skyscraper(x, "1")
    assert stalkwise_equal(tensor(z, s), s)
    assert stalkwise_equal(sheaf_hom(z, s), s)
    t = tensor(s, s)
    assert h(t.stalk("1")) == {0: Z}
    # R Hom(S_v, Z) is the costalk at v placed at v
    hv = sheaf_hom(s, z)
    assert h(hv.stalk("1")) == {1: Z} and h(hv.stalk("0")) == {}


def test_external_tensor():
    c = circle()
    k = external_tensor(constant_sheaf(c), constant_sheaf(c))
    assert h(sections(k)) == {0: Z, 1: FgAbGroup(2), 2: Z}
    p = external_tensor(skyscraper(c, "0"), skyscraper(c, "0-1"))
    assert h(p.stalk("0|0-1")) == {0: Z}
    assert sum(1 for cell in p.base.ids if h(p.stalk(cell))) == 1


def test_json_roundtrip():
    x = simplex2()
    k = direct_sum(constant_sheaf(x), skyscraper(x, "0-1").shift(1))
    k2 = SheafComplex.from_json(x, k.to_json())
    assert k2.to_json() == k.to_json()
    assert stalkwise_equal(k, k2)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10 ** 6), st.sampled_from([interval, circle, simplex2, sphere2]))
def test_biduality_and_costalk_crosscheck(seed, space):
    x = space()
    k = random_sheaf(x, random.Random(seed))
    assert stalkwise_equal(verdier_dual(verdier_dual(k)), k)
    for c in x.ids:
        assert h(costalk(k, c)) == h(costalk_via_dual(k, c))
