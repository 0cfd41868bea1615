import pytest

from sdperv.poset import PosetError, SimplicialComplex, StratPoset, face_poset, product_poset
from sdperv.spaces import APEX, BUILTIN, builtin, circle, interval, rp3_complex, rp3_cone, simplex2


def f_vector(p: StratPoset):
    f = [0] * (p.top_dim + 1)
    for c in p.ids:
        f[p.dim(c)] += 1
    return tuple(f)


@pytest.mark.parametrize("name,f", [
    ("point", (1,)),
    ("interval", (2, 1)),
    ("circle", (3, 3)),
    ("simplex2", (3, 3, 1)),
    ("sphere2", (4, 6, 4)),
    ("torus", (9, 18, 9)),
])
def test_builtin_f_vectors(name, f):
    assert f_vector(builtin(name)) == f


def test_rp3_pinned():
    # the pinned triangulation: 11 vertices, Euler characteristic 0
    f = rp3_complex().f_vector()
    assert f == (11, 52, 82, 41)
    assert f[0] - f[1] + f[2] - f[3] == 0
    cone = rp3_cone()
    assert len(cone) == 1 + sum(f) * 2
    assert cone.star(APEX) == [APEX] + [c for c in cone.ids if c.startswith(APEX + "-")]


def test_order_queries():
    p = simplex2()
    assert p.leq("0", "0-1-2") and not p.leq("0-1-2", "0")
    assert set(p.star("0")) == {"0", "0-1", "0-2", "0-1-2"}
    assert set(p.closure("0-1")) == {"0", "1", "0-1"}
    assert p.is_open(["0-1-2", "0-1"]) and not p.is_open(["0"])
    assert p.is_closed(["0", "1", "0-1"])
    assert p.is_locally_closed(["0-1", "0-1-2"])
    assert not p.is_locally_closed(["0", "0-1-2"])


def test_incidences_square_to_zero():
    for name in BUILTIN:
        if name.startswith("rp3"):
            continue
        p = builtin(name)
        for c in p.ids:
            acc = {}
            for f in p.faces(c):
                for g in p.faces(f):
                    acc[g] = acc.get(g, 0) + p.inc(f, c) * p.inc(g, f)
            assert not any(acc.values())


def test_json_roundtrip():
    for p in (circle(), simplex2(), builtin("torus")):
        q = StratPoset.from_json(p.to_json())
        assert q.ids == p.ids and q.incidence == p.incidence
        assert q.to_json() == p.to_json()


def test_oriented_when_incidence_missing():
    obj = simplex2().to_json()
    del obj["incidence"]
    q = StratPoset.from_json(obj)
    assert set(q.incidence) == set(q.covers)


def test_sub_and_product():
    p = interval()
    s = p.sub(["0-1", "1"])
    assert s.ids == ["1", "0-1"] and not s.closed
    with pytest.raises(PosetError):
        p.sub(["0", "1"]).sub(["9"])
    sq = product_poset(p, p)
    assert f_vector(sq) == (4, 4, 1)


@pytest.mark.parametrize("cells,covers", [
    ((("a", 0), ("a", 1)), ()),
    ((("a", 0), ("b", 2)), (("a", "b"),)),
    ((("a", 0),), (("a", "b"),)),
    ((("a", -1),), ()),
])
def test_invalid_posets(cells, covers):
    with pytest.raises(PosetError):
        StratPoset(cells, covers)


def test_bad_incidence():
    cells = (("0", 0), ("1", 0), ("e", 1))
    covers = (("0", "e"), ("1", "e"))
    with pytest.raises(PosetError):
        StratPoset(cells, covers, {("0", "e"): 1})


def test_simplicial_errors():
    with pytest.raises(PosetError):
        SimplicialComplex(("0",), (("0", "1"),))
    with pytest.raises(PosetError):
        SimplicialComplex(("a", "b"), (("a", "b"),)).cone("a")
    with pytest.raises(KeyError):
        builtin("klein-bottle")
    assert face_poset(SimplicialComplex(("0", "1"), (("0", "1"),))).ids == ["0", "1", "0-1"]
