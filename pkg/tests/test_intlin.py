import math

import pytest
from hypothesis import given, settings, strategies as st

from sdperv.intlin import (FgAbGroup, IntMatrix, codim_support, elementary_divisors,
                           group_from_presentation, image_saturation, kernel_basis,
                           local_cohomology_at_prime, smith_normal_form, torsion_split)


def diag_of(d: IntMatrix):
    return [d[i, i] for i in range(min(d.rows, d.cols))]


@pytest.mark.parametrize("rows,expected", [
    ([[2, 0], [0, 3]], [1, 6]),
    ([[1, 0], [0, 1]], [1, 1]),
    ([[2, 4], [4, 8]], [2, 0]),
])
def test_snf_examples(rows, expected):
    a = IntMatrix.from_rows(rows)
    u, d, v = smith_normal_form(a)
    assert diag_of(d) == expected
    assert u @ a @ v == d


@pytest.mark.parametrize("rows,cols,group", [
    ([[2]], 1, FgAbGroup(0, (2,))),
    ([[]], 0, FgAbGroup(1)),
    ([[2, 0], [0, 3]], 2, FgAbGroup(0, (6,))),
])
def test_presentation(rows, cols, group):
    assert group_from_presentation(IntMatrix.from_rows(rows, cols=cols)) == group


def test_codim_and_split():
    assert codim_support(FgAbGroup(1)) == 0
    assert codim_support(FgAbGroup(0, (6,))) == 1
    assert codim_support(FgAbGroup()) == math.inf
    assert torsion_split(FgAbGroup(1, (2,))) == (FgAbGroup(0, (2,)), 1)
    assert torsion_split(FgAbGroup(0, (4,))) == (FgAbGroup(0, (4,)), 0)
    assert torsion_split(FgAbGroup()) == (FgAbGroup(), 0)


@pytest.mark.parametrize("m,p,expected", [
    (FgAbGroup(0, (4,)), 2, (FgAbGroup(0, (4,)), False)),
    (FgAbGroup(1), 2, (FgAbGroup(), True)),
    (FgAbGroup(0, (3,)), 2, (FgAbGroup(), False)),
    (FgAbGroup(1, (6,)), 3, (FgAbGroup(0, (3,)), True)),
])
def test_local_cohomology(m, p, expected):
    assert local_cohomology_at_prime(m, p) == expected


def test_group_arithmetic_and_json():
    g = FgAbGroup.from_cyclic(1, [2, 3, 4])
    assert g == FgAbGroup(1, (2, 12))
    assert str(g) == "Z + Z/2 + Z/12"
    assert FgAbGroup.from_json(g.to_json()) == g
    assert g.primary_part(2) == FgAbGroup(0, (2, 4))
    assert (FgAbGroup(0, (2,)) + FgAbGroup(0, (3,))) == FgAbGroup(0, (6,))


matrices = st.integers(1, 4).flatmap(lambda r: st.integers(1, 4).flatmap(
    lambda c: st.lists(st.lists(st.integers(-6, 6), min_size=c, max_size=c),
                       min_size=r, max_size=r)))


@settings(max_examples=150, deadline=None)
@given(matrices)
def test_snf_properties(rows):
    a = IntMatrix.from_rows(rows)
    u, d, v = smith_normal_form(a)
    assert u @ a @ v == d
    assert abs(u.det()) == 1 and abs(v.det()) == 1
    assert all(d[i, j] == 0 for (i, j) in d.data if i != j)
    ds = [x for x in diag_of(d) if x]
    assert all(x > 0 for x in ds)
    assert all(b % a_ == 0 for a_, b in zip(ds, ds[1:]))
    assert sorted(x for x in elementary_divisors(a)) == ds


@settings(max_examples=100, deadline=None)
@given(matrices)
def test_kernel_and_saturation(rows):
    a = IntMatrix.from_rows(rows)
    k = kernel_basis(a)
    assert (a @ k).is_zero()
    s = image_saturation(a)
    # the saturation has unit elementary divisors
    assert all(x == 1 for x in elementary_divisors(s))


@settings(max_examples=100, deadline=None)
@given(matrices)
def test_invariant_factors_match_sympy(rows):
    sympy = pytest.importorskip("sympy")
    from sympy.matrices.normalforms import invariant_factors
    a = IntMatrix.from_rows(rows)
    ours = sorted(x for x in elementary_divisors(a) if x)
    theirs = sorted(abs(int(x)) for x in invariant_factors(sympy.Matrix(rows), domain=sympy.ZZ) if x)
    assert ours == theirs
