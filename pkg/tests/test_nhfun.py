from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from jacobi_nh import FourierPoly, HalfIntSymMatrix, NearlyHoloElt, check_support, depth, total_degree
from jacobi_nh.errors import DegreeMismatch, ShapeMismatch
from jacobi_nh.nhfun import depth_projection_condition
from jacobi_nh.randomdata import random_holomorphic_vs, random_index, random_nh

M1 = HalfIntSymMatrix([[1]])
NEG_INF = float("-inf")


def test_depth_example_h1_s2():
    # (alpha^2 + beta) X^2 + alpha X Y + Y^2
    f = NearlyHoloElt(
        4,
        M1,
        {
            ((2,), 0, 0, (0,), (2, 0)): 1,
            ((0,), 1, 0, (0,), (2, 0)): 1,
            ((1,), 0, 0, (0,), (1, 1)): 1,
            ((0,), 0, 0, (0,), (0, 2)): 1,
        },
        s=2,
    )
    assert depth(f) == 0
    assert depth_projection_condition(f, 0)
    # moving alpha onto Y^2 raises the depth
    g = f + NearlyHoloElt.monomial(4, M1, (1,), 0, mono=(0, 2))
    assert depth(g) == 1
    assert not depth_projection_condition(g, 0)


def test_scalar_depth_is_total_degree():
    f = NearlyHoloElt.monomial(6, M1, (1,), 1, n=1, rv=(1,))
    assert total_degree(f) == 3 == depth(f)
    assert depth(NearlyHoloElt.zero(6, M1)) == NEG_INF
    assert depth(NearlyHoloElt.constant(6, M1)) == 0


@given(st.integers(0, 10**6), st.integers(0, 3))
def test_depth_agrees_with_condition(seed, d):
    m = random_index(1, seed)
    f = random_holomorphic_vs(5, 2, m, seed)
    g = f.mul_monomial((d,), 0)
    dd = depth(g)
    assert depth_projection_condition(g, dd)
    if dd > 0:
        assert not depth_projection_condition(g, dd - 1)


def test_arithmetic_and_labels():
    a = NearlyHoloElt.monomial(4, M1, (1,), 0, n=1, rv=(1,), c=2)
    b = NearlyHoloElt.monomial(4, M1, (1,), 0, n=1, rv=(1,), c=-2)
    assert (a + b).is_zero()
    assert a + b == 0
    with pytest.raises(ShapeMismatch):
        a + NearlyHoloElt.monomial(6, M1, (1,), 0)
    p = a.multiply(NearlyHoloElt.monomial(2, M1, (0,), 1, n=2, rv=(-1,)))
    assert p.k == 6
    assert p.terms == {((1,), 1, Fraction(3), (0,), (0, 0)): Fraction(2)}


def test_fourier_roundtrip_and_components():
    fp = FourierPoly(1, {(1, (1,)): 3, (2, (0,)): Fraction(1, 2)})
    f = NearlyHoloElt.from_fourier(fp, 4, M1, nu=(2,), r=1)
    assert f.component((2,), 1) == fp
    assert not f.is_holomorphic()
    with pytest.raises(DegreeMismatch):
        f.to_fourier()
    assert NearlyHoloElt.from_fourier(fp, 4, M1).to_fourier() == fp


def test_level_validation():
    with pytest.raises(ShapeMismatch):
        FourierPoly(1, {(Fraction(1, 3), (0,)): 1}, level=2)
    assert FourierPoly(1, {(Fraction(1, 2), (0,)): 1}, level=2).modes() == [(Fraction(1, 2), (0,))]


def test_check_support():
    fp = FourierPoly(1, {(1, (2,)): 1, (1, (3,)): 1, (0, (0,)): 1})
    assert check_support(fp, M1) == [(Fraction(1), (3,))]


def test_vs_components_roundtrip():
    m = HalfIntSymMatrix([[2, Fraction(1, 2)], [Fraction(1, 2), 1]])
    f = random_holomorphic_vs(5, 2, m, 7)
    assert NearlyHoloElt.from_vs_components(f.vs_components(), 5, 2, m) == f


@given(st.integers(0, 10**6))
def test_multiply_is_bilinear(seed):
    m = random_index(1, seed)
    f, g, u = random_nh(2, m, 2, seed), random_nh(2, m, 2, seed + 1), random_nh(3, m, 1, seed + 2)
    assert u.multiply(f + g) == u.multiply(f) + u.multiply(g)
    assert total_degree(u.multiply(f)) <= total_degree(u) + total_degree(f)
