from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from jacobi_nh import (
    DepthExceeded,
    FourierPoly,
    HalfIntSymMatrix,
    HypothesisViolated,
    NearlyHoloElt,
    SingularIndex,
    apply_Delta,
    holomorphic_part,
    nh_assemble,
    nh_decompose,
)
from jacobi_nh.exactcore import enumerate_pairs
from jacobi_nh.randomdata import random_fourier, random_index, random_nh
from jacobi_nh.scalarproj import NHDecomposition, component_count, hypothesis_diagnostic, raise_holomorphic

M2 = HalfIntSymMatrix([[2]])


def test_beta_times_holomorphic():
    # f = beta g with g = e(tau + 2z) + 3 e(2 tau + z), k = 6, m = 2.
    # L(beta g) = -g and c(0; 1) = 6 - 2 - 1/2 = 7/2, so g_{0;1} = -2/7 g and
    # the holomorphic part is 2/7 (d_tau - d_z^2 / 4) g.
    g = FourierPoly(1, {(1, (2,)): 1, (2, (1,)): 3})
    f = NearlyHoloElt.from_fourier(g, 6, M2, r=1)
    dec = nh_decompose(f)
    assert dec.component((0,), 1) == g.scale(Fraction(-2, 7))
    assert dec.component((1,), 0).is_zero()
    assert dec.holomorphic == FourierPoly(1, {(1, (2,)): Fraction(1, 14), (2, (1,)): Fraction(45, 56)})
    assert holomorphic_part(f) == dec.holomorphic


def test_raised_form_decomposes_to_itself():
    g = FourierPoly(1, {(1, (1,)): 1})
    f = NearlyHoloElt.from_fourier(g, 4, M2)
    raised = apply_Delta(4, f)
    dec = nh_decompose(raised)
    assert dec.component((0,), 1) == g
    assert dec.holomorphic.is_zero()


@given(st.integers(0, 10**6), st.integers(1, 2), st.integers(1, 3))
def test_roundtrip_from_function(seed, h, d):
    m = random_index(h, seed)
    f = random_nh(d + h + 1, m, d, seed)
    dec = nh_decompose(f, d)
    assert nh_assemble(dec) == f
    assert dec.multiplicities() == [len(enumerate_pairs(lv, h)) for lv in range(d + 1)]


@given(st.integers(0, 10**6), st.integers(1, 2), st.integers(1, 3))
def test_roundtrip_from_components(seed, h, d):
    m = random_index(h, seed)
    k = d + h + 1
    comps = {pair: random_fourier(h, seed + i) for i, pair in enumerate(p for lv in range(d + 1) for p in enumerate_pairs(lv, h))}
    dec = NHDecomposition(k, m, d, comps)
    assert nh_decompose(nh_assemble(dec), d) == dec


@given(st.integers(0, 10**6))
def test_projection_is_linear(seed):
    m = random_index(2, seed)
    f, g = random_nh(6, m, 2, seed), random_nh(6, m, 2, seed + 1)
    assert holomorphic_part(f + g, 2) == holomorphic_part(f, 2) + holomorphic_part(g, 2)


def test_component_count():
    assert component_count(2, 1) == 1 + 1 + 2
    assert component_count(2, 2) == 1 + 2 + 4


def test_depth_exceeded():
    f = NearlyHoloElt.monomial(9, M2, (3,), 0)
    with pytest.raises(DepthExceeded):
        nh_decompose(f, 2)


def test_hypothesis_boundary_even_h():
    # h = 2, k - d = 1 = h/2
    m = HalfIntSymMatrix([[1, 0], [0, 1]])
    f = NearlyHoloElt.monomial(3, m, (0, 0), 1)
    with pytest.raises(HypothesisViolated) as exc:
        nh_decompose(f, 2)
    assert exc.value.diagnostic
    assert all(c <= 0 for _, _, c in exc.value.diagnostic)


def test_hypothesis_diagnostic_values():
    # k = 3, d = 2, h = 2: c(0; 1) = 3 - 2 - 1 = 0
    diag = hypothesis_diagnostic(3, 2, 2)
    assert ((0, 0), 1, 0) in diag
    # for d <= 1 the constants stay positive although the bound fails
    assert hypothesis_diagnostic(1, 1, 2) == []


def test_singular_index():
    m = HalfIntSymMatrix([[1, 1], [1, 1]])
    with pytest.raises(SingularIndex):
        nh_decompose(NearlyHoloElt.monomial(6, m, (1, 0), 0), 1)


def test_raise_holomorphic_matches_operator():
    m = random_index(2, 3)
    g = random_fourier(2, 5)
    direct = apply_Delta(5, NearlyHoloElt.from_fourier(g, 5, m))
    assert raise_holomorphic((0, 0), 1, 7, m, g) == direct
