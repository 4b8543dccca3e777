import json
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from jacobi_nh import FourierPoly, HalfIntSymMatrix, NearlyHoloElt, ParseError
from jacobi_nh.errors import OddRank, ShapeMismatch, TruncationTooLarge
from jacobi_nh.formsio import (
    GroupElement,
    JacobiFormData,
    LatticeSpec,
    e8_gram,
    e8_spec,
    evaluate,
    iota,
    short_vectors,
    slash_check,
    standard_generators,
    theta_series,
)
from jacobi_nh.formsio.numeric import eta, iota_second_form
from jacobi_nh.formsio.serialize import (
    deserialize,
    deserialize_components,
    deserialize_decomposition,
    deserialize_nh,
    serialize,
    serialize_components,
    serialize_decomposition,
    serialize_nh,
)
from jacobi_nh.randomdata import random_components, random_index, random_nh
from jacobi_nh.scalarproj import nh_decompose
from jacobi_nh.symrep import SymPoly


def sigma3(n):
    return sum(d**3 for d in range(1, n + 1) if n % d == 0)


@pytest.fixture(scope="module")
def theta1():
    return theta_series(e8_spec((0,)), 10)


# -- lattice -------------------------------------------------------------------


def test_e8_is_unimodular():
    g = np.array(e8_gram(), dtype=float)
    assert round(np.linalg.det(g)) == 1
    assert e8_spec().index() == HalfIntSymMatrix([[1, Fraction(-1, 2)], [Fraction(-1, 2), 1]])


def test_e8_shell_counts():
    xs = short_vectors(e8_gram(), 8)
    norms = np.einsum("ij,jk,ik->i", xs, np.array(e8_gram()), xs) // 2
    counts = np.bincount(norms)
    assert counts[0] == 1
    assert [int(c) for c in counts[1:]] == [240 * sigma3(n) for n in range(1, 5)]


def test_theta_coefficients(theta1):
    c = theta1.coeffs
    assert c.scalar_coefficient(0, (0,)) == 1
    assert all(v > 0 and v.denominator == 1 for v in c.coeffs.values())
    assert theta1.violations() == []
    # r = 0 slice: vectors orthogonal to a root, E7 shells
    assert c.scalar_coefficient(1, (0,)) == 126
    # summing over r gives the E8 shell counts
    for n in range(1, 4):
        assert sum(v for (nn, _, _), v in c.coeffs.items() if nn == n) == 240 * sigma3(n)


def test_lattice_validation():
    with pytest.raises(OddRank):
        LatticeSpec([[2]], [[1]])
    with pytest.raises(ShapeMismatch):
        LatticeSpec([[2, 3], [3, 2]], [[1, 0]])
    with pytest.raises(TruncationTooLarge):
        theta_series(e8_spec(), 60)


# -- factor of automorphy ------------------------------------------------------

POINT = (0.2 + 1.3j, (0.15 - 0.1j, -0.2 + 0.3j))
M = e8_spec().index()


def _words():
    gens = standard_generators(2)
    names = sorted(gens)
    return st.lists(st.sampled_from(names), min_size=1, max_size=4).map(lambda w: [gens[n] for n in w])


def _product(word):
    g = word[0]
    for x in word[1:]:
        g = g @ x
    return g


@given(_words(), _words())
def test_iota_cocycle(w1, w2):
    g1, g2 = _product(w1), _product(w2)
    tau, z = POINT
    k = 4
    def j(g, t, zz):
        return (float(g.c) * t + float(g.d)) ** k * iota(g, t, zz, M)
    lhs = j(g1 @ g2, tau, z)
    rhs = j(g1, *g2.act(tau, z)) * j(g2, tau, z)
    assert abs(lhs - rhs) <= 1e-7 * max(1.0, abs(lhs))


@given(_words())
def test_iota_forms_agree(word):
    g = _product(word)
    a, b = iota(g, *POINT, M), iota_second_form(g, *POINT, M)
    assert abs(a - b) <= 1e-8 * max(1.0, abs(a))


def test_group_element_validation():
    with pytest.raises(ShapeMismatch):
        GroupElement(1, 1, 1, 1, (0,), (0,), ((0,),))
    with pytest.raises(ShapeMismatch):
        GroupElement.translation((1, 0), (0, 1), ((0, 0), (0, 0)))
    g = standard_generators(1)["S"] @ standard_generators(1)["lambda_1"]
    assert g.is_integral()
    assert GroupElement.from_matrix(g.matrix(), 1) == g


def test_eta_on_vs_values():
    g = standard_generators(1)["S"]
    poly = SymPoly(1, 1, {(1, 0): 1.0, (0, 1): 2.0})
    out = eta(g, 1j, (0.1j,), 0, 1, HalfIntSymMatrix([[1]]), poly)
    # (c tau + d) X + ... with c = 1, d = 0, tau = i
    assert abs(out.get((0, 1)) - 2 * iota(g, 1j, (0.1j,), [[1]])) < 1e-12


# -- numeric slash checks ------------------------------------------------------

H1_POINTS = ((1j, (0.11 + 0.07j,)), (0.5 + 1.5j, (-0.09 + 0.04j,)))


def test_theta_h1_invariant(theta1):
    for name, g in standard_generators(1).items():
        rep = slash_check(theta1, g, H1_POINTS, tol=1e-6, name=name)
        assert rep.passed, str(rep)


def test_slash_detects_wrong_weight(theta1):
    wrong = JacobiFormData(1, 6, 0, theta1.m, 1, theta1.trunc, theta1.coeffs)
    rep = slash_check(wrong, standard_generators(1)["S"], H1_POINTS, tol=1e-6)
    assert not rep.passed


def test_evaluate_nearly_holomorphic():
    m = HalfIntSymMatrix([[1]])
    f = NearlyHoloElt.monomial(2, m, (1,), 1, n=1, rv=(1,))
    tau, z = 0.1 + 2j, 0.3 + 0.4j
    alpha, beta = z.imag / tau.imag, 1 / (8 * np.pi * tau.imag)
    expected = alpha * beta * np.exp(2j * np.pi * (tau + z))
    assert abs(evaluate(f, tau, (z,)) - expected) < 1e-14


# -- serialization -------------------------------------------------------------


def test_form_roundtrip_bit_exact(theta1):
    data = serialize(theta1)
    back = deserialize(data)
    assert back == theta1
    assert serialize(back) == data
    doc = json.loads(data)
    assert doc["two_m"] == [[2]] and doc["k"] == 4


@given(st.integers(0, 10**6))
def test_nh_roundtrip(seed):
    f = random_nh(5, random_index(2, seed), 2, seed)
    data = serialize_nh(f)
    assert deserialize_nh(data) == f
    assert serialize_nh(deserialize_nh(data)) == data


@given(st.integers(0, 10**6))
def test_components_and_decomposition_roundtrip(seed):
    m = random_index(1, seed)
    t = random_components(4, 2, m, seed)
    assert deserialize_components(serialize_components(t)) == t
    dec = nh_decompose(random_nh(4, m, 2, seed), 2)
    data = serialize_decomposition(dec)
    assert deserialize_decomposition(data) == dec
    assert serialize_decomposition(deserialize_decomposition(data)) == data


def _doc(**over):
    doc = {
        "format": "jacobi-nh/1", "kind": "form", "h": 1, "k": 4, "s": 0, "level": 1, "two_m": [[2]], "trunc": 2,
        "coeffs": [{"n_num": 0, "n_den": 1, "r": [0], "value": [[0, 0, 1, 1]]}],
    }
    doc.update(over)
    return json.dumps(doc).encode()


@pytest.mark.parametrize(
    "data,loc",
    [
        (b"{not json", "$"),
        (_doc(format="other"), "$.format"),
        (_doc(two_m=[[1]]), "$.two_m"),
        (_doc(coeffs=[{"n_num": 0, "n_den": 1, "r": [0, 1], "value": [[0, 0, 1, 1]]}]), "$.coeffs[0].r"),
        (_doc(coeffs=[{"n_num": 0, "n_den": 1, "r": [0], "value": [[0, 0, 1, 0]]}]), "$.coeffs[0].value[0]"),
        (_doc(coeffs=[{"n_num": 1, "n_den": 2, "r": [0], "value": [[0, 0, 1, 1]]}]), "$.coeffs[0]"),
        (_doc(k="4"), "$.k"),
    ],
)
def test_parse_errors_have_locations(data, loc):
    with pytest.raises(ParseError) as exc:
        deserialize(data)
    assert exc.value.location == loc


def test_strict_support():
    bad = _doc(coeffs=[
        {"n_num": 0, "n_den": 1, "r": [0], "value": [[0, 0, 1, 1]]},
        {"n_num": 1, "n_den": 1, "r": [5], "value": [[0, 0, 1, 1]]},
    ])
    assert deserialize(bad).violations() == [(Fraction(1), (5,))]
    with pytest.raises(ParseError) as exc:
        deserialize(bad, strict=True)
    assert exc.value.location == "$.coeffs[1]"


def test_level_n_data():
    fp = FourierPoly(1, {(Fraction(1, 2), (1,)): 3}, level=2)
    phi = JacobiFormData(1, 4, 0, HalfIntSymMatrix([[1]]), 2, 1, fp)
    assert deserialize(serialize(phi)) == phi
