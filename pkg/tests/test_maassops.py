import cmath
import math
from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, strategies as st

from jacobi_nh import (
    HalfIntSymMatrix,
    NearlyHoloElt,
    OperatorExpr,
    apply_Delta,
    apply_L,
    apply_LJ,
    apply_R,
    apply_RJ,
    apply_RtJ,
    commutator_check,
    commutator_table,
    lr_constant,
)
from jacobi_nh.errors import HypothesisViolated, SingularIndex, WeightMismatch
from jacobi_nh.exactcore import enumerate_pairs
from jacobi_nh.formsio.numeric import evaluate
from jacobi_nh.maassops import (
    apply_L_from_definition,
    apply_LJ_from_definition,
    apply_Lhat,
    apply_Rhat,
    d_tau,
    d_taubar,
    d_z,
    d_zbar,
    generating_family,
    lr_constant_probe,
    lr_constant_recursion,
)
from jacobi_nh.randomdata import random_index, random_nh

M1 = HalfIntSymMatrix([[3]])

# -- symbolic oracle (h = 1) ---------------------------------------------------

x, y, u, v = sp.symbols("x y u v", real=True)
I, pi = sp.I, sp.pi


def _dtau(F):
    return (sp.diff(F, x) - I * sp.diff(F, y)) / 2 / (4 * pi * I)


def _dtaub(F):
    return (sp.diff(F, x) + I * sp.diff(F, y)) / 2 / (4 * pi * I)


def _dz(F):
    return (sp.diff(F, u) - I * sp.diff(F, v)) / 2 / (4 * pi * I)


def _dzb(F):
    return (sp.diff(F, u) + I * sp.diff(F, v)) / 2 / (4 * pi * I)


ALPHA, BETA = v / y, 1 / (8 * pi * y)


def _sym(f):
    out = 0
    for (nu, r, n, rv, _), c in f.terms.items():
        e = sp.exp(2 * pi * I * (sp.Rational(n) * (x + I * y) + rv[0] * (u + I * v)))
        out += sp.Rational(c.numerator, c.denominator) * ALPHA ** nu[0] * BETA ** r * e
    return out


def _sym_ops(k, m):
    m = sp.Rational(m.numerator, m.denominator)
    half = sp.Rational(1, 2)
    return {
        "R": lambda F: _dtau(F) + ALPHA * _dz(F) + half * m * ALPHA**2 * F - k * BETA * F,
        "RJ": lambda F: _dz(F) + m * ALPHA * F,
        "L": lambda F: _dtaub(F) / BETA**2 + ALPHA * _dzb(F) / BETA**2,
        "LJ": lambda F: _dzb(F) / BETA,
        "Delta": lambda F: _dtau(F) - half * _dz(_dz(F)) / m + (half - k) * BETA * F,
        "RtJ": lambda F: _dz(F) / m + ALPHA * F,
    }


def _ours(k):
    return {
        "R": lambda f: apply_R(k, f),
        "RJ": lambda f: apply_RJ(0, f),
        "L": apply_L,
        "LJ": lambda f: apply_LJ(0, f),
        "Delta": lambda f: apply_Delta(k, f),
        "RtJ": lambda f: apply_RtJ(0, f),
    }


@pytest.mark.parametrize("name", ["R", "RJ", "L", "LJ", "Delta", "RtJ"])
@pytest.mark.parametrize("nu,r,n,rv", [(0, 0, 1, 1), (2, 1, 2, -1), (1, 2, 0, 3)])
def test_operators_match_symbolic_oracle(name, nu, r, n, rv):
    k = 5
    f = NearlyHoloElt.monomial(k, M1, (nu,), r, n=n, rv=(rv,))
    expected = _sym_ops(k, M1[0][0])[name](_sym(f))
    got = _sym(_ours(k)[name](f))
    assert sp.simplify(sp.expand((expected - got) * y**6)) == 0


def test_raw_definitions_agree():
    m = HalfIntSymMatrix([[2, Fraction(1, 2)], [Fraction(1, 2), 1]])
    for f in generating_family(2, m, 6, 3):
        assert apply_L_from_definition(f) == apply_L(f)
        for j in range(2):
            assert apply_LJ_from_definition(j, f) == apply_LJ(j, f)


# -- finite differences of the numeric evaluation -----------------------------


def _fd(f, tau, z, which, eps=1e-5):
    """Renormalized Wirtinger derivative of the numeric value of ``f``."""
    def val(dt=0, dz=0):
        return evaluate(f, tau + dt, (z + dz,))

    if which in ("tau", "taubar"):
        dx = (val(eps) - val(-eps)) / (2 * eps)
        dy = (val(eps * 1j) - val(-eps * 1j)) / (2 * eps)
    else:
        dx = (val(dz=eps) - val(dz=-eps)) / (2 * eps)
        dy = (val(dz=eps * 1j) - val(dz=-eps * 1j)) / (2 * eps)
    sign = -1 if which in ("tau", "z") else 1
    return (dx + sign * 1j * dy) / 2 / (4j * math.pi)


@pytest.mark.parametrize("which,op", [("tau", d_tau), ("taubar", d_taubar), ("z", lambda f: d_z(f, 0)), ("zbar", lambda f: d_zbar(f, 0))])
def test_derivative_rules_by_finite_differences(which, op):
    f = NearlyHoloElt.monomial(4, M1, (2,), 1, n=1, rv=(1,), c=3) + NearlyHoloElt.monomial(4, M1, (0,), 2, n=0, rv=(-1,))
    tau, z = 0.3 + 0.8j, 0.2 + 0.35j
    got = evaluate(op(f), tau, (z,))
    ref = _fd(f, tau, z, which)
    assert abs(got - ref) < 1e-6 * max(1.0, abs(ref))


def test_beta_rules():
    b = NearlyHoloElt.monomial(2, M1, (0,), 1)
    assert d_tau(b) == NearlyHoloElt.monomial(2, M1, (0,), 2)
    assert d_taubar(b) == NearlyHoloElt.monomial(2, M1, (0,), 2, c=-1)
    assert d_z(b, 0).is_zero()


# -- commutators ---------------------------------------------------------------


@pytest.mark.parametrize("h", [1, 2])
def test_commutator_table_exact(h):
    m = random_index(h, 11 + h)
    fam = generating_family(h, m, 7, 4 if h == 1 else 3)
    for name, A, B, expected in commutator_table(h, m):
        assert commutator_check(A, B, expected, fam, name).passed, name


def test_printed_coefficient_fails():
    fam = generating_family(1, M1, 7, 3)
    rows = {name: (A, B, e) for name, A, B, e in commutator_table(1, M1, printed_delta=True)}
    name = next(n for n in rows if n.startswith("[L, Dt_k]"))
    rep = commutator_check(*rows[name], fam, name)
    assert not rep.passed
    assert rep.counterexample["input"].terms


def test_operator_expr_weights():
    W = OperatorExpr.word
    from jacobi_nh.maassops import Gen

    expr = W(Gen("L"), Gen("R", 7))
    assert expr.weight_shift() == 0
    assert expr.check_weights(7) == 7
    with pytest.raises(WeightMismatch):
        expr.check_weights(5)
    with pytest.raises(WeightMismatch):
        apply_R(5, NearlyHoloElt.constant(7, M1))


def test_singular_index_rejected():
    f = NearlyHoloElt.constant(4, HalfIntSymMatrix([[1, 1], [1, 1]]))
    with pytest.raises(SingularIndex):
        apply_Delta(4, f)


# -- ladder constants ----------------------------------------------------------

# c(nu, r; k) for h = 1, m = 3, k = 10, computed symbolically in the real
# variables (y, v) on the probe e(2 tau + z), without the alpha/beta rules
FROZEN_H1 = {
    ((1,), 0): 1,
    ((0,), 1): Fraction(15, 2),
    ((2,), 0): 2,
    ((1,), 1): Fraction(13, 2),
    ((0,), 2): Fraction(143, 2),
    ((3,), 0): 6,
    ((2,), 1): 11,
    ((4,), 0): 24,
    ((1,), 2): Fraction(99, 2),
    ((0,), 3): Fraction(2079, 4),
}


def test_ladder_constants_frozen():
    for (nu, r), c in FROZEN_H1.items():
        assert lr_constant_recursion(nu, r, 10, 1) == c
        assert lr_constant(nu, r, 10, 1, M1) == c


@given(st.integers(0, 10**6), st.integers(1, 2), st.integers(1, 3))
def test_ladder_probe_matches_recursion(seed, h, level):
    m = random_index(h, seed)
    k = level + h + 1
    for pair in enumerate_pairs(level, h):
        assert lr_constant_probe(pair.nu, pair.r, k, m) == lr_constant_recursion(pair.nu, pair.r, k, h) > 0


def test_ladder_kernel():
    m = HalfIntSymMatrix([[2]])
    g = NearlyHoloElt.monomial(2, m, (0,), 0, n=1, rv=(1,))
    assert apply_Lhat((2,), 0, apply_Rhat((0,), 1, g)).is_zero()


def test_ladder_hypothesis():
    with pytest.raises(HypothesisViolated) as exc:
        lr_constant((0,), 1, 2, 1, M1)
    assert exc.value.diagnostic[0][2] <= 0


@given(st.integers(0, 10**6))
def test_lowering_kills_holomorphic(seed):
    m = random_index(1, seed)
    f = random_nh(5, m, 0, seed)
    assert apply_L(f).is_zero() and apply_LJ(0, f).is_zero()
