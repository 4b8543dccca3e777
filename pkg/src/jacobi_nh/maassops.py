r"""
Raising and lowering operators on nearly holomorphic functions.

All derivatives are the renormalized ones, ``d_tau = (1/4 pi i) d/d tau`` etc.
On the building blocks they act by

    d_tau alpha_j = alpha_j beta      d_z,j alpha_j = -beta
    d_tau beta    = beta^2            d_z,j beta    = 0
    d_taubar      = -(d_tau on alpha, beta), 0 on modes
    d_zbar,j      = -(d_z,j on alpha), 0 on modes
    d_tau e(n tau + r'z) = (n/2) e(...),  d_z,j e(...) = (r_j/2) e(...)

so every operator maps the span of a single Fourier mode into itself.  The
composite operators are then

    R_k   = d_tau + alpha' d_z + 1/2 alpha' m alpha - k beta
    R^J   = d_z + m alpha
    L     = beta^-2 (d_taubar + alpha' d_zbar)      (acts as -r on beta^r)
    L^J   = beta^-1 d_zbar                           (acts as nu_j on alpha^nu)
    Dt_k  = d_tau - 1/2 d_z' m^-1 d_z + (h/2 - k) beta
    Rt^J  = m^-1 R^J

Weight labels are carried by the elements: an operator given an explicit
weight raises :class:`WeightMismatch` when it disagrees with its input, and
``k=None`` means "use the input's weight".
"""

from collections import namedtuple
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import HypothesisViolated, InternalInvariant, SingularIndex, WeightMismatch
from .exactcore import as_fraction, enumerate_pairs, pair_degree
from .nhfun import NearlyHoloElt, _accumulate

__all__ = [
    "d_tau",
    "d_taubar",
    "d_z",
    "d_zbar",
    "apply_partial",
    "mul_alpha",
    "mul_beta",
    "apply_R",
    "apply_RJ",
    "apply_L",
    "apply_LJ",
    "apply_Delta",
    "apply_RtJ",
    "apply_L_from_definition",
    "apply_LJ_from_definition",
    "Gen",
    "OperatorExpr",
    "compose_Rhat",
    "compose_Lhat",
    "apply_Rhat",
    "apply_Lhat",
    "lr_constant",
    "lr_constant_recursion",
    "lr_constant_probe",
    "CommutatorReport",
    "commutator_check",
    "commutator_table",
    "generating_family",
]

HALF = Fraction(1, 2)


def _unit(nu, j, delta):
    return nu[:j] + (nu[j] + delta,) + nu[j + 1:]


def _check_weight(f, k):
    if k is not None and f.k != k:
        raise WeightMismatch(f"operator expects weight {k}, element has weight {f.k}")
    return f.k


# -- first-order building blocks ---------------------------------------------


def d_tau(f):
    out = {}
    for (nu, r, n, rv, mono), c in f.terms.items():
        _accumulate(out, (nu, r, n, rv, mono), c * n * HALF)
        _accumulate(out, (nu, r + 1, n, rv, mono), c * (sum(nu) + r))
    return f._like(out)


def d_taubar(f):
    out = {}
    for (nu, r, n, rv, mono), c in f.terms.items():
        _accumulate(out, (nu, r + 1, n, rv, mono), -c * (sum(nu) + r))
    return f._like(out)


def d_z(f, j):
    out = {}
    for (nu, r, n, rv, mono), c in f.terms.items():
        _accumulate(out, (nu, r, n, rv, mono), c * rv[j] * HALF)
        if nu[j]:
            _accumulate(out, (_unit(nu, j, -1), r + 1, n, rv, mono), -c * nu[j])
    return f._like(out)


def d_zbar(f, j):
    out = {}
    for (nu, r, n, rv, mono), c in f.terms.items():
        if nu[j]:
            _accumulate(out, (_unit(nu, j, -1), r + 1, n, rv, mono), c * nu[j])
    return f._like(out)


def apply_partial(g, f):
    """Apply one of ``"tau"``, ``"taubar"``, ``("z", j)``, ``("zbar", j)``."""
    if g == "tau":
        return d_tau(f)
    if g == "taubar":
        return d_taubar(f)
    name, j = g
    return {"z": d_z, "zbar": d_zbar}[name](f, j)


def mul_alpha(f, j):
    return f._like({(_unit(nu, j, 1), r, n, rv, mono): c for (nu, r, n, rv, mono), c in f.terms.items()})


def mul_beta(f):
    return f._like({(nu, r + 1, n, rv, mono): c for (nu, r, n, rv, mono), c in f.terms.items()})


# -- covariant operators -----------------------------------------------------


def apply_R(k, f):
    """``R_k``: weight k -> k + 2."""
    k = _check_weight(f, k)
    h, m = f.h, f.m
    out = {}
    for (nu, r, n, rv, mono), c in f.terms.items():
        # d_tau + alpha' d_z: the beta-raising parts combine to r * beta
        _accumulate(out, (nu, r, n, rv, mono), c * n * HALF)
        _accumulate(out, (nu, r + 1, n, rv, mono), c * (r - k))
        for j in range(h):
            if rv[j]:
                _accumulate(out, (_unit(nu, j, 1), r, n, rv, mono), c * rv[j] * HALF)
            for i in range(h):
                if m[i][j]:
                    _accumulate(out, (_unit(_unit(nu, i, 1), j, 1), r, n, rv, mono), c * m[i][j] * HALF)
    return f._like(out, k=k + 2)


def apply_RJ(j, f):
    """``R^J_j = d_z,j + (m alpha)_j``: weight k -> k + 1."""
    g = d_z(f, j)
    for i in range(f.h):
        if f.m[j][i]:
            g = g + mul_alpha(f, i).scale(f.m[j][i])
    return g.relabel(k=f.k + 1)


def apply_L(f):
    """``L``: ``alpha^nu beta^r g -> -r alpha^nu beta^(r-1) g``; weight k -> k - 2."""
    out = {}
    for (nu, r, n, rv, mono), c in f.terms.items():
        if r:
            _accumulate(out, (nu, r - 1, n, rv, mono), -r * c)
    return f._like(out, k=f.k - 2)


def apply_LJ(j, f):
    """``L^J_j``: ``alpha^nu beta^r g -> nu_j alpha^(nu - e_j) beta^r g``; weight k -> k - 1."""
    out = {}
    for (nu, r, n, rv, mono), c in f.terms.items():
        if nu[j]:
            _accumulate(out, (_unit(nu, j, -1), r, n, rv, mono), nu[j] * c)
    return f._like(out, k=f.k - 1)


def _minv(f):
    if not f.m.is_invertible():
        raise SingularIndex(f"index {f.m} is singular")
    return f.m.inverse()


def apply_Delta(k, f):
    """Heat-type operator ``Dt_k``: weight k -> k + 2 (needs invertible m)."""
    k = _check_weight(f, k)
    minv = _minv(f)
    h = f.h
    g = d_tau(f) + mul_beta(f).scale(Fraction(h, 2) - k)
    for j in range(h):
        dj = d_z(f, j)
        for i in range(h):
            if minv[i][j]:
                g = g - d_z(dj, i).scale(minv[i][j] * HALF)
    return g.relabel(k=k + 2)


def apply_RtJ(j, f):
    """``Rt^J_j = sum_i (m^-1)_ji d_z,i + alpha_j``: weight k -> k + 1."""
    minv = _minv(f)
    g = mul_alpha(f, j)
    for i in range(f.h):
        if minv[j][i]:
            g = g + d_z(f, i).scale(minv[j][i])
    return g.relabel(k=f.k + 1)


def _shift_beta(f, by, k):
    out = {}
    for (nu, r, n, rv, mono), c in f.terms.items():
        if r + by < 0:
            raise InternalInvariant("negative power of beta survived in a lowering operator")
        out[(nu, r + by, n, rv, mono)] = c
    return f._like(out, k=k)


def apply_L_from_definition(f):
    """``L = yhat (yhat d_taubar + vhat' d_zbar)`` with ``yhat = 1/beta``, ``vhat_j = alpha_j / beta``."""
    g = d_taubar(f)
    for j in range(f.h):
        g = g + mul_alpha(d_zbar(f, j), j)
    return _shift_beta(g, -2, f.k - 2)


def apply_LJ_from_definition(j, f):
    """``L^J_j = yhat d_zbar,j``."""
    return _shift_beta(d_zbar(f, j), -1, f.k - 1)


# -- operator words ----------------------------------------------------------

Gen = namedtuple("Gen", ["name", "arg"], defaults=[None])

_WEIGHT_SHIFT = {
    "R": 2, "Delta": 2, "RJ": 1, "RtJ": 1, "L": -2, "LJ": -1,
    "dTau": 0, "dTauBar": 0, "dZ": 0, "dZBar": 0,
    "MulAlpha": 0, "MulBeta": 0, "MulScalar": 0, "MulWeight": 0,
}


def _apply_gen(g, f):
    name, arg = g
    if name == "R":
        return apply_R(arg, f)
    if name == "Delta":
        return apply_Delta(arg, f)
    if name == "RJ":
        return apply_RJ(arg, f)
    if name == "RtJ":
        return apply_RtJ(arg, f)
    if name == "L":
        return apply_L(f)
    if name == "LJ":
        return apply_LJ(arg, f)
    if name == "dTau":
        return d_tau(f)
    if name == "dTauBar":
        return d_taubar(f)
    if name == "dZ":
        return d_z(f, arg)
    if name == "dZBar":
        return d_zbar(f, arg)
    if name == "MulAlpha":
        return mul_alpha(f, arg)
    if name == "MulBeta":
        return mul_beta(f)
    if name == "MulScalar":
        return f.scale(arg)
    if name == "MulWeight":
        return f.scale(f.k)
    raise ValueError(f"unknown generator {name!r}")


class OperatorExpr:
    r"""
    A linear combination of words in the generators.

    A word ``(A, B, C)`` denotes the composition ``A o B o C``: ``C`` is
    applied first.  Generators carrying a weight (``R``, ``Delta``) check it
    against the running weight; with ``arg=None`` they adopt it, which is
    how the commutator conventions ``[L, R_k] = L o R_k - R_{k-2} o L`` are
    realized.
    """

    __slots__ = ("terms", "m")

    def __init__(self, terms=(), m=None):
        self.terms = tuple((as_fraction(c), tuple(Gen(*g) for g in word)) for c, word in terms if c != 0)
        self.m = m

    @classmethod
    def word(cls, *gens, m=None):
        return cls([(1, gens)], m=m)

    @classmethod
    def identity(cls, m=None):
        return cls([(1, ())], m=m)

    @classmethod
    def scalar(cls, c, m=None):
        return cls([(c, ())], m=m)

    def __matmul__(self, other):
        return OperatorExpr([(c1 * c2, w1 + w2) for c1, w1 in self.terms for c2, w2 in other.terms], m=self.m or other.m)

    def __add__(self, other):
        if not isinstance(other, OperatorExpr):
            other = OperatorExpr.scalar(other)
        return OperatorExpr(self.terms + other.terms, m=self.m or other.m)

    __radd__ = __add__

    def __neg__(self):
        return OperatorExpr([(-c, w) for c, w in self.terms], m=self.m)

    def __sub__(self, other):
        if not isinstance(other, OperatorExpr):
            other = OperatorExpr.scalar(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, c):
        return OperatorExpr([(c * a, w) for a, w in self.terms], m=self.m)

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, OperatorExpr) and self.terms == other.terms

    def __repr__(self):
        def fmt(word):
            return " o ".join(g.name + ("" if g.arg is None else f"({g.arg})") for g in word) or "id"

        return " + ".join(f"{c}*[{fmt(w)}]" for c, w in self.terms) or "0"

    def weight_shift(self):
        shifts = {sum(_WEIGHT_SHIFT[g.name] for g in w) for _, w in self.terms}
        if len(shifts) > 1:
            raise WeightMismatch(f"inhomogeneous operator: weight shifts {sorted(shifts)}")
        return shifts.pop() if shifts else 0

    def check_weights(self, k_in):
        """Thread weights through every word starting at ``k_in``; raise on drift."""
        for _, word in self.terms:
            k = k_in
            for g in reversed(word):
                if g.name in ("R", "Delta") and g.arg is not None and g.arg != k:
                    raise WeightMismatch(f"{g.name}({g.arg}) applied at weight {k}")
                k += _WEIGHT_SHIFT[g.name]
        return k_in + self.weight_shift()

    def __call__(self, f):
        if self.m is not None and self.m != f.m:
            raise WeightMismatch("operator and element have different Jacobi indices")
        total = None
        for c, word in self.terms:
            g = f
            for gen in reversed(word):
                g = _apply_gen(gen, g)
            g = g.scale(c)
            total = g if total is None else total + g
        if total is None:
            return NearlyHoloElt.zero(f.k + self.weight_shift(), f.m, f.s, f.level)
        return total


def _require_invertible(m):
    if not m.is_invertible():
        raise SingularIndex(f"index {m} is singular")


def compose_Rhat(nu, r, k, m=None):
    r"""
    ``Rhat_{nu,r} = (Rt^J_1)^nu_1 o ... o (Rt^J_h)^nu_h o Dt_{k-d+2(r-1)} o ... o Dt_{k-d}``
    with ``d = |nu, r|``; maps weight ``k - d`` to ``k``.
    """
    if m is not None:
        _require_invertible(m)
    d = pair_degree(nu, r)
    word = []
    for j, e in enumerate(nu):
        word.extend([Gen("RtJ", j)] * e)
    word.extend(Gen("Delta", k - d + 2 * q) for q in range(r - 1, -1, -1))
    return OperatorExpr.word(*word, m=m)


def compose_Lhat(nu, r, m=None):
    """``Lhat_{nu,r} = L^r o (L^J_h)^nu_h o ... o (L^J_1)^nu_1``; maps weight k to ``k - |nu, r|``."""
    word = [Gen("L")] * r
    for j in range(len(nu) - 1, -1, -1):
        word.extend([Gen("LJ", j)] * nu[j])
    return OperatorExpr.word(*word, m=m)


def apply_Rhat(nu, r, g):
    """Apply ``Rhat_{nu,r}`` to ``g`` of weight ``k - |nu, r|`` (result weight k)."""
    _require_invertible(g.m)
    k0 = g.k
    for q in range(r):
        g = apply_Delta(k0 + 2 * q, g)
    for j in range(len(nu) - 1, -1, -1):
        for _ in range(nu[j]):
            g = apply_RtJ(j, g)
    return g


def apply_Lhat(nu, r, f):
    for j, e in enumerate(nu):
        for _ in range(e):
            f = apply_LJ(j, f)
    for _ in range(r):
        f = apply_L(f)
    return f


# -- the ladder constant -----------------------------------------------------


def lr_constant_recursion(nu, r, k, h):
    r"""
    Ladder constant from the induction: ``nu! * prod_p S(r - p, k - |nu| - 2p)``
    with ``S(t, w) = sum_{q=1}^t (w - 2q - h/2)``.
    """
    c = Fraction(1)
    for e in nu:
        for i in range(2, e + 1):
            c *= i
    w = k - sum(nu)
    for p in range(r):
        t = r - p
        c *= sum((Fraction(w - 2 * p - 2 * q) - Fraction(h, 2) for q in range(1, t + 1)), Fraction(0))
    return c


def _probes(h, m, k, level=1):
    yield NearlyHoloElt.constant(k, m, level=level)
    rv = tuple(1 if j == 0 else j - 1 for j in range(h))
    yield NearlyHoloElt.monomial(k, m, (0,) * h, 0, n=3, rv=rv, level=level)


def lr_constant_probe(nu, r, k, m):
    """Scalar ``c`` with ``Lhat o Rhat = c`` on two probes (None if they disagree)."""
    d = pair_degree(nu, r)
    vals = []
    for probe in _probes(m.h, m, k - d):
        out = apply_Lhat(nu, r, apply_Rhat(nu, r, probe))
        if out.k != probe.k or set(out.terms) != set(probe.terms):
            return None
        ratios = {out.terms[key] / probe.terms[key] for key in probe.terms}
        if len(ratios) != 1:
            return None
        vals.append(ratios.pop())
    return vals[0] if len(set(vals)) == 1 else None


def lr_constant(nu, r, k, h, m):
    r"""
    Constant ``c > 0`` with ``Lhat_{nu,r} o Rhat_{nu,r} = c`` on ``H_{k - |nu,r|, m}``.

    Computed on two holomorphic probes and checked against the closed
    recursion; a disagreement raises :class:`InternalInvariant`.
    """
    d = pair_degree(nu, r)
    if 2 * (k - d) <= h:
        c = lr_constant_recursion(nu, r, k, h)
        raise HypothesisViolated(
            f"k - |nu, r| = {k - d} is not > h/2 = {Fraction(h, 2)}",
            diagnostic=[(tuple(nu), r, c)] if c <= 0 else [],
        )
    _require_invertible(m)
    return _lr_constant_cached(tuple(nu), r, k, m)


_LR_CACHE = {}


def _lr_constant_cached(nu, r, k, m):
    key = (nu, r, k, m)
    if key not in _LR_CACHE:
        probe = lr_constant_probe(nu, r, k, m)
        rec = lr_constant_recursion(nu, r, k, m.h)
        if probe is None or probe != rec:
            raise InternalInvariant(f"ladder constant for {(nu, r, k)}: probe {probe} != recursion {rec}")
        _LR_CACHE[key] = probe
    return _LR_CACHE[key]


# -- commutators -------------------------------------------------------------


@dataclass
class CommutatorReport:
    name: str
    passed: bool
    checked: int
    counterexample: dict = field(default=None)

    def __str__(self):
        status = "PASS" if self.passed else "FAIL"
        return f"{status} {self.name} ({self.checked} inputs)"


def commutator_check(A, B, expected, testset, name="[A, B]"):
    """Compare ``A o B - B o A`` with ``expected`` on every element of ``testset``."""
    if not isinstance(expected, OperatorExpr):
        expected = OperatorExpr.scalar(expected)
    n = 0
    for f in testset:
        lhs = A(B(f)) - B(A(f))
        rhs = expected(f)
        n += 1
        if lhs.terms != rhs.terms or (rhs.terms and lhs.k != rhs.k):
            return CommutatorReport(name, False, n, {"input": f, "lhs": lhs, "rhs": rhs})
    return CommutatorReport(name, True, n)


def commutator_table(h, m=None, printed_delta=False):
    r"""
    The commutation relations between raising and lowering operators, as
    ``(name, A, B, expected)``.  ``printed_delta`` swaps in the variant of the
    ``[L, Dt_k]`` relation with coefficient 1/2 on ``R^J' m^-1 L^J``.
    """
    W = OperatorExpr.word
    L, R, D = W(Gen("L")), W(Gen("R")), W(Gen("Delta"))
    LJ = [W(Gen("LJ", j)) for j in range(h)]
    RJ = [W(Gen("RJ", j)) for j in range(h)]
    RtJ = [W(Gen("RtJ", j)) for j in range(h)]
    weight = W(Gen("MulWeight"))
    rows = [("[L, R_k] = k", L, R, weight)]
    rows += [(f"[L, R^J_{j+1}] = L^J_{j+1}", L, RJ[j], LJ[j]) for j in range(h)]
    rows += [(f"[L^J_{j+1}, R_k] = R^J_{j+1}", LJ[j], R, RJ[j]) for j in range(h)]
    if m is not None:
        rows += [
            (f"[L^J_{i+1}, R^J_{j+1}] = m_{i+1}{j+1}", LJ[i], RJ[j], OperatorExpr.scalar(m[i][j]))
            for i in range(h) for j in range(h)
        ]
    rows += [(f"[L^J_{i+1}, L^J_{j+1}] = 0", LJ[i], LJ[j], 0) for i in range(h) for j in range(h)]
    rows += [(f"[R^J_{i+1}, R^J_{j+1}] = 0", RJ[i], RJ[j], 0) for i in range(h) for j in range(h)]
    if m is not None:
        minv = m.inverse()
        coeff = HALF if printed_delta else Fraction(1)
        corr = OperatorExpr()
        for i in range(h):
            for j in range(h):
                corr = corr + (RJ[i] @ LJ[j]) * (minv[i][j] * coeff)
        label = "1/2 R^J' m^-1 L^J" if printed_delta else "R^J' m^-1 L^J"
        rows.append((f"[L, Dt_k] = k - h/2 - {label}", L, D, weight - Fraction(h, 2) - corr))
        rows += [(f"[R^J_{i+1}, Rt^J_{j+1}] = 0", RJ[i], RtJ[j], 0) for i in range(h) for j in range(h)]
        rows += [
            (f"[L^J_{i+1}, Rt^J_{j+1}] = {int(i == j)}", LJ[i], RtJ[j], int(i == j))
            for i in range(h) for j in range(h)
        ]
    return rows


def default_modes(h):
    base = [(0, (0,) * h), (1, (1,) + (0,) * (h - 1)), (2, tuple((-1, 1, 2)[j % 3] for j in range(h)))]
    base.append((5, tuple((3, -2, 1)[j % 3] for j in range(h))))
    return base


def generating_family(h, m, k, max_degree=4, modes=None):
    """``alpha^nu beta^r e(n tau + r'z)`` for ``|nu, r| <= max_degree`` over a few unit modes."""
    modes = default_modes(h) if modes is None else modes
    out = []
    for level in range(max_degree + 1):
        for nu, r in enumerate_pairs(level, h):
            for n, rv in modes:
                out.append(NearlyHoloElt.monomial(k, m, nu, r, n=n, rv=rv))
    return out
