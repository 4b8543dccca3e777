r"""
Floating-point evaluation and slash-covariance checks.

For ``g = (M, lambda, mu, kappa)`` in the Jacobi group and a ``V_s``-valued
``phi`` of weight ``(k, s)`` and index ``m``

    (phi | g)(tau, z) = eta(g, (tau, z))^-1 phi(g<tau, z>),
    eta = (c tau + d)^k sym^s([[c tau + d, c z' - lt'], [0, 1]]) iota_m,

with ``(lt, mt) = (lambda, mu) M^-1``.  Evaluation is double precision;
everything upstream stays exact.
"""

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from ..errors import ShapeMismatch
from ..maassops import apply_Delta
from ..nhfun import NearlyHoloElt
from ..symrep import SymPoly, aff_act, monomials
from .data import JacobiFormData

__all__ = [
    "GroupElement",
    "evaluate",
    "tail_bound",
    "iota",
    "iota_second_form",
    "eta",
    "slash",
    "SlashReport",
    "slash_check",
    "delta_covariance_check",
    "standard_generators",
    "DEFAULT_POINTS",
    "default_points",
]

DEFAULT_POINTS = ((2j, (0.11 + 0.07j, -0.05 + 0.13j)), (1 + 2j, (-0.09 + 0.04j, 0.12 - 0.06j)))
_Z_PATTERN = ((0.11 + 0.07j, -0.05 + 0.13j, 0.04 - 0.08j), (-0.09 + 0.04j, 0.12 - 0.06j, 0.07 + 0.02j))


def default_points(h):
    """Test points ``tau in {2i, 1 + 2i}`` with small ``z`` in ``C^h``."""
    return tuple((tau, tuple(zs[j % 3] * (1 + 0.1 * (j // 3)) for j in range(h))) for tau, zs in zip((2j, 1 + 2j), _Z_PATTERN))


def _e(x):
    return cmath.exp(2j * math.pi * x)


@dataclass(frozen=True)
class GroupElement:
    """``(M, lambda, mu, kappa)`` with ``det M = 1`` and ``kappa - lt mt'`` symmetric."""

    a: object
    b: object
    c: object
    d: object
    lam: tuple
    mu: tuple
    kappa: tuple

    def __post_init__(self):
        for name in ("a", "b", "c", "d"):
            object.__setattr__(self, name, Fraction(getattr(self, name)))
        object.__setattr__(self, "lam", tuple(Fraction(x) for x in self.lam))
        object.__setattr__(self, "mu", tuple(Fraction(x) for x in self.mu))
        object.__setattr__(self, "kappa", tuple(tuple(Fraction(x) for x in row) for row in self.kappa))
        h = len(self.lam)
        if len(self.mu) != h or len(self.kappa) != h or any(len(row) != h for row in self.kappa):
            raise ShapeMismatch("lambda, mu, kappa have inconsistent sizes")
        if self.a * self.d - self.b * self.c != 1:
            raise ShapeMismatch("modular part must have determinant 1")
        lt, mt = self.lam_tilde, self.mu_tilde
        sym = [[self.kappa[i][j] - lt[i] * mt[j] for j in range(h)] for i in range(h)]
        if any(sym[i][j] != sym[j][i] for i in range(h) for j in range(h)):
            raise ShapeMismatch("kappa - lt mt' is not symmetric")

    @property
    def h(self):
        return len(self.lam)

    @property
    def lam_tilde(self):
        return tuple(self.d * l - self.c * u for l, u in zip(self.lam, self.mu))

    @property
    def mu_tilde(self):
        return tuple(-self.b * l + self.a * u for l, u in zip(self.lam, self.mu))

    def is_integral(self):
        vals = [self.a, self.b, self.c, self.d, *self.lam, *self.mu, *(x for row in self.kappa for x in row)]
        return all(v.denominator == 1 for v in vals)

    @classmethod
    def modular(cls, a, b, c, d, h):
        z = (0,) * h
        return cls(a, b, c, d, z, z, tuple(z for _ in range(h)))

    @classmethod
    def translation(cls, lam, mu, kappa=None):
        """``(1, lambda, mu, kappa)``; ``kappa`` defaults to ``lambda mu'``."""
        if kappa is None:
            kappa = tuple(tuple(Fraction(l) * Fraction(u) for u in mu) for l in lam)
        return cls(1, 0, 0, 1, tuple(lam), tuple(mu), kappa)

    def matrix(self):
        """The ``(2 + 2h)``-square matrix with blocks ordered ``(1, h, 1, h)``."""
        h = self.h
        n = 2 + 2 * h
        mat = [[Fraction(0)] * n for _ in range(n)]
        mat[0][0], mat[0][h + 1], mat[h + 1][0], mat[h + 1][h + 1] = self.a, self.b, self.c, self.d
        lt, mt = self.lam_tilde, self.mu_tilde
        for i in range(h):
            mat[0][h + 2 + i] = mt[i]
            mat[1 + i][0] = self.lam[i]
            mat[1 + i][1 + i] = Fraction(1)
            mat[1 + i][h + 1] = self.mu[i]
            mat[h + 1][h + 2 + i] = -lt[i]
            mat[h + 2 + i][h + 2 + i] = Fraction(1)
            for j in range(h):
                mat[1 + i][h + 2 + j] = self.kappa[i][j]
        return mat

    @classmethod
    def from_matrix(cls, mat, h):
        lam = [mat[1 + i][0] for i in range(h)]
        mu = [mat[1 + i][h + 1] for i in range(h)]
        kappa = [[mat[1 + i][h + 2 + j] for j in range(h)] for i in range(h)]
        return cls(mat[0][0], mat[0][h + 1], mat[h + 1][0], mat[h + 1][h + 1], lam, mu, kappa)

    def __matmul__(self, other):
        a, b = self.matrix(), other.matrix()
        n = len(a)
        prod = [[sum((a[i][t] * b[t][j] for t in range(n)), Fraction(0)) for j in range(n)] for i in range(n)]
        return GroupElement.from_matrix(prod, self.h)

    def act(self, tau, z):
        a, b, c, d = (float(x) for x in (self.a, self.b, self.c, self.d))
        den = c * tau + d
        return (a * tau + b) / den, tuple((zj + float(l) * tau + float(u)) / den for zj, l, u in zip(z, self.lam, self.mu))


def standard_generators(h):
    """``T``, ``S``, unit lattice translations, and ``kappa`` shifts by ``E_ij + E_ji``."""
    out = {"T": GroupElement.modular(1, 1, 0, 1, h), "S": GroupElement.modular(0, -1, 1, 0, h)}
    zero = (0,) * h
    for j in range(h):
        unit = tuple(int(i == j) for i in range(h))
        out[f"lambda_{j + 1}"] = GroupElement.translation(unit, zero)
        out[f"mu_{j + 1}"] = GroupElement.translation(zero, unit)
        out[f"lambda_mu_{j + 1}"] = GroupElement.translation(unit, unit)
    for i in range(h):
        for j in range(i, h):
            kap = tuple(tuple(int((p, q) in ((i, j), (j, i))) for q in range(h)) for p in range(h))
            out[f"kappa_{i + 1}{j + 1}"] = GroupElement.translation(zero, zero, kap)
    return out


def _quad(m, x, y):
    return sum(x[i] * float(m[i][j]) * y[j] for i in range(len(x)) for j in range(len(y)))


def iota(g, tau, z, m):
    """Scalar part ``iota_m(g, (tau, z))`` of the factor of automorphy."""
    lam = [float(x) for x in g.lam]
    mu = [float(x) for x in g.mu]
    c, d = float(g.c), float(g.d)
    w = [zj + lj * tau + uj for zj, lj, uj in zip(z, lam, mu)]
    two_z = [2 * zj + lj * tau + uj for zj, lj, uj in zip(z, lam, mu)]
    tr_mk = sum(float(m[i][j]) * float(g.kappa[j][i]) for i in range(len(z)) for j in range(len(z)))
    return _e(c * _quad(m, w, w) / (c * tau + d) - _quad(m, lam, two_z)) * _e(-tr_mk)


def iota_second_form(g, tau, z, m):
    """The same factor written with ``(c z - lt)' m (lambda tau + z + mu) / (c tau + d) - lambda' m z``."""
    lam = [float(x) for x in g.lam]
    mu = [float(x) for x in g.mu]
    lt = [float(x) for x in g.lam_tilde]
    c, d = float(g.c), float(g.d)
    left = [c * zj - l for zj, l in zip(z, lt)]
    right = [l * tau + zj + u for zj, l, u in zip(z, lam, mu)]
    tr_mk = sum(float(m[i][j]) * float(g.kappa[j][i]) for i in range(len(z)) for j in range(len(z)))
    return _e(_quad(m, left, right) / (c * tau + d) - _quad(m, lam, z)) * _e(-tr_mk)


def eta(g, tau, z, k, s, m, poly):
    """Apply ``eta_{(k,s),m}(g, (tau, z))`` to a complex ``V_s`` vector ``poly``."""
    r = float(g.c) * tau + float(g.d)
    v = [float(g.c) * zj - float(l) for zj, l in zip(z, g.lam_tilde)]
    return aff_act(r, v, poly).scale(r ** k * iota(g, tau, z, m))


class _Compiled:
    """Array form of a NearlyHoloElt for repeated evaluation."""

    def __init__(self, f):
        self.h, self.s = f.h, f.s
        self.monos = monomials(f.s, f.h)
        pos = {mono: i for i, mono in enumerate(self.monos)}
        modes = {}
        rows = []
        for (nu, r, n, rv, mono), c in f.terms.items():
            idx = modes.setdefault((n, rv), len(modes))
            rows.append((idx, float(c), nu, r, pos[mono]))
        mode_list = sorted(modes, key=modes.get)
        self.n = np.array([float(n) for n, _ in mode_list])
        self.r = np.array([rv for _, rv in mode_list], dtype=float).reshape(len(mode_list), f.h)
        self.idx = np.array([row[0] for row in rows], dtype=np.int64)
        self.c = np.array([row[1] for row in rows])
        self.nu = np.array([row[2] for row in rows], dtype=float).reshape(len(rows), f.h)
        self.beta = np.array([row[3] for row in rows], dtype=float)
        self.mono = np.array([row[4] for row in rows], dtype=np.int64)

    def __call__(self, tau, z):
        z = np.asarray(z, dtype=complex)
        if tau.imag <= 0:
            raise ValueError("Im tau must be positive")
        y = tau.imag
        expo = np.exp(2j * np.pi * (self.n * tau + self.r @ z)) if len(self.n) else np.zeros(0, complex)
        alpha = z.imag / y
        beta = 1.0 / (8 * np.pi * y)
        weight = np.prod(alpha[None, :] ** self.nu, axis=1) * beta ** self.beta if len(self.c) else np.zeros(0)
        vals = np.zeros(len(self.monos), dtype=complex)
        np.add.at(vals, self.mono, self.c * weight * expo[self.idx])
        return vals

    def tail(self, tau, z):
        if not len(self.n):
            return 0.0
        z = np.asarray(z, dtype=complex)
        top = self.n == self.n.max()
        size = np.abs(np.exp(2j * np.pi * (self.n[top] * tau + self.r[top] @ z)))
        coeff = np.zeros(len(self.n))
        np.add.at(coeff, self.idx, np.abs(self.c))
        return float(np.sum(coeff[top] * size) * math.exp(-2 * math.pi * tau.imag))


def _as_nh(phi):
    if isinstance(phi, NearlyHoloElt):
        return phi
    if isinstance(phi, JacobiFormData):
        return phi.to_nh()
    raise TypeError(f"cannot evaluate {type(phi).__name__}")


def _compiled(phi):
    if isinstance(phi, _Compiled):
        return phi
    return _Compiled(_as_nh(phi))


def _to_value(comp, vals):
    if comp.s == 0:
        return complex(vals[0])
    return SymPoly(comp.s, comp.h, {mono: complex(v) for mono, v in zip(comp.monos, vals)})


def evaluate(phi, tau, z, with_tail=False):
    """
    Value of ``phi`` at ``(tau, z)``: a complex number for ``s = 0``, a complex
    SymPoly otherwise.  Nearly holomorphic inputs use ``alpha = Im z / Im tau``
    and ``beta = 1 / (8 pi Im tau)``.  With ``with_tail`` also returns the
    truncation estimate ``C exp(-2 pi Im tau)`` where ``C`` sums the moduli of
    the top retained Fourier level.
    """
    tau = complex(tau)
    comp = _compiled(phi)
    if len(z) != comp.h:
        raise ShapeMismatch(f"z must have {comp.h} entries")
    value = _to_value(comp, comp(tau, z))
    return (value, comp.tail(tau, z)) if with_tail else value


def tail_bound(phi, tau, z):
    return _compiled(phi).tail(complex(tau), z)


def slash(phi, g, tau, z, k=None, s=None, m=None):
    """``(phi |_{(k,s),m} g)(tau, z)`` numerically."""
    f = _as_nh(phi) if not isinstance(phi, _Compiled) else None
    k = f.k if k is None else k
    s = f.s if s is None else s
    m = f.m if m is None else m
    tau = complex(tau)
    z = tuple(complex(x) for x in z)
    tau2, z2 = g.act(tau, z)
    val = evaluate(phi, tau2, z2)
    poly = val if s else SymPoly(0, len(z), {(0,) * (len(z) + 1): val})
    r = float(g.c) * tau + float(g.d)
    v = [float(g.c) * zj - float(l) for zj, l in zip(z, g.lam_tilde)]
    out = aff_act(1 / r, [-x / r for x in v], poly).scale(r ** (-k) / iota(g, tau, z, m))
    return out if s else out.get((0,) * (len(z) + 1), 0j)


def _norm(val):
    if isinstance(val, SymPoly):
        return max((abs(c) for c in val.coeffs.values()), default=0.0)
    return abs(val)


def _diff(a, b):
    if isinstance(a, SymPoly):
        return _norm(a - b)
    return abs(a - b)


@dataclass
class SlashReport:
    name: str
    tol: float
    residuals: list = field(default_factory=list)
    tails: list = field(default_factory=list)

    @property
    def max_residual(self):
        return max(self.residuals, default=0.0)

    @property
    def passed(self):
        return self.max_residual < self.tol

    def __str__(self):
        status = "PASS" if self.passed else "FAIL"
        return f"{status} {self.name}: max residual {self.max_residual:.3e} (tol {self.tol:g}, tail {max(self.tails, default=0):.1e})"


def slash_check(phi, g, points=None, tol=1e-6, name="slash"):
    """Relative residual ``|phi|g - phi| / |phi|`` at each point (default: :func:`default_points`)."""
    f = _as_nh(phi)
    points = default_points(f.h) if points is None else points
    comp = _Compiled(f)
    report = SlashReport(name, tol)
    for tau, z in points:
        tau2, z2 = g.act(complex(tau), tuple(complex(x) for x in z))
        lhs = slash(comp, g, tau, z, f.k, f.s, f.m)
        rhs = evaluate(comp, tau, z)
        report.residuals.append(_diff(lhs, rhs) / max(_norm(rhs), 1e-300))
        report.tails.append(max(comp.tail(complex(tau), z), comp.tail(tau2, z2)) / max(_norm(rhs), 1e-300))
    return report


def delta_covariance_check(phi, g, points=None, tol=1e-5, name="Delta covariance"):
    r"""
    ``|(Dt_k phi)|_{k+2} g - Dt_k(phi |_k g)|`` relative to ``|Dt_k phi|``.

    ``Dt_k phi`` is computed exactly and evaluated as a nearly holomorphic
    function.  For ``g`` with ``phi |_k g = phi`` (checked separately by
    :func:`slash_check`) the second term is ``Dt_k phi`` itself.
    """
    f = _as_nh(phi)
    return slash_check(apply_Delta(f.k, f), g, points, tol, name=name)
