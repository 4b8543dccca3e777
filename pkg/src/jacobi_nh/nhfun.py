r"""
Fourier polynomials and nearly holomorphic functions.

A nearly holomorphic function is stored as a flat sparse map

    (nu, r, n, rvec, mono)  ->  Fraction

meaning ``coeff * alpha^nu * beta^r * e(n tau + rvec' z) * X^a Y^nu'`` with
``mono = (a, nu'_1, ..., nu'_h)`` a monomial of ``V_s``.  For scalar
functions ``s = 0`` and ``mono`` is the zero tuple.  Every operator in
:mod:`jacobi_nh.maassops` acts mode by mode on this representation, so no
truncation ever happens inside the symbolic layer.
"""

import math
from fractions import Fraction

from .errors import DegreeMismatch, ShapeMismatch
from .exactcore import HalfIntSymMatrix, as_fraction, psd_support_check
from .symrep import SymPoly, monomials, quotient_monomials

__all__ = [
    "WeightLabel",
    "FourierPoly",
    "NearlyHoloElt",
    "check_support",
    "total_degree",
    "depth",
    "depth_projection_condition",
    "NEG_INF",
]

NEG_INF = -math.inf


class WeightLabel(tuple):
    """``(k, s)``: the weight det^k (x) sym^s."""

    __slots__ = ()

    def __new__(cls, k, s=0):
        if s < 0:
            raise ValueError("s must be non-negative")
        return super().__new__(cls, (int(k), int(s)))

    k = property(lambda self: self[0])
    s = property(lambda self: self[1])


def _mode(n, rv, level):
    n = as_fraction(n)
    if (n * level).denominator != 1:
        raise ShapeMismatch(f"mode n = {n} is not in (1/{level})Z")
    return n, tuple(int(x) for x in rv)


def _accumulate(out, key, val):
    if val:
        new = out.get(key, 0) + val
        if new:
            out[key] = new
        else:
            out.pop(key, None)


class FourierPoly:
    r"""
    A finite Fourier polynomial ``sum c(n, r) e(n tau + r'z)`` with ``V_s``-valued
    coefficients.  ``coeffs`` maps ``(n, rvec, mono)`` to a Fraction.
    """

    __slots__ = ("h", "s", "level", "coeffs")

    def __init__(self, h, coeffs=None, s=0, level=1):
        self.h = h
        self.s = s
        self.level = level
        clean = {}
        for key, c in (coeffs or {}).items():
            if len(key) == 2:
                n, rv = key
                mono = (0,) * (h + 1)
            else:
                n, rv, mono = key
            n, rv = _mode(n, rv, level)
            mono = tuple(mono)
            if len(rv) != h or len(mono) != h + 1 or sum(mono) != s:
                raise ShapeMismatch(f"bad Fourier key {key} for h={h}, s={s}")
            _accumulate(clean, (n, rv, mono), as_fraction(c))
        self.coeffs = clean

    @classmethod
    def _raw(cls, h, coeffs, s, level):
        obj = cls.__new__(cls)
        obj.h, obj.s, obj.level, obj.coeffs = h, s, level, coeffs
        return obj

    @classmethod
    def constant(cls, h, c=1, level=1):
        return cls(h, {(0, (0,) * h): c}, level=level)

    @classmethod
    def from_sympoly_coeffs(cls, h, s, modes, level=1):
        """Build from ``{(n, rvec): SymPoly}``."""
        out = {}
        for (n, rv), poly in modes.items():
            for mono, c in poly.coeffs.items():
                out[(n, rv, mono)] = c
        return cls(h, out, s=s, level=level)

    def modes(self):
        return sorted({(n, rv) for n, rv, _ in self.coeffs})

    def coefficient(self, n, rv):
        n, rv = as_fraction(n), tuple(rv)
        return SymPoly(self.s, self.h, {mono: c for (nn, rr, mono), c in self.coeffs.items() if nn == n and rr == rv})

    def scalar_coefficient(self, n, rv):
        if self.s:
            raise ShapeMismatch("scalar_coefficient on a vector-valued Fourier polynomial")
        return self.coeffs.get((as_fraction(n), tuple(rv), (0,) * (self.h + 1)), Fraction(0))

    def is_zero(self):
        return not self.coeffs

    def _check(self, other):
        if (self.h, self.s, self.level) != (other.h, other.s, other.level):
            raise ShapeMismatch("Fourier polynomials have different (h, s, level)")

    def __add__(self, other):
        self._check(other)
        out = dict(self.coeffs)
        for key, c in other.coeffs.items():
            _accumulate(out, key, c)
        return FourierPoly._raw(self.h, out, self.s, self.level)

    def __neg__(self):
        return FourierPoly._raw(self.h, {k: -c for k, c in self.coeffs.items()}, self.s, self.level)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        c = as_fraction(c)
        if c == 0:
            return FourierPoly._raw(self.h, {}, self.s, self.level)
        return FourierPoly._raw(self.h, {k: v * c for k, v in self.coeffs.items()}, self.s, self.level)

    def __eq__(self, other):
        if not isinstance(other, FourierPoly):
            return NotImplemented
        return (self.h, self.s, self.level, self.coeffs) == (other.h, other.s, other.level, other.coeffs)

    def __repr__(self):
        return f"FourierPoly(h={self.h}, s={self.s}, level={self.level}, terms={len(self.coeffs)})"

    def truncate(self, bound):
        return FourierPoly._raw(
            self.h, {k: c for k, c in self.coeffs.items() if k[0] <= bound}, self.s, self.level
        )


def check_support(f, m):
    """Modes with a nonzero coefficient whose ``[[n, r'/2], [r/2, m]]`` is not PSD."""
    return [(n, rv) for n, rv in f.modes() if not psd_support_check(n, rv, m)]


class NearlyHoloElt:
    r"""
    Element of ``H_{(k,s),m}[alpha, beta]``.

    ``terms`` maps ``(nu, r, n, rvec, mono)`` to a nonzero Fraction.  The
    weight label ``(k, s)`` and the index ``m`` travel with the element and
    are checked by every operator.
    """

    __slots__ = ("k", "s", "m", "h", "level", "terms")

    def __init__(self, k, m, terms=None, s=0, level=1):
        if not isinstance(m, HalfIntSymMatrix):
            m = HalfIntSymMatrix(m)
        self.k = int(k)
        self.s = int(s)
        self.m = m
        self.h = m.h
        self.level = level
        clean = {}
        for key, c in (terms or {}).items():
            nu, r, n, rv, mono = key
            nu = tuple(int(x) for x in nu)
            n, rv = _mode(n, rv, level)
            mono = tuple(mono)
            if len(nu) != self.h or len(rv) != self.h or len(mono) != self.h + 1 or sum(mono) != self.s:
                raise ShapeMismatch(f"bad term key {key}")
            if r < 0 or min(nu) < 0:
                raise DegreeMismatch("negative alpha/beta exponent")
            _accumulate(clean, (nu, int(r), n, rv, mono), as_fraction(c))
        self.terms = clean

    # -- construction -----------------------------------------------------

    @classmethod
    def _raw(cls, k, m, terms, s, level):
        obj = cls.__new__(cls)
        obj.k, obj.s, obj.m, obj.h, obj.level, obj.terms = k, s, m, m.h, level, terms
        return obj

    def _like(self, terms, k=None, s=None):
        return NearlyHoloElt._raw(self.k if k is None else k, self.m, terms, self.s if s is None else s, self.level)

    @classmethod
    def zero(cls, k, m, s=0, level=1):
        m = m if isinstance(m, HalfIntSymMatrix) else HalfIntSymMatrix(m)
        return cls._raw(int(k), m, {}, int(s), level)

    @classmethod
    def from_fourier(cls, f, k, m, nu=None, r=0):
        """``alpha^nu beta^r * f`` for a FourierPoly ``f``."""
        m = m if isinstance(m, HalfIntSymMatrix) else HalfIntSymMatrix(m)
        if f.h != m.h:
            raise ShapeMismatch("cogenus of Fourier polynomial and index differ")
        nu = (0,) * m.h if nu is None else tuple(nu)
        terms = {(nu, r, n, rv, mono): c for (n, rv, mono), c in f.coeffs.items()}
        return cls._raw(int(k), m, terms, f.s, f.level)

    @classmethod
    def constant(cls, k, m, c=1, level=1):
        m = m if isinstance(m, HalfIntSymMatrix) else HalfIntSymMatrix(m)
        return cls.from_fourier(FourierPoly.constant(m.h, c, level), k, m)

    @classmethod
    def monomial(cls, k, m, nu, r, n=0, rv=None, c=1, mono=None, level=1):
        m = m if isinstance(m, HalfIntSymMatrix) else HalfIntSymMatrix(m)
        rv = (0,) * m.h if rv is None else rv
        mono = (0,) * (m.h + 1) if mono is None else tuple(mono)
        return cls(k, m, {(tuple(nu), r, n, rv, mono): c}, s=sum(mono), level=level)

    @classmethod
    def from_vs_components(cls, comps, k, s, m):
        """Assemble a ``V_s``-valued element from ``{mono: scalar NearlyHoloElt}``."""
        m = m if isinstance(m, HalfIntSymMatrix) else HalfIntSymMatrix(m)
        level = 1
        out = {}
        for mono, f in comps.items():
            mono = tuple(mono)
            if f.s != 0 or sum(mono) != s:
                raise ShapeMismatch("components must be scalar and monomials of degree s")
            level = f.level
            for (nu, r, n, rv, _), c in f.terms.items():
                _accumulate(out, (nu, r, n, rv, mono), c)
        return cls._raw(int(k), m, out, int(s), level)

    # -- structure --------------------------------------------------------

    def relabel(self, k=None, s=None):
        return self._like(self.terms, k=k, s=s)

    def modes(self):
        return sorted({(n, rv) for _, _, n, rv, _ in self.terms})

    def pairs(self):
        return sorted({(nu, r) for nu, r, _, _, _ in self.terms})

    def component(self, nu, r):
        """The holomorphic coefficient ``f_{nu, r}`` as a FourierPoly."""
        nu = tuple(nu)
        return FourierPoly._raw(
            self.h,
            {(n, rv, mono): c for (nn, rr, n, rv, mono), c in self.terms.items() if nn == nu and rr == r},
            self.s,
            self.level,
        )

    def vs_component(self, mono):
        """Scalar coefficient of the ``V_s`` monomial ``mono`` (weight label kept)."""
        mono = tuple(mono)
        zero = (0,) * (self.h + 1)
        return NearlyHoloElt._raw(
            self.k,
            self.m,
            {(nu, r, n, rv, zero): c for (nu, r, n, rv, mm), c in self.terms.items() if mm == mono},
            0,
            self.level,
        )

    def vs_components(self):
        return {mono: self.vs_component(mono) for mono in monomials(self.s, self.h)}

    def is_zero(self):
        return not self.terms

    def is_holomorphic(self):
        return all(r == 0 and not any(nu) for nu, r, _, _, _ in self.terms)

    def to_fourier(self):
        if not self.is_holomorphic():
            raise DegreeMismatch("element is not holomorphic")
        return FourierPoly._raw(
            self.h, {(n, rv, mono): c for (_, _, n, rv, mono), c in self.terms.items()}, self.s, self.level
        )

    # -- arithmetic -------------------------------------------------------

    def _check(self, other):
        if not isinstance(other, NearlyHoloElt):
            raise ShapeMismatch(f"cannot combine NearlyHoloElt with {type(other).__name__}")
        if (self.k, self.s, self.level) != (other.k, other.s, other.level) or self.m != other.m:
            raise ShapeMismatch(
                f"incompatible elements: (k, s, level, m) = {(self.k, self.s, self.level, self.m)} "
                f"vs {(other.k, other.s, other.level, other.m)}"
            )

    def __add__(self, other):
        if isinstance(other, int) and other == 0:
            return self
        self._check(other)
        out = dict(self.terms)
        for key, c in other.terms.items():
            _accumulate(out, key, c)
        return self._like(out)

    __radd__ = __add__

    def __neg__(self):
        return self._like({key: -c for key, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        c = as_fraction(c)
        if c == 0:
            return self._like({})
        return self._like({key: v * c for key, v in self.terms.items()})

    def __mul__(self, c):
        if isinstance(c, NearlyHoloElt):
            return self.multiply(c)
        return self.scale(c)

    __rmul__ = __mul__

    def multiply(self, other):
        """Pointwise product of a scalar element with ``other`` (modes and weights add)."""
        if self.s != 0 or self.m != other.m:
            raise ShapeMismatch("multiply needs a scalar left factor and equal indices")
        out = {}
        for (nu1, r1, n1, rv1, _), c1 in self.terms.items():
            for (nu2, r2, n2, rv2, mono), c2 in other.terms.items():
                key = (
                    tuple(a + b for a, b in zip(nu1, nu2)),
                    r1 + r2,
                    n1 + n2,
                    tuple(a + b for a, b in zip(rv1, rv2)),
                    mono,
                )
                _accumulate(out, key, c1 * c2)
        return NearlyHoloElt._raw(self.k + other.k, self.m, out, other.s, self.level)

    def mul_monomial(self, nu, r):
        """Multiply by ``alpha^nu beta^r``."""
        nu = tuple(nu)
        if len(nu) != self.h:
            raise ShapeMismatch("nu must have length h")
        return self._like(
            {(tuple(a + b for a, b in zip(k0, nu)), r0 + r, n, rv, mono): c for (k0, r0, n, rv, mono), c in self.terms.items()}
        )

    def mul_vs_monomial(self, mono, s=None):
        """Multiply the ``V_s`` value by the monomial ``mono`` (degree goes up)."""
        mono = tuple(mono)
        return self._like(
            {(nu, r, n, rv, tuple(a + b for a, b in zip(mm, mono))): c for (nu, r, n, rv, mm), c in self.terms.items()},
            s=self.s + sum(mono) if s is None else s,
        )

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return not self.terms
        if not isinstance(other, NearlyHoloElt):
            return NotImplemented
        return (self.k, self.s, self.level, self.m, self.terms) == (other.k, other.s, other.level, other.m, other.terms)

    def __hash__(self):
        return hash((self.k, self.s, self.level, self.m, frozenset(self.terms.items())))

    def __repr__(self):
        return f"NearlyHoloElt(k={self.k}, s={self.s}, h={self.h}, terms={len(self.terms)})"

    def pretty(self):
        parts = []
        for (nu, r, n, rv, mono), c in sorted(self.terms.items(), key=lambda kv: repr(kv[0])):
            a = "".join(f"a{j + 1}^{e}" for j, e in enumerate(nu) if e)
            b = f"b^{r}" if r else ""
            x = "".join((("X" if i == 0 else f"Y{i}") + f"^{e}") for i, e in enumerate(mono) if e)
            parts.append(f"{c}*{a}{b}e({n},{list(rv)}){x}")
        return " + ".join(parts) or "0"

    # -- degrees ----------------------------------------------------------

    def total_degree(self):
        return total_degree(self)

    def degree_alpha(self, j):
        if not self.terms:
            return NEG_INF
        return max(nu[j] for nu, _, _, _, _ in self.terms)

    def degree_beta(self):
        if not self.terms:
            return NEG_INF
        return max(r for _, r, _, _, _ in self.terms)

    def depth(self):
        return depth(self)


def total_degree(f):
    """``max |nu, r|`` over nonzero terms; ``-inf`` for zero."""
    if not f.terms:
        return NEG_INF
    return max(sum(nu) + 2 * r for nu, r, _, _, _ in f.terms)


def depth(f):
    r"""
    Least ``d >= 0`` with: the coefficient of every ``X^j Y^nu`` has degree
    at most ``d + j``; ``-inf`` for zero.

    For ``t >= 1`` this agrees with requiring ``deg(p^t_s o f) < d + t``
    (see :func:`depth_projection_condition`), and for scalar functions it is
    ``max(0, deg f)``.
    """
    if not f.terms:
        return NEG_INF
    return max(0, max(sum(nu) + 2 * r - mono[0] for nu, r, _, _, mono in f.terms))


def depth_projection_condition(f, d):
    """True iff ``deg(p^t_s o f) < d + t`` for every ``1 <= t <= s``."""
    for t in range(1, f.s + 1):
        kept = set(quotient_monomials(f.s, f.h, t))
        degs = [sum(nu) + 2 * r for nu, r, _, _, mono in f.terms if mono in kept]
        if degs and max(degs) >= d + t:
            return False
    return True
