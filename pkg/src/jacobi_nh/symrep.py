r"""
The representation ``V_s`` of homogeneous degree-s polynomials in
``X, Y_1, ..., Y_h``.

A monomial ``X^a Y^nu`` is the tuple ``(a, nu_1, ..., nu_h)``.  Coefficients
live in any ring supporting ``+``, ``-`` and multiplication by
:class:`~fractions.Fraction` (rationals, complex numbers, nearly holomorphic
elements, ...).  The canonical order on monomials is lexicographic with
``X > Y_1 > ... > Y_h``, largest first.
"""

from math import comb

from .errors import DegreeMismatch, ShapeMismatch, ZeroScale
from .exactcore import compositions, multiplicity_mu

__all__ = [
    "SymPoly",
    "monomials",
    "quotient_monomials",
    "aff_act",
    "include_i",
    "project_p",
    "section_sigma",
    "sym_matrix",
]


def monomials(s, h):
    """All degree-s monomials ``(a, nu)`` in canonical order."""
    return [(a,) + nu for a in range(s, -1, -1) for nu in compositions(s - a, h)]


def quotient_monomials(s, h, t=1):
    """Coset representatives of ``V_s / im(i^t)``: monomials with X-exponent < t."""
    return [mono for mono in monomials(s, h) if mono[0] < t]


def _is_zero(c):
    return c == 0


class SymPoly:
    """Element of ``V_s``: a sparse map monomial -> coefficient."""

    __slots__ = ("s", "h", "coeffs")

    def __init__(self, s, h, coeffs=None):
        self.s = s
        self.h = h
        clean = {}
        for mono, c in (coeffs or {}).items():
            mono = tuple(mono)
            if len(mono) != h + 1 or sum(mono) != s or min(mono) < 0:
                raise DegreeMismatch(f"monomial {mono} is not of degree {s} in {h} + 1 variables")
            if not _is_zero(c):
                clean[mono] = c
        self.coeffs = clean

    @classmethod
    def monomial(cls, mono, coeff=1, h=None):
        mono = tuple(mono)
        return cls(sum(mono), len(mono) - 1 if h is None else h, {mono: coeff})

    @classmethod
    def X_power(cls, s, h, coeff=1):
        return cls(s, h, {(s,) + (0,) * h: coeff})

    def __eq__(self, other):
        if not isinstance(other, SymPoly):
            return NotImplemented
        return (self.s, self.h) == (other.s, other.h) and self.coeffs == other.coeffs

    def __repr__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for mono in monomials(self.s, self.h):
            if mono in self.coeffs:
                var = "".join(
                    (("X" if i == 0 else f"Y{i}") + (f"^{e}" if e > 1 else ""))
                    for i, e in enumerate(mono) if e
                )
                parts.append(f"({self.coeffs[mono]})*{var}" if var else f"({self.coeffs[mono]})")
        return " + ".join(parts)

    def _check(self, other):
        if (self.s, self.h) != (other.s, other.h):
            raise ShapeMismatch("degree or cogenus mismatch")

    def __add__(self, other):
        self._check(other)
        out = dict(self.coeffs)
        for mono, c in other.coeffs.items():
            out[mono] = out[mono] + c if mono in out else c
        return SymPoly(self.s, self.h, out)

    def __neg__(self):
        return SymPoly(self.s, self.h, {mono: -c for mono, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        return SymPoly(self.s, self.h, {mono: v * c for mono, v in self.coeffs.items()})

    def map_coeffs(self, fn):
        return SymPoly(self.s, self.h, {mono: fn(c) for mono, c in self.coeffs.items()})

    def get(self, mono, default=0):
        return self.coeffs.get(tuple(mono), default)

    def is_zero(self):
        return not self.coeffs


def _shift_power(e, v):
    """Expand ``(v X + Y)^e`` into {(x_exp, y_exp): coefficient}."""
    return {(t, e - t): comb(e, t) * v ** t for t in range(e + 1)}


def aff_act(r, v, f):
    r"""
    Action of ``[[r, v'], [0, 1]]``: ``f(rX, v_1 X + Y_1, ..., v_h X + Y_h)``.

    ``r`` and ``v`` may be rationals or complex numbers; the result has the
    same degree as ``f``.
    """
    if r == 0:
        raise ZeroScale("affine scale r must be non-zero")
    h = f.h
    if len(v) != h:
        raise ShapeMismatch("translation vector must have length h")
    out = {}
    for mono, c in f.coeffs.items():
        # running expansion: {(x_exp, y_1, ..., y_j): scalar}
        partial = {(mono[0],): r ** mono[0]}
        for j in range(h):
            nxt = {}
            for key, val in partial.items():
                for (t, rest), b in _shift_power(mono[j + 1], v[j]).items():
                    nk = (key[0] + t,) + key[1:] + (rest,)
                    nxt[nk] = nxt.get(nk, 0) + val * b
            partial = nxt
        for key, val in partial.items():
            if val == 0:
                continue
            term = c * val
            out[key] = out[key] + term if key in out else term
    return SymPoly(f.s, h, out)


def include_i(t, f, s=None):
    """``i^t_s``: multiply by ``X^t``; the result has degree ``f.s + t``."""
    if s is not None and f.s != s - t:
        raise DegreeMismatch(f"include_i({t}) expects degree {s - t}, got {f.s}")
    if t < 0:
        raise DegreeMismatch("t must be non-negative")
    return SymPoly(f.s + t, f.h, {(mono[0] + t,) + mono[1:]: c for mono, c in f.coeffs.items()})


def project_p(t, f, zero=0):
    """Coordinates of ``p^t_s(f)`` on the representatives of ``quotient_monomials(s, h, t)``."""
    return [f.coeffs.get(mono, zero) for mono in quotient_monomials(f.s, f.h, t)]


def section_sigma(q, s, h):
    """``sum_nu q_nu Y^nu``; ``q`` is ordered like ``quotient_monomials(s, h)``."""
    basis = quotient_monomials(s, h, 1)
    if len(q) != multiplicity_mu(s, h):
        raise ShapeMismatch(f"quotient vector must have length {len(basis)}")
    return SymPoly(s, h, dict(zip(basis, q)))


def sym_matrix(r, v, s, h):
    """Matrix of ``aff_act(r, v, .)`` on ``monomials(s, h)`` (columns = images of basis)."""
    basis = monomials(s, h)
    pos = {mono: i for i, mono in enumerate(basis)}
    mat = [[0] * len(basis) for _ in basis]
    for j, mono in enumerate(basis):
        img = aff_act(r, v, SymPoly(s, h, {mono: 1}))
        for m2, c in img.coeffs.items():
            mat[pos[m2]][j] = c
    return mat
