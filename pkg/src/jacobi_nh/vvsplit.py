r"""
Splitting ``V_s``-valued holomorphic functions into scalar ones.

The short exact sequence ``0 -> V_{s-1} -> V_s -> C^mu(s,h) -> 0`` (first map:
multiplication by ``X``; second: the pure-``Y`` coefficients) is split
covariantly in three steps:

* :func:`sigma_tilde` is the nearly holomorphic section
  ``f_nu -> f_nu * prod_j (Y_j - alpha_j X)^nu_j``;
* :func:`upper_retract` is the complementary retract ``(g - sigma_tilde(p g)) / X``;
* :func:`nh_retract` pulls a nearly holomorphic ``V_s``-valued function back
  to a holomorphic one, using the scalar projection on every level.

Combining them gives the holomorphic section :func:`holo_section` and the
retract :func:`holo_retract`; iterating over ``s`` yields
:func:`vv_decompose` and its inverse :func:`vv_assemble`.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import comb

from .errors import (
    DegreeMismatch,
    DepthExceeded,
    HypothesisViolated,
    InternalInvariant,
    ShapeMismatch,
    SingularIndex,
)
from .exactcore import HalfIntSymMatrix, multiplicity_mu
from .nhfun import FourierPoly, NearlyHoloElt, _accumulate, depth
from .scalarproj import holomorphic_part
from .symrep import quotient_monomials

__all__ = [
    "ComponentTuple",
    "project_components",
    "sigma_tilde",
    "upper_retract",
    "mul_X",
    "nh_retract",
    "holo_section",
    "holo_retract",
    "vv_decompose",
    "vv_assemble",
]


@dataclass
class ComponentTuple:
    """``parts[l]`` holds ``mu(s - l, h)`` scalar FourierPolys of weight ``k + l``."""

    k: int
    s: int
    m: HalfIntSymMatrix
    parts: list = field(default_factory=list)

    def __post_init__(self):
        if len(self.parts) != self.s + 1:
            raise ShapeMismatch(f"expected {self.s + 1} levels, got {len(self.parts)}")
        for level, part in enumerate(self.parts):
            if len(part) != multiplicity_mu(self.s - level, self.m.h):
                raise ShapeMismatch(f"level {level} needs {multiplicity_mu(self.s - level, self.m.h)} parts")

    def counts(self):
        return [len(part) for part in self.parts]

    def weights(self):
        return [self.k + level for level in range(self.s + 1)]

    def __eq__(self, other):
        if not isinstance(other, ComponentTuple):
            return NotImplemented
        return (self.k, self.s, self.m, self.parts) == (other.k, other.s, other.m, other.parts)


def _scalar(f, k, m):
    if isinstance(f, FourierPoly):
        if f.s:
            raise ShapeMismatch("expected a scalar Fourier polynomial")
        return NearlyHoloElt.from_fourier(f, k, m)
    if f.s or f.k != k or f.m != m:
        raise ShapeMismatch(f"component has (k, s) = {(f.k, f.s)}, expected ({k}, 0)")
    return f


def _require_weight(k, d, h):
    if 2 * (k - d) <= h:
        raise HypothesisViolated(f"k - d = {k - d} is not > h/2 = {Fraction(h, 2)}")


def _require_invertible(m):
    if not m.is_invertible():
        raise SingularIndex(f"index {m} is singular")


def project_components(g):
    """``(p^1)_* g``: the coefficients of the pure ``Y`` monomials, as scalar elements of weight ``g.k``."""
    return [g.vs_component(mono) for mono in quotient_monomials(g.s, g.h, 1)]


def sigma_tilde(components, k, s, m):
    r"""``sum_nu f_nu * prod_j (Y_j - alpha_j X)^nu_j``, a ``V_s``-valued element of weight ``(k, s)``."""
    m = m if isinstance(m, HalfIntSymMatrix) else HalfIntSymMatrix(m)
    basis = quotient_monomials(s, m.h, 1)
    if len(components) != len(basis):
        raise ShapeMismatch(f"sigma_tilde needs {len(basis)} components, got {len(components)}")
    out = {}
    level = 1
    for mono, f in zip(basis, components):
        f = _scalar(f, k, m)
        level = f.level
        nu = mono[1:]
        expansion = []
        for t in product(*(range(e + 1) for e in nu)):
            c = (-1) ** sum(t)
            for e, tj in zip(nu, t):
                c *= comb(e, tj)
            expansion.append((t, (sum(t),) + tuple(e - tj for e, tj in zip(nu, t)), c))
        for (a, r, n, rv, _), v in f.terms.items():
            for t, target, c in expansion:
                _accumulate(out, (tuple(x + y for x, y in zip(a, t)), r, n, rv, target), v * c)
    return NearlyHoloElt._raw(k, m, out, s, level)


def upper_retract(g):
    """``(g - sigma_tilde(p^1 g)) / X``, of weight ``(k + 1, s - 1)``."""
    if g.s < 1:
        raise DegreeMismatch("upper_retract needs s >= 1")
    diff = g - sigma_tilde(project_components(g), g.k, g.s, g.m)
    out = {}
    for (nu, r, n, rv, mono), c in diff.terms.items():
        if mono[0] < 1:
            raise InternalInvariant(f"monomial {mono} survives the projection but is not divisible by X")
        out[(nu, r, n, rv, (mono[0] - 1,) + mono[1:])] = c
    return NearlyHoloElt._raw(g.k + 1, g.m, out, g.s - 1, g.level)


def mul_X(f):
    """``(i^1)_*``: multiply by ``X``, taking weight ``(k + 1, s - 1)`` to ``(k, s)``."""
    return f.mul_vs_monomial((1,) + (0,) * f.h).relabel(k=f.k - 1)


def nh_retract(g, d=None):
    r"""
    Covariant retract of ``N^d_{(k,s),m}`` onto holomorphic functions.

    ``s = 0`` is the scalar holomorphic projection; for ``s >= 1`` the
    ``X``-divisible part is retracted one level up (depth ``d + 1``, weight
    ``k + 1``) and the pure-``Y`` part goes through :func:`holo_section`.
    """
    actual = depth(g)
    d = max(0, actual) if d is None else d
    if actual > d:
        raise DepthExceeded(f"depth {actual} exceeds the bound {d}")
    _require_weight(g.k, d, g.h)
    if g.s == 0:
        return NearlyHoloElt.from_fourier(holomorphic_part(g, d), g.k, g.m)
    upper = mul_X(nh_retract(upper_retract(g), d + 1))
    chi = [holomorphic_part(c, d) for c in project_components(g)]
    return upper + holo_section(chi, g.k, g.s, g.m)


def _section_D(chi, k, s, m):
    comps = {mono: _scalar(c, k, m) for mono, c in zip(quotient_monomials(s, m.h, 1), chi)}
    return NearlyHoloElt.from_vs_components(comps, k, s, m)


def holo_section(chi, k, s, m):
    r"""
    Holomorphic covariant section of ``(p^1)_*``: ``D chi - X * holo_retract(D chi)``
    with ``D chi = sum chi_nu Y^nu``.
    """
    m = m if isinstance(m, HalfIntSymMatrix) else HalfIntSymMatrix(m)
    if len(chi) != multiplicity_mu(s, m.h):
        raise ShapeMismatch(f"holo_section needs {multiplicity_mu(s, m.h)} components, got {len(chi)}")
    _require_weight(k, 0, m.h)
    lifted = _section_D(chi, k, s, m)
    if s == 0:
        return lifted
    return lifted - mul_X(holo_retract(lifted))


def holo_retract(phi):
    """Retract of ``(i^1)_*`` on holomorphic functions: ``(k, s) -> (k + 1, s - 1)``."""
    if not phi.is_holomorphic():
        raise DegreeMismatch("holo_retract expects a holomorphic function")
    _require_weight(phi.k, 0, phi.h)
    return nh_retract(upper_retract(phi), 1)


def vv_decompose(phi):
    """Scalar parts of a holomorphic ``V_s``-valued ``phi`` at weights ``k, k+1, ..., k+s``."""
    if not phi.is_holomorphic():
        raise DegreeMismatch("vv_decompose expects a holomorphic function")
    _require_invertible(phi.m)
    _require_weight(phi.k, 0, phi.h)
    parts = []
    cur = phi
    for _ in range(phi.s):
        parts.append([c.to_fourier() for c in project_components(cur)])
        cur = holo_retract(cur)
    parts.append([cur.to_fourier()])
    return ComponentTuple(phi.k, phi.s, phi.m, parts)


def vv_assemble(t):
    """Inverse of :func:`vv_decompose`: ``phi_j = X phi_{j+1} + holo_section(parts[j])``."""
    _require_invertible(t.m)
    _require_weight(t.k, 0, t.m.h)
    cur = _scalar(t.parts[t.s][0], t.k + t.s, t.m)
    for j in range(t.s - 1, -1, -1):
        cur = mul_X(cur) + holo_section(t.parts[j], t.k + j, t.s - j, t.m)
    return cur
