r"""
Holomorphic projection of scalar nearly holomorphic functions.

For ``k - d > h/2`` and invertible ``m`` every ``f`` of depth at most ``d``
has a unique expansion

    f = sum_{|nu, r| <= d} Rhat_{nu,r}(g_{nu,r})

with holomorphic ``g_{nu,r}`` of weight ``k - |nu, r|``.  The components are
peeled off from the top degree down: at degree ``l`` and for ``q`` ascending
the lowering operator ``Lhat_{nu,q}`` picks out ``c_{nu,q} g_{nu,q}`` and the
corresponding raised term is subtracted.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .errors import DepthExceeded, HypothesisViolated, InternalInvariant, ShapeMismatch, SingularIndex
from .exactcore import MultiIndexPair, enumerate_pairs, n_pairs, pair_degree
from .maassops import apply_Lhat, apply_Rhat, lr_constant, lr_constant_recursion
from .nhfun import NearlyHoloElt, _accumulate, depth

__all__ = [
    "NHDecomposition",
    "nh_decompose",
    "nh_assemble",
    "holomorphic_part",
    "hypothesis_diagnostic",
    "raise_holomorphic",
    "component_count",
]


@dataclass
class NHDecomposition:
    """Holomorphic components ``g_{nu,r}`` (weight ``k - |nu, r|``) of a depth-``d`` function."""

    k: int
    m: object
    d: int
    components: dict = field(default_factory=dict)

    def component(self, nu, r):
        return self.components[MultiIndexPair(nu, r)]

    @property
    def holomorphic(self):
        return self.components[MultiIndexPair((0,) * self.m.h, 0)]

    def multiplicities(self):
        """Number of components at each degree ``0..d``."""
        counts = [0] * (self.d + 1)
        for pair in self.components:
            counts[pair.degree] += 1
        return counts

    def __eq__(self, other):
        if not isinstance(other, NHDecomposition):
            return NotImplemented
        return (self.k, self.m, self.d, self.components) == (other.k, other.m, other.d, other.components)


def hypothesis_diagnostic(k, d, h):
    """``(nu, r, c)`` for every pair of degree at most ``d`` whose ladder constant is not positive."""
    out = []
    for level in range(d + 1):
        for pair in enumerate_pairs(level, h):
            c = lr_constant_recursion(pair.nu, pair.r, k, h)
            if c <= 0:
                out.append((pair.nu, pair.r, c))
    return out


def _check_hypotheses(k, d, m):
    if 2 * (k - d) <= m.h:
        raise HypothesisViolated(
            f"k - d = {k - d} is not > h/2 = {Fraction(m.h, 2)}",
            diagnostic=hypothesis_diagnostic(k, d, m.h),
        )
    if not m.is_invertible():
        raise SingularIndex(f"index {m} is singular")


@lru_cache(maxsize=200_000)
def _rhat_unit(nu, r, k, m, level, n, rv):
    """``Rhat_{nu,r}`` of the unit mode ``e(n tau + rv' z)`` at weight ``k - |nu, r|``."""
    unit = NearlyHoloElt.monomial(k - pair_degree(nu, r), m, (0,) * m.h, 0, n=n, rv=rv, level=level)
    return tuple(apply_Rhat(nu, r, unit).terms.items())


def raise_holomorphic(nu, r, k, m, g):
    """``Rhat_{nu,r}(g)`` for a holomorphic FourierPoly ``g``; the result has weight ``k``."""
    if g.s:
        raise ShapeMismatch("raise_holomorphic expects a scalar Fourier polynomial")
    out = {}
    for (n, rv, _), c in g.coeffs.items():
        for key, v in _rhat_unit(tuple(nu), r, k, m, g.level, n, rv):
            _accumulate(out, key, c * v)
    return NearlyHoloElt._raw(k, m, out, 0, g.level)


def nh_decompose(f, d=None, check=True):
    r"""
    Components ``g_{nu,r}`` with ``f = sum Rhat_{nu,r}(g_{nu,r})``.

    ``d`` defaults to the depth of ``f``.  With ``check`` the result is
    reassembled and compared with ``f`` exactly.
    """
    if f.s:
        raise ShapeMismatch("nh_decompose expects a scalar function (s = 0)")
    actual = depth(f)
    d = max(0, actual) if d is None else d
    if actual > d:
        raise DepthExceeded(f"depth {actual} exceeds the bound {d}")
    k, m, h = f.k, f.m, f.h
    _check_hypotheses(k, d, m)

    components = {}
    residue = f
    for level in range(d, 0, -1):
        for pair in enumerate_pairs(level, h):
            lowered = apply_Lhat(pair.nu, pair.r, residue)
            if not lowered.is_holomorphic():
                raise InternalInvariant(f"Lhat{tuple(pair)} of the residue is not holomorphic")
            g = lowered.to_fourier().scale(1 / lr_constant(pair.nu, pair.r, k, h, m))
            if not g.is_zero():
                residue = residue - raise_holomorphic(pair.nu, pair.r, k, m, g)
            components[pair] = g
    if not residue.is_holomorphic():
        raise InternalInvariant("residue is not holomorphic after removing all raised components")
    components[MultiIndexPair((0,) * h, 0)] = residue.to_fourier()
    components = {pair: components[pair] for lv in range(d + 1) for pair in enumerate_pairs(lv, h)}

    dec = NHDecomposition(k, m, d, components)
    if check and nh_assemble(dec) != f:
        raise InternalInvariant("reassembly does not reproduce the input")
    return dec


def nh_assemble(dec):
    """``sum Rhat_{nu,r}(g_{nu,r})`` at weight ``dec.k``."""
    total = NearlyHoloElt.zero(dec.k, dec.m)
    for pair, g in dec.components.items():
        if pair.degree > dec.d:
            raise DepthExceeded(f"component {tuple(pair)} has degree above {dec.d}")
        if not g.is_zero():
            total = total + raise_holomorphic(pair.nu, pair.r, dec.k, dec.m, g)
    return total


def holomorphic_part(f, d=None, check=True):
    """The ``(0; 0)`` component of :func:`nh_decompose` as a FourierPoly."""
    if f.is_holomorphic():
        if d is not None:
            _check_hypotheses(f.k, d, f.m)
        return f.to_fourier()
    return nh_decompose(f, d, check=check).holomorphic


def component_count(d, h):
    return sum(n_pairs(level, h) for level in range(d + 1))
