"""Truncated Fourier data of a (possibly vector-valued) Jacobi form."""

from dataclasses import dataclass

from ..errors import ShapeMismatch
from ..exactcore import HalfIntSymMatrix
from ..nhfun import FourierPoly, NearlyHoloElt, check_support

__all__ = ["JacobiFormData"]


@dataclass
class JacobiFormData:
    """A holomorphic ``V_s``-valued Jacobi form known for ``n <= trunc``."""

    h: int
    k: int
    s: int
    m: HalfIntSymMatrix
    level: int
    trunc: int
    coeffs: FourierPoly

    def __post_init__(self):
        if not isinstance(self.m, HalfIntSymMatrix):
            self.m = HalfIntSymMatrix(self.m)
        if self.m.h != self.h or self.coeffs.h != self.h:
            raise ShapeMismatch("cogenus of index, data and header differ")
        if self.coeffs.s != self.s or self.coeffs.level != self.level:
            raise ShapeMismatch("Fourier data does not match (s, level)")

    def violations(self):
        return check_support(self.coeffs, self.m)

    def to_nh(self):
        return NearlyHoloElt.from_fourier(self.coeffs, self.k, self.m)

    @classmethod
    def from_nh(cls, f, trunc):
        return cls(f.h, f.k, f.s, f.m, f.level, trunc, f.to_fourier())
