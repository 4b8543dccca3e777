"""
Even lattices, short vector enumeration and Jacobi theta series.

The theta series of an even positive-definite lattice ``(Z^rank, G)`` with
vectors ``v_1, ..., v_h`` is

    sum_x e(1/2 x'Gx tau + (x'G v_j)_j' z),

a Jacobi form of weight ``rank/2`` and index ``m = 1/2 V'GV``.
"""

import math
from collections import Counter
from dataclasses import dataclass

import numpy as np

from ..errors import NotHalfIntegral, OddRank, ShapeMismatch, TruncationTooLarge
from ..exactcore import HalfIntSymMatrix, determinant, is_psd
from ..nhfun import FourierPoly
from .data import JacobiFormData

__all__ = ["LatticeSpec", "e8_gram", "e8_spec", "short_vectors", "count_estimate", "theta_series", "MAX_VECTORS"]

MAX_VECTORS = 5_000_000

# simple roots 1-3-4-5-6-7-8 in a chain, root 2 attached to 4
_E8_EDGES = [(0, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (1, 3)]


def e8_gram():
    """Cartan matrix of E8: an even unimodular Gram matrix."""
    g = [[2 if i == j else 0 for j in range(8)] for i in range(8)]
    for i, j in _E8_EDGES:
        g[i][j] = g[j][i] = -1
    return g


@dataclass(frozen=True)
class LatticeSpec:
    """An even lattice ``Z^rank`` with Gram matrix ``gram`` and ``h`` chosen vectors."""

    gram: tuple
    vectors: tuple

    def __post_init__(self):
        gram = tuple(tuple(int(a) for a in row) for row in self.gram)
        vectors = tuple(tuple(int(a) for a in v) for v in self.vectors)
        object.__setattr__(self, "gram", gram)
        object.__setattr__(self, "vectors", vectors)
        n = len(gram)
        if n % 2:
            raise OddRank(f"lattice rank {n} is odd")
        if any(len(row) != n for row in gram) or any(gram[i][j] != gram[j][i] for i in range(n) for j in range(n)):
            raise ShapeMismatch("Gram matrix must be square and symmetric")
        if any(gram[i][i] % 2 for i in range(n)):
            raise NotHalfIntegral("Gram matrix must have an even diagonal")
        if not is_psd(gram) or determinant(gram) == 0:
            raise ShapeMismatch("Gram matrix must be positive definite")
        if not vectors or any(len(v) != n for v in vectors):
            raise ShapeMismatch(f"need at least one vector of length {n}")

    @property
    def rank(self):
        return len(self.gram)

    @property
    def h(self):
        return len(self.vectors)

    @property
    def weight(self):
        return self.rank // 2

    def index(self):
        g = np.array(self.gram, dtype=object)
        v = np.array(self.vectors, dtype=object).T
        return HalfIntSymMatrix.from_two_m((v.T @ g @ v).tolist())


def e8_spec(roots=(0, 2)):
    """E8 with the given simple roots (0-based) as the vectors ``v_j``."""
    vecs = [[int(i == r) for i in range(8)] for r in roots]
    return LatticeSpec(e8_gram(), vecs)


def count_estimate(gram, bound):
    """Volume estimate of ``#{x : x'Gx <= bound}``."""
    n = len(gram)
    det = float(determinant(gram))
    return math.pi ** (n / 2) / math.gamma(n / 2 + 1) * bound ** (n / 2) / math.sqrt(det)


def short_vectors(gram, bound):
    """All ``x`` in ``Z^n`` with ``x'Gx <= bound``, as an int64 array (Fincke-Pohst, breadth first)."""
    g = np.array(gram, dtype=np.int64)
    n = len(g)
    chol = np.linalg.cholesky(g.astype(float)).T  # g = chol' chol, chol upper triangular
    diag = np.diag(chol) ** 2
    mu = chol / np.diag(chol)[:, None]
    eps = 1e-9 * max(1.0, bound)

    xs = np.zeros((1, 0), dtype=np.int64)  # assigned tail coordinates i+1..n-1
    rem = np.array([float(bound)])
    for i in range(n - 1, -1, -1):
        center = -(xs @ mu[i, i + 1:]) if xs.shape[1] else np.zeros(len(xs))
        radius = np.sqrt(np.maximum(rem, 0.0) / diag[i])
        lo = np.ceil(center - radius - eps).astype(np.int64)
        hi = np.floor(center + radius + eps).astype(np.int64)
        cnt = np.maximum(hi - lo + 1, 0)
        parent = np.repeat(np.arange(len(xs)), cnt)
        offsets = np.arange(cnt.sum()) - np.repeat(np.cumsum(cnt) - cnt, cnt)
        xi = lo[parent] + offsets
        rem = rem[parent] - diag[i] * (xi - center[parent]) ** 2
        xs = np.column_stack([xi, xs[parent]])
    norms = np.einsum("ij,jk,ik->i", xs, g, xs)
    return xs[norms <= bound]


def theta_series(spec, bound):
    """Fourier data of the theta series for all modes with ``n <= bound``."""
    bound = int(bound)
    if count_estimate(spec.gram, 2 * bound) > MAX_VECTORS:
        raise TruncationTooLarge(f"about {count_estimate(spec.gram, 2 * bound):.3g} vectors for bound {bound}")
    xs = short_vectors(spec.gram, 2 * bound)
    g = np.array(spec.gram, dtype=np.int64)
    v = np.array(spec.vectors, dtype=np.int64).T
    ns = np.einsum("ij,jk,ik->i", xs, g, xs) // 2
    rs = xs @ g @ v
    counts = Counter(zip(ns.tolist(), map(tuple, rs.tolist())))
    coeffs = FourierPoly(spec.h, {(n, r): c for (n, r), c in counts.items()})
    return JacobiFormData(spec.h, spec.weight, 0, spec.index(), 1, bound, coeffs)
