r"""
Exact rational linear algebra and index bookkeeping.

Scalars are :class:`fractions.Fraction`; matrices are tuples of tuples of
fractions.  Nothing in this module ever rounds.
"""

from fractions import Fraction
from math import comb

from .errors import NotHalfIntegral, ShapeMismatch, SingularIndex

__all__ = [
    "HalfIntSymMatrix",
    "MultiIndexPair",
    "as_fraction",
    "rational_matrix",
    "mat_mul",
    "identity",
    "determinant",
    "invert_matrix",
    "invert_index",
    "is_psd",
    "psd_support_check",
    "compositions",
    "enumerate_pairs",
    "pair_degree",
    "multiplicity_mu",
    "n_pairs",
]


def as_fraction(x):
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("floats are not accepted in exact arithmetic")
    return Fraction(x)


def rational_matrix(rows):
    return tuple(tuple(as_fraction(a) for a in row) for row in rows)


def identity(n):
    return tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n))


def mat_mul(a, b):
    cols = list(zip(*b))
    return tuple(tuple(sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in cols) for row in a)


def _eliminate(a):
    """Gauss-Jordan on an augmented copy; returns (det, inverse or None)."""
    n = len(a)
    work = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(a)]
    det = Fraction(1)
    for col in range(n):
        pivot = next((i for i in range(col, n) if work[i][col] != 0), None)
        if pivot is None:
            return Fraction(0), None
        if pivot != col:
            work[col], work[pivot] = work[pivot], work[col]
            det = -det
        p = work[col][col]
        det *= p
        work[col] = [x / p for x in work[col]]
        for i in range(n):
            if i != col and work[i][col] != 0:
                f = work[i][col]
                work[i] = [x - f * y for x, y in zip(work[i], work[col])]
    return det, tuple(tuple(row[n:]) for row in work)


def determinant(a):
    return _eliminate(rational_matrix(a))[0]


def invert_matrix(a):
    det, inv = _eliminate(rational_matrix(a))
    if inv is None:
        raise SingularIndex("matrix is singular")
    return inv


class HalfIntSymMatrix:
    r"""
    A Jacobi index: symmetric ``h x h`` rational matrix with integral
    diagonal and ``2m`` integral.

    Instances are immutable and hashable; ``m[i][j]`` and ``m[i, j]`` both
    return a :class:`~fractions.Fraction`.
    """

    __slots__ = ("_rows", "_inv", "_det")

    def __init__(self, rows):
        rows = rational_matrix(rows)
        h = len(rows)
        if h == 0 or any(len(row) != h for row in rows):
            raise ShapeMismatch("index must be a non-empty square matrix")
        for i in range(h):
            if rows[i][i].denominator != 1:
                raise NotHalfIntegral(f"diagonal entry ({i},{i}) = {rows[i][i]} is not integral")
            for j in range(h):
                if rows[i][j] != rows[j][i]:
                    raise NotHalfIntegral("index is not symmetric")
                if (2 * rows[i][j]).denominator != 1:
                    raise NotHalfIntegral(f"entry ({i},{j}) = {rows[i][j]} is not in (1/2)Z")
        self._rows = rows
        self._inv = None
        self._det = None

    @classmethod
    def from_two_m(cls, two_m):
        return cls([[Fraction(a, 2) for a in row] for row in two_m])

    @classmethod
    def identity(cls, h):
        return cls(identity(h))

    @property
    def h(self):
        return len(self._rows)

    @property
    def rows(self):
        return self._rows

    def two_m(self):
        return [[int(2 * a) for a in row] for row in self._rows]

    def __getitem__(self, idx):
        if isinstance(idx, tuple):
            i, j = idx
            return self._rows[i][j]
        return self._rows[idx]

    def __eq__(self, other):
        return isinstance(other, HalfIntSymMatrix) and self._rows == other._rows

    def __hash__(self):
        return hash(self._rows)

    def __repr__(self):
        body = ", ".join("[" + ", ".join(str(a) for a in row) + "]" for row in self._rows)
        return f"HalfIntSymMatrix([{body}])"

    def det(self):
        if self._det is None:
            self._det = determinant(self._rows)
        return self._det

    def is_invertible(self):
        return self.det() != 0

    def inverse(self):
        if self._inv is None:
            self._inv = invert_index(self)
        return self._inv

    def quad(self, x, y=None):
        """``x' m y`` for rational vectors (``y`` defaults to ``x``)."""
        y = x if y is None else y
        return sum((xi * self._rows[i][j] * y[j] for i, xi in enumerate(x) for j in range(self.h)), Fraction(0))


def invert_index(m):
    """Exact inverse of the Jacobi index; raises :class:`SingularIndex` if ``det m = 0``."""
    rows = m.rows if isinstance(m, HalfIntSymMatrix) else rational_matrix(m)
    det, inv = _eliminate(rows)
    if inv is None:
        raise SingularIndex(f"Jacobi index {rows} is singular")
    return inv


def is_psd(a):
    """Exact positive semi-definiteness by symmetric elimination on positive pivots."""
    work = [list(row) for row in rational_matrix(a)]
    idx = list(range(len(work)))
    while idx:
        diag = [work[i][i] for i in idx]
        if any(d < 0 for d in diag):
            return False
        p = next((i for i in idx if work[i][i] > 0), None)
        if p is None:
            # all remaining diagonal entries vanish: PSD iff the block is zero
            return all(work[i][j] == 0 for i in idx for j in idx)
        idx.remove(p)
        piv = work[p][p]
        for i in idx:
            f = work[i][p] / piv
            if f:
                for j in idx:
                    work[i][j] -= f * work[p][j]
    return True


def psd_support_check(n, r, m):
    r"""
    True iff ``[[n, r'/2], [r/2, m]]`` is positive semi-definite, i.e. the
    Fourier mode ``(n, r)`` may carry a coefficient of a Jacobi form of index ``m``.
    """
    rows = m.rows if isinstance(m, HalfIntSymMatrix) else rational_matrix(m)
    half = [Fraction(x, 2) for x in r]
    if len(half) != len(rows):
        raise ShapeMismatch("r must have length h")
    block = [[as_fraction(n)] + half] + [[half[i]] + list(rows[i]) for i in range(len(rows))]
    return is_psd(block)


class MultiIndexPair(tuple):
    """``(nu, r)`` with ``nu`` a tuple of h non-negative ints; indexes alpha^nu beta^r."""

    __slots__ = ()

    def __new__(cls, nu, r):
        nu = tuple(int(x) for x in nu)
        if any(x < 0 for x in nu) or r < 0:
            raise ValueError("multi-index entries must be non-negative")
        return super().__new__(cls, (nu, int(r)))

    @property
    def nu(self):
        return self[0]

    @property
    def r(self):
        return self[1]

    @property
    def degree(self):
        return sum(self[0]) + 2 * self[1]

    def __repr__(self):
        return f"MultiIndexPair(nu={self[0]}, r={self[1]})"


def pair_degree(nu, r):
    return sum(nu) + 2 * r


def compositions(total, h):
    """All ``nu`` in N_0^h with ``|nu| = total``, largest first in lex order."""
    if h == 1:
        return [(total,)]
    out = []
    for first in range(total, -1, -1):
        out.extend((first,) + rest for rest in compositions(total - first, h - 1))
    return out


def enumerate_pairs(level, h):
    """All pairs with ``|nu, r| = level``; r ascending, then nu in descending lex order."""
    return [MultiIndexPair(nu, r) for r in range(level // 2 + 1) for nu in compositions(level - 2 * r, h)]


def n_pairs(level, h):
    return len(enumerate_pairs(level, h))


def multiplicity_mu(s, h):
    """``binom(s + h - 1, h - 1)``: number of degree-s monomials in Y_1..Y_h."""
    if s < 0:
        return 0
    return comb(s + h - 1, h - 1)

