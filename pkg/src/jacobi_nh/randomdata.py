"""Seeded random inputs shared by the command line and the test suite."""

import random
from fractions import Fraction

from .exactcore import HalfIntSymMatrix, determinant, enumerate_pairs, multiplicity_mu
from .nhfun import FourierPoly, NearlyHoloElt
from .symrep import monomials
from .vvsplit import ComponentTuple

__all__ = [
    "rng_for",
    "random_index",
    "random_rational",
    "random_fourier",
    "random_nh",
    "random_components",
    "random_holomorphic_vs",
]

_HALVES = [Fraction(x, 2) for x in (-2, -1, 0, 1, 2)]


def rng_for(seed):
    return seed if isinstance(seed, random.Random) else random.Random(seed)


def random_index(h, seed=0, positive=False):
    """A random half-integral invertible ``h x h`` index (positive definite if asked)."""
    rng = rng_for(seed)
    while True:
        rows = [[Fraction(0)] * h for _ in range(h)]
        for i in range(h):
            rows[i][i] = Fraction(rng.randint(1, 4) if positive else rng.choice([-3, -2, -1, 1, 2, 3]))
            for j in range(i):
                rows[i][j] = rows[j][i] = rng.choice(_HALVES)
        m = HalfIntSymMatrix(rows)
        if not m.is_invertible():
            continue
        if positive and any(x <= 0 for x in _leading_minors(m)):
            continue
        return m


def _leading_minors(m):
    return [determinant([row[:i] for row in m.rows[:i]]) for i in range(1, m.h + 1)]


def random_rational(rng, size=6):
    return Fraction(rng.randint(-size, size), rng.randint(1, 3))


def _modes(rng, h, count, n_max=3):
    return [(rng.randint(0, n_max), tuple(rng.randint(-3, 3) for _ in range(h))) for _ in range(count)]


def random_fourier(h, seed=0, n_terms=3, n_max=3):
    rng = rng_for(seed)
    return FourierPoly(h, {mode: random_rational(rng) for mode in _modes(rng, h, n_terms, n_max)})


def random_nh(k, m, d, seed=0, terms_per_pair=2):
    """A scalar nearly holomorphic element of depth at most ``d``."""
    rng = rng_for(seed)
    h = m.h
    pool = _modes(rng, h, 4)
    terms = {}
    for level in range(d + 1):
        for pair in enumerate_pairs(level, h):
            for _ in range(terms_per_pair):
                n, rv = rng.choice(pool)
                terms[(pair.nu, pair.r, n, rv, (0,) * (h + 1))] = random_rational(rng)
    return NearlyHoloElt(k, m, terms)


def random_components(k, s, m, seed=0, n_terms=3):
    rng = rng_for(seed)
    parts = [
        [random_fourier(m.h, rng, n_terms) for _ in range(multiplicity_mu(s - level, m.h))]
        for level in range(s + 1)
    ]
    return ComponentTuple(k, s, m, parts)


def random_holomorphic_vs(k, s, m, seed=0, n_terms=3):
    """A holomorphic ``V_s``-valued element with random coefficients on every monomial."""
    rng = rng_for(seed)
    h = m.h
    terms = {}
    for mono in monomials(s, h):
        for n, rv in _modes(rng, h, n_terms):
            terms[((0,) * h, 0, n, rv, mono)] = random_rational(rng)
    return NearlyHoloElt(k, m, terms, s=s)
