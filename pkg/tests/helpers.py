"""Random exact inputs shared by the test modules."""

import random
from fractions import Fraction

from hypothesis import assume, strategies as st

from spectra_cert.core import GaussianRational, Matrix, SymMatrix


def rand_rational(rng, num=20, den=10):
    return Fraction(rng.randint(-num, num), rng.randint(1, den))


def rand_gauss(rng, num=5, den=4):
    return GaussianRational(rand_rational(rng, num, den), rand_rational(rng, num, den))


def rand_sym(rng, n, num=20, den=10, zero_prob=0.0):
    rows = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            x = Fraction(0) if rng.random() < zero_prob else rand_rational(rng, num, den)
            rows[i][j] = rows[j][i] = x
    return SymMatrix(rows)


def rand_herm(rng, n, num=5, den=4):
    rows = [[GaussianRational(0)] * n for _ in range(n)]
    for i in range(n):
        rows[i][i] = GaussianRational(rand_rational(rng, num, den))
        for j in range(i + 1, n):
            z = rand_gauss(rng, num, den)
            rows[i][j] = z
            rows[j][i] = z.conjugate()
    return SymMatrix(rows, hermitian=True)


def rand_vec(rng, n, num=20, den=10, hermitian=False, nonzero=True):
    while True:
        if hermitian:
            v = tuple(rand_gauss(rng, num, den) for _ in range(n))
        else:
            v = tuple(rand_rational(rng, num, den) for _ in range(n))
        if not nonzero or any(v):
            return v


def rand_pd(rng, n, num=5, den=4):
    """``ᵗM·M + I`` for a random rational ``M``."""
    M = Matrix([[rand_rational(rng, num, den) for _ in range(n)] for _ in range(n)])
    B = M.transpose() @ M + Matrix.identity(n)
    return SymMatrix(B.rows)


def seeded(seed):
    return random.Random(seed)


# hypothesis strategies -------------------------------------------------------

rationals = st.fractions(max_denominator=12).filter(lambda x: abs(x) <= 50)
small_rationals = st.builds(
    Fraction, st.integers(-6, 6), st.integers(1, 4)
)
gaussians = st.builds(GaussianRational, small_rationals, small_rationals)


@st.composite
def sym_matrices(draw, min_n=1, max_n=5, elements=small_rationals):
    n = draw(st.integers(min_n, max_n))
    rows = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            rows[i][j] = rows[j][i] = draw(elements)
    return SymMatrix(rows)


@st.composite
def herm_matrices(draw, min_n=1, max_n=4):
    n = draw(st.integers(min_n, max_n))
    rows = [[GaussianRational(0)] * n for _ in range(n)]
    for i in range(n):
        rows[i][i] = GaussianRational(draw(small_rationals))
        for j in range(i + 1, n):
            z = draw(gaussians)
            rows[i][j] = z
            rows[j][i] = z.conjugate()
    return SymMatrix(rows, hermitian=True)


@st.composite
def matrix_and_vector(draw, hermitian=False, max_n=5, nonzero=True):
    A = draw(herm_matrices(max_n=max_n) if hermitian else sym_matrices(max_n=max_n))
    elem = gaussians if hermitian else small_rationals
    v = tuple(draw(st.lists(elem, min_size=A.n, max_size=A.n)))
    if nonzero:
        assume(any(v))
    return A, v
