"""Independent verification channel: characteristic polynomials and Sturm counts.

Nothing here touches the congruence code.  Eigenvalue counts are obtained
from ``det(λI - A)`` alone, via a square-free (Yun) decomposition for
multiplicities and a Sturm chain for distinct-root counts.
"""

from __future__ import annotations

import os
from fractions import Fraction
from typing import Iterable, Sequence

from .core import GaussianRational, Matrix
from .errors import InvalidInterval, SizeLimitExceeded

DEFAULT_ORACLE_LIMIT = 8


def oracle_limit() -> int:
    """Size limit for oracle routines; ``SPECTRA_ORACLE_LIMIT`` overrides the default 8."""
    raw = os.environ.get("SPECTRA_ORACLE_LIMIT")
    return int(raw) if raw else DEFAULT_ORACLE_LIMIT


def _check_size(n: int, limit: int | None):
    limit = oracle_limit() if limit is None else limit
    if n > limit:
        raise SizeLimitExceeded(n, limit)


def _real(x) -> Fraction:
    if isinstance(x, GaussianRational):
        if x.im != 0:
            raise ValueError(f"non-real polynomial coefficient {x}")
        return x.re
    return Fraction(x)


class RatPolynomial:
    """Polynomial with ``Fraction`` coefficients in ascending degree order.

    Trailing zeros are stripped, so the zero polynomial has ``coeffs == ()``
    and ``degree == -1``.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        c = [Fraction(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.coeffs = tuple(c)

    @classmethod
    def from_roots(cls, roots: Iterable) -> "RatPolynomial":
        p = cls([1])
        for r in roots:
            p = p * cls([-Fraction(r), 1])
        return p

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lead(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, RatPolynomial):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"RatPolynomial({[str(c) for c in self.coeffs]})"

    def __call__(self, x):
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __add__(self, other: "RatPolynomial") -> "RatPolynomial":
        a, b = self.coeffs, other.coeffs
        m = max(len(a), len(b))
        return RatPolynomial(
            (a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(m)
        )

    def __neg__(self):
        return RatPolynomial(-c for c in self.coeffs)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, RatPolynomial):
            return RatPolynomial(c * other for c in self.coeffs)
        if not self or not other:
            return RatPolynomial()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return RatPolynomial(out)

    __rmul__ = __mul__

    def __divmod__(self, other: "RatPolynomial"):
        if not other:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return RatPolynomial(), self
        quot = [Fraction(0)] * (dq + 1)
        lead = other.lead
        for k in range(dq, -1, -1):
            c = rem[k + other.degree] / lead
            quot[k] = c
            if c:
                for j, b in enumerate(other.coeffs):
                    rem[k + j] -= c * b
        return RatPolynomial(quot), RatPolynomial(rem[: other.degree])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def derivative(self) -> "RatPolynomial":
        return RatPolynomial(i * c for i, c in enumerate(self.coeffs) if i)

    def monic(self) -> "RatPolynomial":
        return self * (1 / self.lead) if self else self

    def gcd(self, other: "RatPolynomial") -> "RatPolynomial":
        a, b = self, other
        while b:
            a, b = b, a % b
        return a.monic()

    def root_bound(self) -> Fraction:
        """Cauchy bound: every real root ``r`` has ``|r| < root_bound()``."""
        if self.degree < 1:
            return Fraction(1)
        return 1 + max(abs(c / self.lead) for c in self.coeffs[:-1])

    def multiplicity(self, t) -> int:
        """Multiplicity of ``t`` as a root (0 if not a root)."""
        if not self:
            raise ValueError("the zero polynomial has every root")
        lin = RatPolynomial([-Fraction(t), 1])
        p, m = self, 0
        while p(t) == 0:
            p = p // lin
            m += 1
        return m

    def eval_matrix(self, A: Matrix) -> Matrix:
        """Horner evaluation at a square matrix (used for the Cayley-Hamilton check)."""
        n = A.n
        acc = Matrix.zeros(n, hermitian=A.hermitian)
        ident = Matrix.identity(n, A.hermitian)
        for c in reversed(self.coeffs):
            acc = acc @ A + ident.scale(c)
        return acc


def char_poly(A: Matrix, limit: int | None = None) -> RatPolynomial:
    """Monic ``det(λI - A)`` by the Faddeev-LeVerrier recurrence.

    ``M_k = A·M_{k-1} + c_{n-k+1}·I`` and ``c_{n-k} = -tr(A·M_k)/k`` with
    ``M_0 = 0``, ``c_n = 1``.  All arithmetic is exact.
    """
    n = A.n
    _check_size(n, limit)
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    ident = Matrix.identity(n, A.hermitian)
    M = Matrix.zeros(n, hermitian=A.hermitian)
    for k in range(1, n + 1):
        M = A @ M + ident.scale(coeffs[n - k + 1])
        AM = A @ M
        trace = sum((AM[i, i] for i in range(n)), Fraction(0))
        coeffs[n - k] = -_real(trace) / k
    return RatPolynomial(coeffs)


def det(A: Matrix, limit: int | None = None) -> Fraction | GaussianRational:
    """Bareiss fraction-free determinant (exact, independent of the congruence path)."""
    n = A.n
    _check_size(n, limit)
    M = [list(r) for r in A.rows]
    sign = 1
    prev = Fraction(1)
    for k in range(n - 1):
        if M[k][k] == 0:
            swap = next((r for r in range(k + 1, n) if M[r][k] != 0), None)
            if swap is None:
                return Fraction(0)
            M[k], M[swap] = M[swap], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) / prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


def sturm_chain(p: RatPolynomial) -> list[RatPolynomial]:
    """Signed remainder sequence ``p, p', -rem(p, p'), ...``."""
    chain = [p, p.derivative()]
    while chain[-1]:
        r = -(chain[-2] % chain[-1])
        if not r:
            break
        chain.append(r)
    if not chain[-1]:
        chain.pop()
    return chain


def _variations(chain: Sequence[RatPolynomial], x) -> int:
    signs = [v for v in (q(x) for q in chain) if v != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if (a > 0) != (b > 0))


def square_free_part(p: RatPolynomial) -> RatPolynomial:
    g = p.gcd(p.derivative())
    return (p // g).monic()


def sturm_count(p: RatPolynomial, lo, hi) -> int:
    """Number of distinct real roots of ``p`` in ``(lo, hi]``.

    The chain is built for the square-free part, so a root sitting on an
    endpoint is handled correctly: at a simple root the sign-variation count
    equals its right-hand limit.
    """
    lo, hi = Fraction(lo), Fraction(hi)
    if lo > hi:
        raise InvalidInterval(f"lo={lo} > hi={hi}")
    if not p:
        raise ValueError("sturm_count of the zero polynomial")
    if p.degree < 1:
        return 0
    chain = sturm_chain(square_free_part(p))
    return _variations(chain, lo) - _variations(chain, hi)


def yun_decomposition(p: RatPolynomial) -> list[tuple[RatPolynomial, int]]:
    """Square-free factors ``[(f_k, k), ...]`` with ``p = lead·Π f_k^k``."""
    out = []
    if p.degree < 1:
        return out
    p = p.monic()
    dp = p.derivative()
    a = p.gcd(dp)
    b = p // a
    c = dp // a
    d = c - b.derivative()
    k = 1
    while b.degree >= 1:
        a = b.gcd(d)
        if a.degree >= 1:
            out.append((a, k))
        b = b // a
        c = d // a
        d = c - b.derivative()
        k += 1
    return out


def count_roots_below(p: RatPolynomial, t) -> tuple[int, int]:
    """``(#roots < t, #roots == t)`` of ``p`` counted with multiplicity."""
    t = Fraction(t)
    lo = min(-p.root_bound(), t - 1)
    below = 0
    for f, k in yun_decomposition(p):
        n_le = sturm_count(f, lo, t)
        below += k * (n_le - (1 if f(t) == 0 else 0))
    return below, p.multiplicity(t)


def oracle_count_below(A: Matrix, t, limit: int | None = None) -> tuple[int, int]:
    """``(#eigenvalues < t, #eigenvalues == t)`` from the characteristic polynomial."""
    return count_roots_below(char_poly(A, limit), t)
