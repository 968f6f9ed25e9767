"""Congruence diagonalization ``A = Pᴴ·D·P`` over an exact field.

The elimination keeps the invariant ``A = Pᴴ·W·P`` on a working copy ``W``
(``Pᴴ`` is the transpose in rational mode).  Each symmetric row/column
operation ``W <- E·W·Eᴴ`` is matched by ``P <- E⁻ᴴ·P``; ``E⁻¹`` of an
elementary operation is again elementary, so ``P`` is never obtained by
inverting anything.  When ``W`` has become diagonal it is ``D``.

Pivot policies
--------------
``"max"``
    largest remaining ``|w_kk|``, ties to the lowest index.
``"first"``
    first remaining nonzero diagonal entry in index order.
sequence of ints
    a permutation of ``range(n)``; the first remaining nonzero diagonal
    entry in that order is used.  This is the hook the invariance tests use.

When every remaining diagonal entry is zero but some off-diagonal ``w_ij``
is not, row ``j`` is added to row ``i`` (and column ``j`` to column ``i``),
which makes ``w_ii = 2·Re(w_ij)``.  If that is zero (Hermitian, purely
imaginary ``w_ij``) the multiplier ``i`` is used instead, giving
``w_ii = 2·Im(w_ij)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

from .core import (
    GaussianRational,
    Matrix,
    SymMatrix,
    abs_sq,
    mat_vec,
)
from .errors import NotPositiveDefinite, SingularMatrix

__all__ = [
    "CongruenceCertificate",
    "Inertia",
    "congruence_diagonalize",
    "inertia",
    "is_psd",
    "negative_witness",
    "pd_factor",
    "invert",
]

PivotPolicy = Union[str, Sequence[int]]


@dataclass(frozen=True)
class Inertia:
    n_plus: int
    n_minus: int
    n_zero: int

    @property
    def n(self) -> int:
        return self.n_plus + self.n_minus + self.n_zero

    @classmethod
    def of(cls, d: Sequence[Fraction]) -> "Inertia":
        return cls(
            sum(1 for x in d if x > 0),
            sum(1 for x in d if x < 0),
            sum(1 for x in d if x == 0),
        )

    def as_dict(self) -> dict:
        return {"n_plus": self.n_plus, "n_minus": self.n_minus, "n_zero": self.n_zero}


@dataclass(frozen=True)
class CongruenceCertificate:
    """``(P, D)`` with ``Pᴴ·diag(D)·P == A``; ``D`` holds real ``Fraction`` values."""

    P: Matrix
    D: tuple

    @property
    def n(self) -> int:
        return len(self.D)

    def reconstruct(self) -> Matrix:
        return self.P.conj_transpose() @ Matrix.diag(self.D, self.P.hermitian) @ self.P

    def verify(self, A: Matrix) -> bool:
        """Exact check of the congruence identity against ``A``."""
        if self.P.shape != A.shape or len(self.D) != A.n:
            return False
        if not all(isinstance(d, Fraction) for d in self.D):
            return False
        return self.reconstruct() == A.as_matrix()

    def inertia(self) -> Inertia:
        return Inertia.of(self.D)

    def quadratic_form(self, v) -> Fraction:
        """``Σ d_i·|(P·v)_i|²``, which equals ``⟨v, A·v⟩``."""
        return sum((d * abs_sq(x) for d, x in zip(self.D, mat_vec(self.P, v))), Fraction(0))


def _as_real(x) -> Fraction:
    if isinstance(x, GaussianRational):
        if x.im != 0:
            raise ArithmeticError(f"non-real diagonal entry {x} in Hermitian elimination")
        return x.re
    return Fraction(x)


def _order(policy: PivotPolicy, n: int) -> list[int] | None:
    if isinstance(policy, str):
        if policy == "max":
            return None
        if policy == "first":
            return list(range(n))
        raise ValueError(f"unknown pivot policy {policy!r}")
    order = [int(k) for k in policy]
    if sorted(order) != list(range(n)):
        raise ValueError(f"pivot order must be a permutation of range({n})")
    return order


def congruence_diagonalize(A: SymMatrix, pivot: PivotPolicy = "max") -> CongruenceCertificate:
    """Diagonalize ``A`` by congruence; see the module docstring for the pivot rules."""
    P, D = _eliminate(A, pivot, track=True)
    return CongruenceCertificate(Matrix(P, A.hermitian), D)


def _eliminate(A: SymMatrix, pivot: PivotPolicy, track: bool):
    n = A.n
    herm = A.hermitian
    zero = GaussianRational(0) if herm else Fraction(0)
    one = GaussianRational(1) if herm else Fraction(1)
    W = [list(r) for r in A.rows]
    P = [[one if i == j else zero for j in range(n)] for i in range(n)] if track else None
    order = _order(pivot, n)
    rank = {k: pos for pos, k in enumerate(order if order is not None else range(n))}
    remaining = set(range(n))

    def pick_diagonal():
        live = [k for k in remaining if W[k][k] != 0]
        if not live:
            return None
        if order is None:
            return max(live, key=lambda k: (abs(_as_real(W[k][k])), -k))
        return min(live, key=rank.__getitem__)

    def add_multiple(i, j, c):
        # W <- E W Eᴴ with E = I + c e_i e_jᵀ ; P <- E⁻ᴴ P, E⁻ᴴ = I - conj(c) e_j e_iᵀ
        for col in range(n):
            W[i][col] = W[i][col] + c * W[j][col]
        cc = c.conjugate()
        for row in range(n):
            W[row][i] = W[row][i] + cc * W[row][j]
        if track:
            for col in range(n):
                P[j][col] = P[j][col] - cc * P[i][col]

    while remaining:
        k = pick_diagonal()
        if k is None:
            pairs = [
                (i, j)
                for i in remaining
                for j in remaining
                if i != j and W[i][j] != 0
            ]
            if not pairs:
                break
            i, j = min(pairs, key=lambda p: (rank[p[0]], rank[p[1]]))
            if W[i][j] + W[j][i] != 0:
                add_multiple(i, j, one)
            else:
                add_multiple(i, j, GaussianRational(0, 1))
            k = i
        d = W[k][k]
        others = [i for i in remaining if i != k and W[i][k] != 0]
        for i in others:
            l = W[i][k] / d
            for j in remaining:
                if j != k:
                    W[i][j] = W[i][j] - l * W[k][j]
            if track:
                # P <- E⁻ᴴ P with E⁻ᴴ = I + conj(l) e_k e_iᵀ
                lc = l.conjugate()
                for col in range(n):
                    P[k][col] = P[k][col] + lc * P[i][col]
        for i in others:
            W[i][k] = zero
            W[k][i] = zero
        remaining.discard(k)

    return P, tuple(_as_real(W[i][i]) for i in range(n))


def inertia(A: SymMatrix, pivot: PivotPolicy = "max") -> Inertia:
    """Sign counts of ``D``; ``n_zero == 0`` exactly when ``det(A) != 0``.

    Runs the same elimination as :func:`congruence_diagonalize` without
    accumulating ``P``.
    """
    return Inertia.of(_eliminate(A, pivot, track=False)[1])


def is_psd(A: SymMatrix, pivot: PivotPolicy = "max") -> bool:
    return inertia(A, pivot).n_minus == 0


def pd_factor(A: SymMatrix, pivot: PivotPolicy = "max") -> CongruenceCertificate:
    """Certificate with every ``d_i > 0``.

    Raises :class:`NotPositiveDefinite` (carrying the inertia and the
    certificate that shows it) when ``A`` is singular or indefinite.
    """
    cert = congruence_diagonalize(A, pivot)
    ine = cert.inertia()
    if ine.n_minus or ine.n_zero:
        raise NotPositiveDefinite(ine, cert)
    return cert


def negative_witness(A: SymMatrix, pivot: PivotPolicy = "max"):
    """A vector ``v`` with ``⟨v, A·v⟩ < 0``, or ``None`` when ``A`` is PSD.

    ``v = P⁻¹·e_i`` for a negative ``d_i`` gives ``⟨v, A·v⟩ = d_i``; the
    result is scaled by the lcm of denominators so it has integer parts.
    """
    cert = congruence_diagonalize(A, pivot)
    neg = [i for i, d in enumerate(cert.D) if d < 0]
    if not neg:
        return None
    i = neg[0]
    Pinv = invert(cert.P)
    v = tuple(Pinv[r, i] for r in range(A.n))
    parts = [p for x in v for p in ((x.re, x.im) if isinstance(x, GaussianRational) else (x,))]
    scale = math.lcm(*(Fraction(p).denominator for p in parts))
    return tuple(x * scale for x in v)


def invert(P: Matrix) -> Matrix:
    """Exact Gauss-Jordan inverse; raises :class:`SingularMatrix`."""
    n, m = P.shape
    if n != m:
        raise SingularMatrix(f"non-square {n}x{m} matrix has no inverse")
    herm = P.hermitian
    zero = GaussianRational(0) if herm else Fraction(0)
    one = GaussianRational(1) if herm else Fraction(1)
    M = [list(r) + [one if i == j else zero for j in range(n)] for i, r in enumerate(P.rows)]
    for c in range(n):
        piv = next((r for r in range(c, n) if M[r][c] != 0), None)
        if piv is None:
            raise SingularMatrix("matrix is singular")
        M[c], M[piv] = M[piv], M[c]
        inv = one / M[c][c]
        M[c] = [x * inv for x in M[c]]
        for r in range(n):
            if r != c and M[r][c] != 0:
                f = M[r][c]
                M[r] = [x - f * y for x, y in zip(M[r], M[c])]
    return Matrix([row[n:] for row in M], herm)
