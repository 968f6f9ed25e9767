"""Eigenvalue location by inertia counting.

The least eigenvalue of a symmetric/Hermitian ``A`` is the infimum ``μ(A)``
of the Rayleigh quotient ``⟨v,A·v⟩/‖v‖²``: any eigenvalue is a value of the
quotient, so it is at least ``μ(A)``, and ``μ(A)`` is itself an eigenvalue.
:func:`mu_bracket` therefore returns the first bracket of
:func:`bisect_spectrum`.

Counting uses ``A - t·I``: its negative and zero inertia are the numbers of
eigenvalues below and at ``t``.  No characteristic polynomial is formed.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

from .congruence import (
    CongruenceCertificate,
    PivotPolicy,
    congruence_diagonalize,
    inertia,
    invert,
)
from .core import (
    SymMatrix,
    abs_bound,
    inner_product,
    mat_vec,
    max_abs,
    max_abs_sq,
    norm_sq,
)
from .errors import InvalidPrecision, NotPositiveDefinite, ZeroVector

__all__ = [
    "EigenBracket",
    "GapCertificate",
    "rayleigh",
    "s_bound",
    "positivity_gap",
    "eigen_count_below",
    "count_in",
    "spectrum_bound",
    "bisect_spectrum",
    "mu_bracket",
]


@dataclass(frozen=True)
class EigenBracket:
    """``multiplicity`` eigenvalues (with multiplicity) lie in ``(lo, hi]``.

    Non-exact brackets produced here have ``lo`` and ``hi`` that are not
    eigenvalues, so the count is the same for ``[lo, hi]`` and ``(lo, hi)``.
    Neighbouring brackets may share such an endpoint.
    """

    lo: Fraction
    hi: Fraction
    multiplicity: int
    exact: bool = False

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError(f"empty bracket [{self.lo}, {self.hi}]")
        if self.exact and self.lo != self.hi:
            raise ValueError("an exact bracket must have lo == hi")
        if self.multiplicity < 1:
            raise ValueError("multiplicity must be positive")

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def __contains__(self, x) -> bool:
        return self.lo <= x <= self.hi


@dataclass(frozen=True)
class GapCertificate:
    """Certified ``gamma > 0`` with ``⟨v,B·v⟩ >= gamma·‖v‖²`` for every ``v``.

    ``p_inv_max`` follows :func:`~spectra_cert.core.max_abs`, i.e. it is the
    squared modulus bound in Hermitian mode.
    """

    cert: CongruenceCertificate
    p_inv: object
    p_inv_max: Fraction
    gamma: Fraction


def rayleigh(A: SymMatrix, v) -> Fraction:
    """``⟨v,A·v⟩ / ‖v‖²``; scale invariant, raises :class:`ZeroVector` on ``v = 0``."""
    den = norm_sq(v)
    if den == 0:
        raise ZeroVector("Rayleigh quotient of the zero vector")
    num = inner_product(v, mat_vec(A, v))
    if A.hermitian:
        # a Hermitian form is real on every vector
        num = num.re
    return Fraction(num) / den


def s_bound(A: SymMatrix) -> Fraction:
    """``Σ |a_ij|`` (``|re| + |im|`` per Gaussian entry, an upper bound on the modulus).

    Bounds ``|⟨v,A·v⟩|`` whenever every component of ``v`` has modulus at most 1.
    """
    return sum((abs_bound(x) for r in A.rows for x in r), Fraction(0))


def _gap_denominator_sq(p_inv, n: int) -> Fraction:
    return n**3 * max_abs_sq(p_inv)


def positivity_gap(B: SymMatrix, pivot: PivotPolicy = "max") -> GapCertificate:
    """Lower bound on the least eigenvalue of a positive definite ``B``.

    With ``B = Pᴴ·D·P``, ``⟨v,B·v⟩ = Σ d_i |(P·v)_i|² >= min(d)·‖P·v‖²`` and the
    sup-norm inequality applied to ``v = P⁻¹·(P·v)`` gives
    ``‖v‖² <= n³·|P⁻¹|∞²·‖P·v‖²``.  Hence ``gamma = min(d) / (n³·|P⁻¹|∞²)``.
    """
    cert = congruence_diagonalize(B, pivot)
    ine = cert.inertia()
    if ine.n_minus or ine.n_zero:
        raise NotPositiveDefinite(ine, cert)
    p_inv = invert(cert.P)
    gamma = min(cert.D) / _gap_denominator_sq(p_inv, B.n)
    return GapCertificate(cert, p_inv, max_abs(p_inv), gamma)


def eigen_count_below(A: SymMatrix, t, pivot: PivotPolicy = "max") -> tuple[int, int]:
    """``(#eigenvalues < t, #eigenvalues == t)``, with multiplicity."""
    ine = inertia(A.shift(t), pivot)
    return ine.n_minus, ine.n_zero


def count_in(A: SymMatrix, lo, hi, pivot: PivotPolicy = "max") -> int:
    """Number of eigenvalues in ``(lo, hi]``."""
    b_lo, a_lo = eigen_count_below(A, lo, pivot)
    b_hi, a_hi = eigen_count_below(A, hi, pivot)
    return b_hi + a_hi - b_lo - a_lo


def spectrum_bound(A: SymMatrix) -> Fraction:
    """Rational ``R`` with every eigenvalue in ``[-R, R]``.

    ``|λ| <= n^(3/2)·|A|∞ <= n²·|A|∞``; Gaussian entries use ``|re|+|im|`` as
    the modulus bound.
    """
    m = max((abs_bound(x) for r in A.rows for x in r), default=Fraction(0))
    return A.n**2 * m


class _Counter:
    """Memoized ``eigen_count_below`` for one matrix."""

    def __init__(self, A, pivot):
        self.A = A
        self.pivot = pivot
        self.cache = {}

    def __call__(self, t):
        t = Fraction(t)
        hit = self.cache.get(t)
        if hit is None:
            hit = self.cache[t] = eigen_count_below(self.A, t, self.pivot)
        return hit

    def below(self, t) -> int:
        return self(t)[0]

    def upto(self, t) -> int:
        b, a = self(t)
        return b + a

    def clear_left(self, t, lo):
        """Point ``s`` in ``(lo, t)`` with no eigenvalue in ``[s, t)``."""
        step = (t - lo) / 4
        while True:
            s = t - step
            if self.below(t) - self.below(s) == 0 and self(s)[1] == 0:
                return s
            step /= 2

    def clear_right(self, t, hi):
        """Point ``s`` in ``(t, hi)`` with no eigenvalue in ``(t, s]``."""
        step = (hi - t) / 4
        while True:
            s = t + step
            if self.upto(s) - self.upto(t) == 0:
                return s
            step /= 2


def _check_eps(eps) -> Fraction:
    eps = Fraction(eps)
    if eps <= 0:
        raise InvalidPrecision(f"eps must be positive, got {eps}")
    return eps


def _initial(count: _Counter, A: SymMatrix):
    """Exact hits at ``±R`` plus the open interior ``(lo, hi)`` still to refine.

    Interior endpoints are guaranteed not to be eigenvalues.
    """
    R = spectrum_bound(A)
    lo, hi = -R, R
    left_hit = right_hit = None
    if count(lo)[1]:
        left_hit = EigenBracket(lo, lo, count(lo)[1], True)
    if R != 0 and count(hi)[1]:
        right_hit = EigenBracket(hi, hi, count(hi)[1], True)
    interior = None
    if count.below(hi) - count.upto(lo) > 0:
        a = count.clear_right(lo, hi) if left_hit else lo
        b = count.clear_left(hi, a) if right_hit else hi
        interior = (a, b)
    return left_hit, interior, right_hit


def _refine(count: _Counter, lo, hi, eps, lowest_only=False, out=None) -> list[EigenBracket]:
    """Brackets for the eigenvalues in ``(lo, hi)``; ``lo``/``hi`` are not eigenvalues."""
    out = [] if out is None else out
    m = count.below(hi) - count.below(lo)
    if m == 0:
        return out
    if hi - lo <= eps:
        out.append(EigenBracket(lo, hi, m))
        return out
    mid = (lo + hi) / 2
    at = count(mid)[1]
    if at:
        _refine(count, lo, count.clear_left(mid, lo), eps, lowest_only, out)
        if lowest_only and out:
            return out
        out.append(EigenBracket(mid, mid, at, True))
        if lowest_only:
            return out
        return _refine(count, count.clear_right(mid, hi), hi, eps, lowest_only, out)
    _refine(count, lo, mid, eps, lowest_only, out)
    if lowest_only and out:
        return out
    return _refine(count, mid, hi, eps, lowest_only, out)


def _refine_task(args):
    A, pivot, lo, hi, eps = args
    return _refine(_Counter(A, pivot), lo, hi, eps)


def bisect_spectrum(
    A: SymMatrix, eps, pivot: PivotPolicy = "max", workers: int | None = None
) -> list[EigenBracket]:
    """Disjoint ascending brackets covering all ``n`` eigenvalues.

    Each bracket has width ``<= eps`` or is exact.  Whenever a probe point is
    an eigenvalue it is reported as an exact singleton and the interval is
    split around it.  With ``workers > 1`` the two halves of the first split
    are refined in separate processes; the result is identical.
    """
    eps = _check_eps(eps)
    count = _Counter(A, pivot)
    left_hit, interior, right_hit = _initial(count, A)
    out = [left_hit] if left_hit else []
    if interior is not None:
        lo, hi = interior
        if workers and workers > 1 and hi - lo > eps:
            mid = (lo + hi) / 2
            at = count(mid)[1]
            if at:
                parts = [(lo, count.clear_left(mid, lo)), (count.clear_right(mid, hi), hi)]
            else:
                parts = [(lo, mid), (mid, hi)]
            with ProcessPoolExecutor(max_workers=workers) as pool:
                left, right = pool.map(_refine_task, [(A, pivot, a, b, eps) for a, b in parts])
            out += left
            if at:
                out.append(EigenBracket(mid, mid, at, True))
            out += right
        else:
            out += _refine(count, lo, hi, eps)
    if right_hit:
        out.append(right_hit)
    return out


def mu_bracket(A: SymMatrix, eps, pivot: PivotPolicy = "max") -> EigenBracket:
    """Bracket of width ``<= eps`` (or exact) around the least eigenvalue ``μ(A)``.

    Only the lowest non-empty sub-interval is refined; the result equals
    ``bisect_spectrum(A, eps)[0]``.  Since ``lo <= μ(A)``,
    ``⟨v,A·v⟩ >= lo·‖v‖²`` for every ``v``.
    """
    eps = _check_eps(eps)
    count = _Counter(A, pivot)
    left_hit, interior, right_hit = _initial(count, A)
    if left_hit:
        return left_hit
    if interior is not None:
        return _refine(count, *interior, eps, lowest_only=True)[0]
    return right_hit
