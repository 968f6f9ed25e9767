"""Exact scalars, vectors and matrices.

Two scalar fields are supported: the rationals (``fractions.Fraction``) and
the Gaussian rationals (:class:`GaussianRational`).  Every routine downstream
is written once against the small scalar protocol used here: ``+ - * /``,
``conjugate()`` and :func:`abs_sq`.

Norms are never taken as square roots.  The Euclidean norm is carried as
``norm_sq`` and the sup-norm inequality

    ||A v|| <= n^(3/2) |A|_inf ||v||

is checked in the squared form ``||A v||^2 <= n^3 |A|_inf^2 ||v||^2``.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Sequence, Union

from .errors import DimensionError, SymmetryError

__all__ = [
    "Fraction",
    "GaussianRational",
    "Scalar",
    "Vector",
    "Matrix",
    "SymMatrix",
    "to_scalar",
    "parse_scalar",
    "format_scalar",
    "abs_sq",
    "abs_bound",
    "vector",
    "inner_product",
    "norm_sq",
    "max_abs",
    "max_abs_sq",
    "mat_vec",
    "check_dagger",
]


class GaussianRational:
    """Complex number ``re + im*i`` with rational parts.

    Instances are immutable and hash equal to the matching ``Fraction`` when
    the imaginary part vanishes, so ``GaussianRational(3) == 3``.
    """

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", Fraction(re))
        object.__setattr__(self, "im", Fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussianRational is immutable")

    def __reduce__(self):
        return (GaussianRational, (self.re, self.im))

    @classmethod
    def _coerce(cls, other):
        if isinstance(other, GaussianRational):
            return other
        if isinstance(other, (int, Fraction)):
            return cls(other, 0)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational(
            self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        den = o.abs_sq()
        if den == 0:
            raise ZeroDivisionError("GaussianRational division by zero")
        num = self * o.conjugate()
        return GaussianRational(num.re / den, num.im / den)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __pos__(self):
        return self

    def conjugate(self):
        return GaussianRational(self.re, -self.im)

    def abs_sq(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    @property
    def real(self) -> Fraction:
        return self.re

    @property
    def imag(self) -> Fraction:
        return self.im

    def is_real(self) -> bool:
        return self.im == 0

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __repr__(self):
        return f"GaussianRational({self.re!s}, {self.im!s})"

    def __str__(self):
        return format_scalar(self)


Scalar = Union[Fraction, GaussianRational]
Vector = tuple  # tuple of Scalar; kept as a plain tuple for cheap hashing/equality


def to_scalar(x, hermitian: bool = False) -> Scalar:
    """Coerce ``x`` (int, Fraction, str, GaussianRational) into the chosen field."""
    if isinstance(x, str):
        x = parse_scalar(x, allow_complex=hermitian)
    if isinstance(x, GaussianRational):
        if not hermitian:
            if x.im != 0:
                raise TypeError(f"complex entry {x} in rational mode")
            return x.re
        return x
    if isinstance(x, bool) or not isinstance(x, (int, Fraction)):
        raise TypeError(f"cannot use {type(x).__name__} as an exact scalar")
    return GaussianRational(x) if hermitian else Fraction(x)


_RAT = r"[+-]?\d+(?:/\d+)?"
_COMPLEX_RE = re.compile(
    rf"^(?:(?P<re>{_RAT})(?P<sign>[+-])(?P<im>\d+(?:/\d+)?)?i"
    rf"|(?P<pure>{_RAT}|[+-])?i"
    rf"|(?P<real>{_RAT}))$"
)


def _rational(text: str) -> Fraction:
    num, _, den = text.partition("/")
    if den and int(den) == 0:
        raise ValueError(f"zero denominator in {text!r}")
    return Fraction(int(num), int(den) if den else 1)


def parse_scalar(text: str, allow_complex: bool = False) -> Scalar:
    """Parse ``"p/q"``, an integer, or (if allowed) ``"a+bi"``-style literals.

    Raises ``ValueError`` on anything else.  Decimal points are rejected:
    every accepted literal denotes an exact rational.
    """
    m = _COMPLEX_RE.match(text.strip())
    if m is None:
        raise ValueError(f"not an exact rational literal: {text!r}")
    if m.group("real") is not None:
        value = _rational(m.group("real"))
        return GaussianRational(value) if allow_complex else value
    if not allow_complex:
        raise ValueError(f"complex literal {text!r} outside Hermitian mode")
    if m.group("sign") is not None:
        im = _rational(m.group("im")) if m.group("im") else Fraction(1)
        if m.group("sign") == "-":
            im = -im
        return GaussianRational(_rational(m.group("re")), im)
    pure = m.group("pure")
    if pure in (None, "+"):
        return GaussianRational(0, 1)
    if pure == "-":
        return GaussianRational(0, -1)
    return GaussianRational(0, _rational(pure))


def format_scalar(x) -> str:
    """Canonical string form; inverse of :func:`parse_scalar`."""
    if isinstance(x, GaussianRational):
        if x.im == 0:
            return str(x.re)
        if x.re == 0:
            return f"{x.im}i"
        sign = "-" if x.im < 0 else "+"
        return f"{x.re}{sign}{abs(x.im)}i"
    return str(Fraction(x))


def abs_sq(x) -> Fraction:
    """Squared modulus, always a nonnegative ``Fraction``."""
    if isinstance(x, GaussianRational):
        return x.abs_sq()
    x = Fraction(x)
    return x * x


def abs_bound(x) -> Fraction:
    """Rational upper bound on ``|x|``: exact for rationals, ``|re|+|im|`` otherwise."""
    if isinstance(x, GaussianRational):
        return abs(x.re) + abs(x.im)
    return abs(Fraction(x))


def vector(entries: Iterable, hermitian: bool = False) -> Vector:
    v = tuple(to_scalar(e, hermitian) for e in entries)
    if not v:
        raise DimensionError("vectors must have length >= 1")
    return v


class Matrix:
    """Immutable dense matrix over one of the exact fields.

    Rows are stored as a tuple of tuples.  ``hermitian`` records the field:
    ``True`` means every entry is a :class:`GaussianRational`.
    """

    __slots__ = ("rows", "hermitian")

    def __init__(self, rows: Iterable[Iterable], hermitian: bool | None = None):
        raw = [list(r) for r in rows]
        if not raw or not raw[0]:
            raise DimensionError("matrices must be non-empty")
        width = len(raw[0])
        if any(len(r) != width for r in raw):
            raise DimensionError("ragged rows")
        if hermitian is None:
            hermitian = any(isinstance(x, GaussianRational) for r in raw for x in r)
        object.__setattr__(
            self, "rows", tuple(tuple(to_scalar(x, hermitian) for x in r) for r in raw)
        )
        object.__setattr__(self, "hermitian", hermitian)

    def __setattr__(self, name, value):
        raise AttributeError("Matrix is immutable")

    def __reduce__(self):
        return (type(self), (self.rows, self.hermitian))

    @classmethod
    def identity(cls, n: int, hermitian: bool = False):
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)], hermitian)

    @classmethod
    def zeros(cls, n: int, m: int | None = None, hermitian: bool = False):
        return cls([[0] * (n if m is None else m) for _ in range(n)], hermitian)

    @classmethod
    def diag(cls, entries: Sequence, hermitian: bool = False):
        n = len(entries)
        return cls(
            [[entries[i] if i == j else 0 for j in range(n)] for i in range(n)], hermitian
        )

    @property
    def n(self) -> int:
        return len(self.rows)

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), len(self.rows[0])

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        body = ", ".join("[" + ", ".join(format_scalar(x) for x in r) + "]" for r in self.rows)
        return f"{type(self).__name__}([{body}])"

    def as_matrix(self) -> "Matrix":
        return Matrix(self.rows, self.hermitian)

    def transpose(self) -> "Matrix":
        return Matrix(zip(*self.rows), self.hermitian)

    def conj_transpose(self) -> "Matrix":
        """``ᵗP`` in rational mode, ``ᵗP̄`` in Hermitian mode."""
        if not self.hermitian:
            return self.transpose()
        return Matrix(
            [[x.conjugate() for x in col] for col in zip(*self.rows)], self.hermitian
        )

    H = property(conj_transpose)

    def _field(self, other: "Matrix") -> bool:
        return self.hermitian or other.hermitian

    def __add__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise DimensionError(f"shapes {self.shape} and {other.shape} differ")
        return Matrix(
            [[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)],
            self._field(other),
        )

    def __sub__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise DimensionError(f"shapes {self.shape} and {other.shape} differ")
        return Matrix(
            [[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)],
            self._field(other),
        )

    def scale(self, c) -> "Matrix":
        return Matrix([[c * x for x in r] for r in self.rows], self.hermitian)

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            if self.shape[1] != other.shape[0]:
                raise DimensionError(f"cannot multiply {self.shape} by {other.shape}")
            cols = list(zip(*other.rows))
            return Matrix(
                [[_dot(r, c) for c in cols] for r in self.rows], self._field(other)
            )
        if isinstance(other, tuple):
            if self.shape[1] != len(other):
                raise DimensionError(
                    f"cannot multiply {self.shape} matrix by length-{len(other)} vector"
                )
            return tuple(_dot(r, other) for r in self.rows)
        return NotImplemented


def _dot(r, c):
    acc = r[0] * c[0]
    for a, b in zip(r[1:], c[1:]):
        acc = acc + a * b
    return acc


class SymMatrix(Matrix):
    """Square matrix with ``a_ij == a_ji`` (or ``conj(a_ji)`` in Hermitian mode).

    Construction raises :class:`SymmetryError` (1-based indices) on violation.
    """

    __slots__ = ()

    def __init__(self, rows, hermitian: bool | None = None):
        super().__init__(rows, hermitian)
        n, m = self.shape
        if n != m:
            raise DimensionError(f"symmetric matrix must be square, got {n}x{m}")
        for i in range(n):
            for j in range(i, n):
                a, b = self.rows[i][j], self.rows[j][i]
                if a != (b.conjugate() if self.hermitian else b):
                    raise SymmetryError(i + 1, j + 1, self.hermitian)

    @classmethod
    def identity(cls, n: int, hermitian: bool = False):
        return cls(Matrix.identity(n, hermitian).rows, hermitian)

    @classmethod
    def zeros(cls, n: int, hermitian: bool = False):
        return cls(Matrix.zeros(n, hermitian=hermitian).rows, hermitian)

    @classmethod
    def diag(cls, entries, hermitian: bool = False):
        return cls(Matrix.diag(entries, hermitian).rows, hermitian)

    def shift(self, t) -> "SymMatrix":
        """``A - t*I`` for a rational ``t``."""
        t = Fraction(t)
        return SymMatrix(
            [
                [x - t if i == j else x for j, x in enumerate(r)]
                for i, r in enumerate(self.rows)
            ],
            self.hermitian,
        )


def _check_len(v, w):
    if len(v) != len(w):
        raise DimensionError(f"length {len(v)} vs {len(w)}")


def inner_product(v: Sequence, w: Sequence):
    """``ᵗv·w``, or ``ᵗv̄·w`` when either argument is Gaussian."""
    _check_len(v, w)
    acc = Fraction(0)
    for a, b in zip(v, w):
        acc = acc + a.conjugate() * b
    return acc


def norm_sq(v: Sequence) -> Fraction:
    return sum((abs_sq(x) for x in v), Fraction(0))


def _entries(x):
    if isinstance(x, Matrix):
        return [e for r in x.rows for e in r]
    return list(x)


def max_abs_sq(x) -> Fraction:
    """Square of the sup-norm ``|x|_inf`` of a vector or matrix, in either field."""
    return max((abs_sq(e) for e in _entries(x)), default=Fraction(0))


def max_abs(x) -> Fraction:
    """Sup-norm of a vector or matrix.

    Rational entries give ``max |x_i|``.  Gaussian entries give the maximal
    *squared* modulus, since ``|a+bi|`` is irrational in general.
    """
    entries = _entries(x)
    if any(isinstance(e, GaussianRational) for e in entries):
        return max_abs_sq(entries)
    return max((abs(Fraction(e)) for e in entries), default=Fraction(0))


def mat_vec(A: Matrix, v: Sequence) -> Vector:
    return A @ tuple(v)


def check_dagger(A: Matrix, v: Sequence) -> bool:
    """Return whether ``||A v||^2 <= n^3 |A|_inf^2 ||v||^2`` holds (it always should)."""
    n = A.shape[1]
    lhs = norm_sq(mat_vec(A, v))
    return lhs <= n**3 * max_abs_sq(A) * norm_sq(v)
