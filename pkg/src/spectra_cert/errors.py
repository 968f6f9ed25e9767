"""Exception hierarchy shared by the library and the CLI."""


class SpectraError(Exception):
    """Base class for every error raised by spectra_cert."""


class DimensionError(SpectraError, ValueError):
    pass


class ZeroVector(SpectraError, ValueError):
    pass


class SingularMatrix(SpectraError, ArithmeticError):
    pass


class InvalidPrecision(SpectraError, ValueError):
    pass


class InvalidInterval(SpectraError, ValueError):
    pass


class SizeLimitExceeded(SpectraError):
    def __init__(self, n, limit):
        super().__init__(f"matrix dimension {n} exceeds oracle size limit {limit}")
        self.n = n
        self.limit = limit


class NotPositiveDefinite(SpectraError):
    """Raised when a positive definite hypothesis fails.

    Carries the offending :class:`~spectra_cert.congruence.Inertia` and, when
    available, the congruence certificate that exhibits the failure.
    """

    def __init__(self, inertia, certificate=None):
        super().__init__(
            "matrix is not positive definite: inertia "
            f"(n_plus={inertia.n_plus}, n_minus={inertia.n_minus}, n_zero={inertia.n_zero})"
        )
        self.inertia = inertia
        self.certificate = certificate


class ParseError(SpectraError, ValueError):
    def __init__(self, line, column, reason):
        super().__init__(f"line {line}, column {column}: {reason}")
        self.line = line
        self.column = column
        self.reason = reason


class SymmetryError(SpectraError, ValueError):
    """Asymmetric input; ``i`` and ``j`` are 1-based indices of the offending pair."""

    def __init__(self, i, j, hermitian=False):
        rel = "conj(a_ji)" if hermitian else "a_ji"
        super().__init__(f"entry ({i},{j}) does not equal {rel} at ({j},{i})")
        self.i = i
        self.j = j
