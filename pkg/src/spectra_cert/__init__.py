"""Exact eigenvalue certificates for rational symmetric and Gaussian-rational Hermitian matrices."""

__version__ = "0.1.0"

from .core import (  # noqa: F401
    Fraction,
    GaussianRational,
    Matrix,
    SymMatrix,
    check_dagger,
    inner_product,
    mat_vec,
    max_abs,
    norm_sq,
    vector,
)
from .congruence import (  # noqa: F401
    CongruenceCertificate,
    Inertia,
    congruence_diagonalize,
    inertia,
    invert,
    is_psd,
    pd_factor,
)
