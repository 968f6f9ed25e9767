"""Walk through the small worked examples and print every certified quantity."""

from fractions import Fraction as F

from spectra_cert import SymMatrix, congruence_diagonalize, inertia
from spectra_cert.core import GaussianRational as G
from spectra_cert.oracle import char_poly, oracle_count_below
from spectra_cert.spectral import bisect_spectrum, mu_bracket, positivity_gap

EXAMPLES = {
    "pd 2x2": SymMatrix([[2, 1], [1, 2]]),
    "indefinite": SymMatrix([[1, 2], [2, 1]]),
    "zero diagonal": SymMatrix([[0, 1], [1, 0]]),
    "singular": SymMatrix([[1, 1], [1, 1]]),
    "hermitian": SymMatrix([[G(2), G(0, 1)], [G(0, -1), G(2)]], hermitian=True),
}


def show(name, A, eps=F(1, 2**20)):
    cert = congruence_diagonalize(A)
    print(f"== {name}")
    print("  D =", [str(d) for d in cert.D], " reconstructs:", cert.verify(A))
    print("  inertia:", inertia(A).as_dict(), " oracle below 0:", oracle_count_below(A, 0))
    print("  char poly:", [str(c) for c in char_poly(A).coeffs])
    for b in bisect_spectrum(A, eps):
        tag = "exact" if b.exact else f"width {float(b.width):.2e}"
        print(f"  eigen bracket [{float(b.lo):.8f}, {float(b.hi):.8f}] x{b.multiplicity} ({tag})")
    mu = mu_bracket(A, eps)
    print(f"  mu >= {mu.lo} (~{float(mu.lo):.8f})")
    if inertia(A).n_plus == A.n:
        print("  gap gamma =", positivity_gap(A).gamma)


if __name__ == "__main__":
    for name, A in EXAMPLES.items():
        show(name, A)
