from fractions import Fraction as F
from math import gcd

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spectra_cert.core import (
    GaussianRational as G,
    Matrix,
    SymMatrix,
    abs_bound,
    check_dagger,
    format_scalar,
    inner_product,
    mat_vec,
    max_abs,
    max_abs_sq,
    norm_sq,
    parse_scalar,
    vector,
)
from spectra_cert.errors import DimensionError, SymmetryError

from helpers import gaussians, matrix_and_vector, small_rationals

A2 = SymMatrix([[2, 1], [1, 2]])


def canonical(x):
    if isinstance(x, G):
        return canonical(x.re) and canonical(x.im)
    return x.denominator > 0 and gcd(abs(x.numerator), x.denominator) == 1


# -- operation examples -------------------------------------------------------


def test_inner_product_examples():
    assert inner_product(vector([1, 0]), vector([0, 1])) == 0
    assert inner_product(vector([1, 2]), vector([3, 4])) == 11
    v = vector([G(0, 1), G(1)], hermitian=True)
    assert inner_product(v, v) == 2


def test_inner_product_dimension_mismatch():
    with pytest.raises(DimensionError):
        inner_product(vector([1, 2]), vector([1, 2, 3]))


def test_norm_sq_examples():
    assert norm_sq(vector([0, 0, 0])) == 0
    assert norm_sq(vector([3, 4])) == 25
    assert norm_sq(vector([F(1, 2), F(1, 2)])) == F(1, 2)


def test_max_abs_examples():
    assert max_abs(A2) == 2
    assert max_abs(SymMatrix.zeros(3)) == 0
    assert max_abs(vector([-5, 3])) == 5


def test_max_abs_hermitian_is_squared_modulus():
    H = SymMatrix([[G(1), G(1, 2)], [G(1, -2), G(0)]], hermitian=True)
    assert max_abs(H) == 5
    assert max_abs_sq(H) == 5
    assert max_abs_sq(A2) == 4


def test_mat_vec_examples():
    assert mat_vec(SymMatrix.identity(2), vector([7, -2])) == (7, -2)
    assert mat_vec(A2, vector([1, 0])) == (2, 1)
    assert mat_vec(SymMatrix([[0, 1], [1, 0]]), vector([1, 1])) == (1, 1)
    with pytest.raises(DimensionError):
        mat_vec(A2, vector([1, 2, 3]))


def test_check_dagger_examples():
    v = vector([1, 0])
    assert norm_sq(mat_vec(A2, v)) == 5
    assert 2**3 * max_abs(A2) ** 2 * norm_sq(v) == 32
    assert check_dagger(A2, v)
    assert check_dagger(SymMatrix.zeros(2), vector([3, -1]))
    ones = vector([1, 1, 1])
    assert norm_sq(mat_vec(SymMatrix.identity(3), ones)) == 3
    assert check_dagger(SymMatrix.identity(3), ones)
    with pytest.raises(DimensionError):
        check_dagger(A2, vector([1]))


# -- construction ---------------------------------------------------------------


def test_symmatrix_rejects_asymmetric():
    with pytest.raises(SymmetryError) as exc:
        SymMatrix([[1, 2], [3, 4]])
    assert (exc.value.i, exc.value.j) == (1, 2)


def test_hermitian_requires_conjugate_symmetry():
    SymMatrix([[G(1), G(0, 1)], [G(0, -1), G(2)]], hermitian=True)
    with pytest.raises(SymmetryError):
        SymMatrix([[G(1), G(0, 1)], [G(0, 1), G(2)]], hermitian=True)
    with pytest.raises(SymmetryError):
        SymMatrix([[G(0, 1)]], hermitian=True)


def test_rational_mode_rejects_complex_entries():
    with pytest.raises(TypeError):
        Matrix([[G(0, 1)]], hermitian=False)
    with pytest.raises(TypeError):
        Matrix([[0.5]])


def test_shift_and_identity():
    assert A2.shift(1) == SymMatrix([[1, 1], [1, 1]])
    assert isinstance(A2.shift(1), SymMatrix)
    assert Matrix.identity(2) @ A2 == A2


@pytest.mark.parametrize(
    "text,value",
    [
        ("3", F(3)),
        ("-4/6", F(-2, 3)),
        ("+5", F(5)),
    ],
)
def test_parse_rational(text, value):
    assert parse_scalar(text) == value


@pytest.mark.parametrize(
    "text,value",
    [
        ("1+2i", G(1, 2)),
        ("1/2-3/4i", G(F(1, 2), F(-3, 4))),
        ("-i", G(0, -1)),
        ("i", G(0, 1)),
        ("5/3i", G(0, F(5, 3))),
        ("-2+i", G(-2, 1)),
        ("7", G(7)),
    ],
)
def test_parse_gaussian(text, value):
    assert parse_scalar(text, allow_complex=True) == value


@pytest.mark.parametrize("text", ["0.5", "1/0", "1e3", "", "1+2", "i", "2i", "1//2"])
def test_parse_rejects(text):
    with pytest.raises(ValueError):
        parse_scalar(text)


@given(st.one_of(small_rationals, gaussians))
def test_format_parse_roundtrip(x):
    assert parse_scalar(format_scalar(x), allow_complex=True) == x


# -- scalar field properties ------------------------------------------------------


@given(small_rationals, small_rationals, small_rationals)
def test_rational_field_axioms_and_canonical_form(a, b, c):
    for r in ((a + b) + c, a + (b + c), a * (b + c), a * b + a * c):
        assert canonical(r)
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c
    assert F(0) == F(0, 7) and F(0).denominator == 1


@given(gaussians, gaussians, gaussians)
def test_gaussian_field_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c
    assert (a * b) * c == a * (b * c)
    assert a.conjugate().conjugate() == a
    assert (a * b).conjugate() == a.conjugate() * b.conjugate()
    assert a.abs_sq() >= 0 and canonical(a.abs_sq())
    if a:
        q = b / a
        assert q * a == b
        assert canonical(q)


@given(st.integers(-30, 30), st.integers(-30, 30), st.integers(-30, 30), st.integers(-30, 30))
def test_gaussian_matches_python_complex_on_integers(a, b, c, d):
    # small integers are exact in binary floating point
    x, y = G(a, b), G(c, d)
    for ours, ref in [(x + y, complex(a, b) + complex(c, d)),
                      (x - y, complex(a, b) - complex(c, d)),
                      (x * y, complex(a, b) * complex(c, d))]:
        assert (float(ours.re), float(ours.im)) == (ref.real, ref.imag)


def test_gaussian_equals_real_fraction():
    assert G(3) == 3 and G(3) == F(3) and hash(G(F(1, 2))) == hash(F(1, 2))
    assert G(3, 1) != 3
    assert abs_bound(G(3, -4)) == 7 >= 5


# -- inner product / dagger properties ---------------------------------------------


@given(st.data())
def test_inner_product_symmetry(data):
    n = data.draw(st.integers(1, 5))
    v = data.draw(st.lists(small_rationals, min_size=n, max_size=n))
    w = data.draw(st.lists(small_rationals, min_size=n, max_size=n))
    assert inner_product(v, w) == inner_product(w, v)


@given(st.data())
def test_hermitian_inner_product_conjugate_symmetry_and_linearity(data):
    n = data.draw(st.integers(1, 4))
    v = data.draw(st.lists(gaussians, min_size=n, max_size=n))
    w = data.draw(st.lists(gaussians, min_size=n, max_size=n))
    c = data.draw(gaussians)
    assert inner_product(v, w) == inner_product(w, v).conjugate()
    assert inner_product(v, [c * x for x in w]) == c * inner_product(v, w)
    assert G(norm_sq(v)) == inner_product(v, v)


@given(matrix_and_vector(hermitian=True, nonzero=False))
def test_hermitian_form_is_real(Av):
    A, v = Av
    q = inner_product(v, mat_vec(A, v))
    assert q.im == 0


@given(st.lists(st.one_of(small_rationals), min_size=1, max_size=6))
def test_norm_sq_nonnegative_zero_iff_zero(v):
    assert norm_sq(v) >= 0
    assert (norm_sq(v) == 0) == (not any(v))


@settings(max_examples=300)
@given(matrix_and_vector(max_n=6, nonzero=False))
def test_dagger_squared(Av):
    assert check_dagger(*Av)


@settings(max_examples=100)
@given(matrix_and_vector(hermitian=True, max_n=4, nonzero=False))
def test_dagger_squared_hermitian(Av):
    assert check_dagger(*Av)


@given(st.lists(st.one_of(small_rationals), min_size=1, max_size=6))
def test_norm_vs_sup_norm(w):
    n = len(w)
    assert max_abs_sq(w) <= norm_sq(w) <= n * max_abs_sq(w)


@given(matrix_and_vector(max_n=6, nonzero=False))
def test_sup_norm_of_product(Av):
    A, w = Av
    assert max_abs(mat_vec(A, w)) <= A.n * max_abs(A) * max_abs(w)


@given(matrix_and_vector(hermitian=True, max_n=4, nonzero=False))
def test_sup_norm_of_product_hermitian_squared(Av):
    A, w = Av
    assert max_abs_sq(mat_vec(A, w)) <= A.n**2 * max_abs_sq(A) * max_abs_sq(w)


def test_values_are_immutable():
    with pytest.raises(AttributeError):
        G(1).re = 2
    with pytest.raises(AttributeError):
        A2.rows = ()
