from fractions import Fraction

import numpy as np
import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from gffcheck import Chart
from gffcheck.linalg import (
    char_poly_ring,
    matrix_char_poly,
    matrix_det,
    matrix_inverse,
    matrix_rank,
    rational_inertia,
    signature_at_point,
)
from conftest import sympy_matrix, to_sympy

CH = Chart(["x", "y"])
SX, SY = sympy.symbols("x y")

coef = st.integers(-3, 3)


@st.composite
def poly_matrices(draw, symmetric=False):
    n = draw(st.integers(1, 4))
    m = np.empty((n, n), dtype=object)
    x, y = CH.coordinate("x"), CH.coordinate("y")
    for i in range(n):
        for j in range(n):
            if symmetric and j < i:
                m[i, j] = m[j, i]
                continue
            m[i, j] = CH.constant(draw(coef)) + x * draw(coef) + x * y * draw(coef)
    return m


@st.composite
def rational_symmetric(draw):
    n = draw(st.integers(1, 5))
    a = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            a[i][j] = a[j][i] = Fraction(draw(st.integers(-4, 4)), draw(st.integers(1, 3)))
    return a


@settings(max_examples=40)
@given(poly_matrices())
def test_det_matches_sympy(m):
    oracle = sympy_matrix(m, CH.coords).det()
    assert sympy.expand(to_sympy(matrix_det(m), CH.coords) - oracle) == 0


@settings(max_examples=30)
@given(poly_matrices())
def test_char_poly_matches_sympy(m):
    L = sympy.Symbol("t")
    got = sympy.sympify(str(matrix_char_poly(m, name="t").as_expr()))
    M = sympy_matrix(m, CH.coords)
    oracle = (M - L * sympy.eye(M.shape[0])).det()
    assert sympy.expand(got - oracle) == 0


@settings(max_examples=30)
@given(poly_matrices())
def test_char_poly_at_zero_is_det(m):
    ring, _ = char_poly_ring(CH)
    p = matrix_char_poly(m)
    at0 = p.evaluate(ring.gens[-1], 0)
    det = matrix_det(m).reduced().num
    assert at0 == det.set_ring(at0.ring)


@settings(max_examples=30)
@given(poly_matrices())
def test_inverse(m):
    if matrix_det(m).is_zero():
        with pytest.raises(ZeroDivisionError):
            matrix_inverse(m)
        return
    prod = m.dot(matrix_inverse(m))
    n = m.shape[0]
    assert all(prod[i, j] == (1 if i == j else 0) for i in range(n) for j in range(n))


@settings(max_examples=15)
@given(poly_matrices())
def test_rank_matches_sympy(m):
    assert matrix_rank(m) == sympy_matrix(m, CH.coords).rank(simplify=True)


def _sign_changes(coeffs):
    signs = [c > 0 for c in coeffs if c != 0]
    return sum(a != b for a, b in zip(signs, signs[1:]))


@given(rational_symmetric())
def test_inertia_matches_descartes_count(a):
    # the characteristic polynomial of a symmetric matrix is real-rooted, so
    # Descartes' rule of signs counts its positive and negative roots exactly
    lam = sympy.Symbol("lam")
    p = sympy.Poly(sympy.Matrix(a).charpoly(lam).as_expr(), lam)
    mirrored = sympy.Poly(p.as_expr().subs(lam, -lam), lam)
    plus, minus, zero = rational_inertia(a)
    assert plus == _sign_changes(p.all_coeffs())
    assert minus == _sign_changes(mirrored.all_coeffs())
    assert plus + minus + zero == len(a)


@given(rational_symmetric(), st.lists(st.integers(-2, 2), min_size=25, max_size=25))
def test_inertia_is_congruence_invariant(a, entries):
    n = len(a)
    P = sympy.Matrix(n, n, lambda i, j: entries[i * 5 + j] + (3 if i == j else 0))
    if P.det() == 0:
        return
    A = sympy.Matrix(a)
    B = P.T * A * P
    b = [[Fraction(str(B[i, j])) for j in range(n)] for i in range(n)]
    assert rational_inertia(b) == rational_inertia(a)


def test_inertia_zero_diagonal():
    assert rational_inertia([[0, 1], [1, 0]]) == (1, 1, 0)
    assert rational_inertia([[0, 0], [0, 0]]) == (0, 0, 2)


def test_signature_at_point_and_singular():
    x = CH.coordinate("x")
    m = np.array([[x, CH.zero], [CH.zero, -CH.one]], dtype=object)
    assert signature_at_point(m, {"x": 2, "y": 0}) == (1, 1)
    with pytest.raises(ZeroDivisionError):
        signature_at_point(m, {"x": 0, "y": 0})


def test_asymmetric_inertia_rejected():
    with pytest.raises(ValueError):
        rational_inertia([[1, 2], [0, 1]])


@pytest.mark.parametrize("name", ["example1", "example2", "example3"])
def test_fixture_char_poly_matches_sympy(name):
    from conftest import structure

    s = structure(name)
    t = sympy.Symbol("t")
    got = sympy.sympify(str(matrix_char_poly(s.g.comps, name="t").as_expr()))
    M = sympy_matrix(s.g.comps, s.coords)
    assert sympy.expand(got - (M - t * sympy.eye(s.dim)).det()) == 0


def test_example3_char_poly_sign():
    # det(G - t I) for the 4x4 example is monic in t, so it is minus the product
    # (1/2 - t)(t^3 - t^2/2 - (2y^2+1)t + 1/2)
    from conftest import structure

    s = structure("example3")
    t, y = sympy.symbols("t y")
    got = sympy.sympify(str(matrix_char_poly(s.g.comps, name="t").as_expr()))
    product = (sympy.Rational(1, 2) - t) * (t**3 - t**2 / 2 - (2 * y**2 + 1) * t + sympy.Rational(1, 2))
    assert sympy.expand(got + product) == 0
    assert got.subs(t, 0) == sympy.Rational(-1, 4)
