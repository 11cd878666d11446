import itertools

import numpy as np
import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from gffcheck import Chart
from gffcheck.tensors import (
    PForm,
    TensorField,
    VectorField,
    apply_11,
    exterior_derivative,
    lie_bracket,
    lie_derivative,
    n2_from_d,
    n2_from_lie,
    nijenhuis_torsion,
)
from conftest import structure, to_sympy

CH = Chart(["x", "y", "z"])
SYMS = sympy.symbols("x y z")


@st.composite
def fields(draw):
    """Small random polynomial: constant + linear + one quadratic monomial."""
    f = CH.constant(draw(st.integers(-2, 2)))
    for name in CH.coords:
        f = f + CH.coordinate(name) * draw(st.integers(-2, 2))
    a, b = draw(st.sampled_from(CH.coords)), draw(st.sampled_from(CH.coords))
    return f + CH.coordinate(a) * CH.coordinate(b) * draw(st.integers(-1, 1))


vectors = st.lists(fields(), min_size=3, max_size=3).map(lambda c: VectorField(CH, c))
covectors = st.lists(fields(), min_size=3, max_size=3).map(lambda c: PForm.from_covector(CH, c))
endos = st.lists(fields(), min_size=9, max_size=9).map(
    lambda c: TensorField(CH, 1, 1, np.array(c, dtype=object).reshape(3, 3))
)


def pair(eta: PForm, X: VectorField):
    return sum((eta.component((i,)) * X.comps[i] for i in range(3)), CH.zero)


def sym_vec(X):
    return [to_sympy(c, CH.coords) for c in X.comps]


@settings(max_examples=25)
@given(vectors, vectors)
def test_bracket_matches_sympy(X, Y):
    xs, ys = sym_vec(X), sym_vec(Y)
    oracle = [
        sum(xs[i] * sympy.diff(ys[k], SYMS[i]) - ys[i] * sympy.diff(xs[k], SYMS[i]) for i in range(3)) for k in range(3)
    ]
    got = sym_vec(lie_bracket(X, Y))
    assert all(sympy.expand(a - b) == 0 for a, b in zip(got, oracle))


@settings(max_examples=25)
@given(vectors, vectors, vectors)
def test_jacobi(X, Y, Z):
    total = (
        lie_bracket(X, lie_bracket(Y, Z)) + lie_bracket(Y, lie_bracket(Z, X)) + lie_bracket(Z, lie_bracket(X, Y))
    )
    assert total.is_zero()
    assert (lie_bracket(X, Y) + lie_bracket(Y, X)).is_zero()


@given(covectors)
def test_d_squared_is_zero(eta):
    assert exterior_derivative(exterior_derivative(eta)).is_zero()


@given(fields())
def test_d_of_function_is_gradient(f):
    df = exterior_derivative(PForm.from_function(f))
    assert all(df.component((i,)) == f.diff(i) for i in range(3))


@settings(max_examples=40)
@given(covectors, vectors, vectors)
def test_half_normalized_convention_lock(eta, X, Y):
    # 2 d eta(X,Y) = X(eta(Y)) - Y(eta(X)) - eta([X,Y]); the factor 2 is deliberate
    de = exterior_derivative(eta).to_tensor().comps
    lhs = 2 * X.comps.dot(de).dot(Y.comps)
    rhs = X.derivative_of(pair(eta, Y)) - Y.derivative_of(pair(eta, X)) - pair(eta, lie_bracket(X, Y))
    assert lhs == rhs


def test_convention_lock_on_a_contact_form():
    # eta = dz - y dx has d eta = 1/2 dx ^ dy in the half-normalized convention
    x, y = CH.coordinate("x"), CH.coordinate("y")
    eta = PForm.from_covector(CH, [-y, CH.zero, CH.one])
    de = exterior_derivative(eta)
    assert de.component((0, 1)) == CH.constant(1) / 2
    assert de.component((1, 0)) == -CH.constant(1) / 2


@settings(max_examples=25)
@given(covectors, vectors, vectors)
def test_cartan_formula_for_one_forms(eta, X, Y):
    # (L_X eta)(Y) = 2 d eta(X,Y) + Y(eta(X))
    L = lie_derivative(eta.to_tensor(), X).comps
    de = exterior_derivative(eta).to_tensor().comps
    assert L.dot(Y.comps) == 2 * X.comps.dot(de).dot(Y.comps) + Y.derivative_of(pair(eta, X))


@settings(max_examples=20)
@given(endos, vectors, vectors)
def test_lie_derivative_of_endomorphism(phi, X, Y):
    lhs = apply_11(lie_derivative(phi, X), Y)
    rhs = lie_bracket(X, apply_11(phi, Y)) - apply_11(phi, lie_bracket(X, Y))
    assert (lhs - rhs).is_zero()


@settings(max_examples=15)
@given(fields(), fields(), vectors)
def test_lie_derivative_of_metric_by_definition(a, b, X):
    g = np.array([[a, b, CH.zero], [b, CH.one, CH.zero], [CH.zero, CH.zero, a]], dtype=object)
    L = lie_derivative(TensorField(CH, 0, 2, g), X).comps
    basis = [VectorField.coordinate(CH, i) for i in range(3)]
    for i, j in itertools.product(range(3), repeat=2):
        Ei, Ej = basis[i], basis[j]
        expect = (
            X.derivative_of(g[i, j])
            - lie_bracket(X, Ei).comps.dot(g).dot(Ej.comps)
            - Ei.comps.dot(g).dot(lie_bracket(X, Ej).comps)
        )
        assert L[i, j] == expect


@settings(max_examples=15)
@given(endos, vectors, vectors)
def test_nijenhuis_by_definition(phi, X, Y):
    N = nijenhuis_torsion(phi).comps
    P = lambda V: apply_11(phi, V)  # noqa: E731
    expect = (
        P(P(lie_bracket(X, Y))) + lie_bracket(P(X), P(Y)) - P(lie_bracket(P(X), Y)) - P(lie_bracket(X, P(Y)))
    )
    # N is tensorial, so evaluate on coordinate fields and extend linearly
    got = np.einsum("kij,i,j->k", N, X.comps, Y.comps)
    assert (VectorField(CH, got) - expect).is_zero()
    assert all((N[:, i, j] + N[:, j, i] == 0).all() for i in range(3) for j in range(3))


@settings(max_examples=10)
@given(endos, covectors)
def test_n2_definitions_differ_by_d_of_eta_phi(phi, eta):
    # Cartan: the two N2 expressions differ by d_j(eta(phi d_i)) - d_i(eta(phi d_j)),
    # which vanishes exactly when eta o phi = 0, as on any f-structure
    eta_phi = [pair(eta, VectorField(CH, phi.comps[:, i])) for i in range(3)]
    diff = (n2_from_lie(phi, eta) - n2_from_d(phi, eta)).comps
    assert all(diff[i, j] == eta_phi[i].diff(j) - eta_phi[j].diff(i) for i in range(3) for j in range(3))


def test_pform_sign_rules():
    f = CH.coordinate("x")
    w = PForm(CH, 2, {(0, 2): f})
    assert w.component((2, 0)) == -f
    assert w.component((1, 1)) == CH.zero
    with pytest.raises(ValueError):
        PForm(CH, 2, {(2, 0): f})


@pytest.mark.parametrize("name", ["example1", "example3"])
def test_fixture_normality_and_contact(name):
    s = structure(name)
    assert s.normality.is_zero()
    Phi = PForm.from_tensor(TensorField(s.chart, 0, 2, s.Phi_arr))
    assert all(de == Phi for de in s.d_eta)
