"""Levi-Civita connection and the curvature quantities built on it.

Conventions:

* ``gamma[k, i, j]`` is the Christoffel symbol Gamma^k_ij.
* ``r13[l, i, j, k]`` is the l-th component of R(d_i, d_j) d_k where
  R(X,Y)Z = nabla_X nabla_Y Z - nabla_Y nabla_X Z - nabla_[X,Y] Z.
* ``r04[a, b, c, d]`` = R(d_a, d_b, d_c, d_d) = g(R(d_c, d_d) d_b, d_a).

With these conventions the sectional curvature of span{X, Y} is
R(X,Y,X,Y) / (g(X,X) g(Y,Y) - g(X,Y)^2).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Mapping, Optional, Sequence

import numpy as np

from .linalg import matrix_inverse
from .report import Verdict, zero_verdict
from .scalars import Chart, ScalarField
from .tensors import TensorField, gradient, reduce_all, zeros


class CurvatureError(ArithmeticError):
    """Internal consistency failure; indicates a bug, not bad input."""


class LinearDependenceError(ValueError):
    """Plane vectors are linearly dependent."""


class DegeneratePlaneError(ValueError):
    """The plane is degenerate: g(X,X) g(Y,Y) - g(X,Y)^2 = 0."""

    def __init__(self, message="degenerate plane: Delta = 0"):
        super().__init__(message)


class LightlikeVectorError(ValueError):
    """A vector that must be non-lightlike has g(V,V) = 0."""


class NotInDistributionError(ValueError):
    """A vector that must lie in D = Im(phi) has a kernel component."""


class ReconstructionInapplicable(ValueError):
    """The phi-sectional reconstruction cannot be applied to this plane."""


# -- connection ----------------------------------------------------------------

@dataclass(frozen=True)
class Connection:
    chart: Chart
    gamma: np.ndarray  # gamma[k, i, j]

    def nonzero_symbols(self) -> list[tuple[tuple[int, int, int], ScalarField]]:
        """((k, i, j), value) for every nonzero Gamma^k_ij, 0-based, sorted."""
        out = []
        for idx in np.ndindex(self.gamma.shape):
            f = self.gamma[idx]
            if not f.is_zero():
                out.append((tuple(int(i) for i in idx), f))
        return out

    def is_torsion_free(self) -> Verdict:
        return zero_verdict("torsion free", self.gamma - self.gamma.transpose(0, 2, 1))


def _metric_array(g) -> np.ndarray:
    return g.comps if isinstance(g, TensorField) else np.asarray(g, dtype=object)


def levi_civita(g, g_inv: Optional[np.ndarray] = None) -> Connection:
    """Christoffel symbols of the Levi-Civita connection of g."""
    G = _metric_array(g)
    chart = G.reshape(-1)[0].chart
    if g_inv is None:
        try:
            g_inv = matrix_inverse(G)
        except ZeroDivisionError:
            raise ValueError("metric is identically degenerate") from None
    dg = gradient(G)  # dg[m, i, j] = d_m g_ij
    # first kind: Gamma_{l,ij} = 1/2 (d_i g_jl + d_j g_il - d_l g_ij)
    first = dg.transpose(2, 0, 1) + dg.transpose(2, 1, 0) - dg
    half = chart.constant(Fraction(1, 2))
    gamma = np.einsum("kl,lij->kij", g_inv, first) * half
    return Connection(chart, reduce_all(gamma))


def nabla(conn: Connection, X, Y) -> np.ndarray:
    """Components of nabla_X Y for vector fields given as component arrays."""
    X = np.asarray(X, dtype=object)
    Y = np.asarray(Y, dtype=object)
    dY = gradient(Y)  # dY[i, k] = d_i Y^k
    inner = dY + np.einsum("kil,l->ik", conn.gamma, Y)
    return X.dot(inner)


def covariant_derivative(T: TensorField, conn: Connection) -> TensorField:
    """nabla T with the derivative index as the first covariant slot.

    (1,0):  out[k, i]       = d_i V^k + Gamma^k_il V^l
    (0,1):  out[i, j]       = d_i w_j - Gamma^l_ij w_l
    (1,1):  out[k, i, j]    = d_i T^k_j + Gamma^k_il T^l_j - Gamma^l_ij T^k_l
    (0,2):  out[i, j, k]    = d_i T_jk - Gamma^l_ij T_lk - Gamma^l_ik T_jl
    """
    G = conn.gamma
    d = gradient(T.comps)
    chart = T.chart
    if T.valence == (1, 0):
        out = d.T + np.einsum("kil,l->ki", G, T.comps)
        return TensorField(chart, 1, 1, out)
    if T.valence == (0, 1):
        out = d - np.einsum("lij,l->ij", G, T.comps)
        return TensorField(chart, 0, 2, out)
    if T.valence == (1, 1):
        out = (
            d.transpose(1, 0, 2)
            + np.einsum("kil,lj->kij", G, T.comps)
            - np.einsum("lij,kl->kij", G, T.comps)
        )
        return TensorField(chart, 1, 2, out)
    if T.valence == (0, 2):
        out = d - np.einsum("lij,lk->ijk", G, T.comps) - np.einsum("lik,jl->ijk", G, T.comps)
        return TensorField(chart, 0, 3, out)
    raise ValueError(f"covariant derivative of valence {T.valence} is not supported")


def metric_compatibility(conn: Connection, g) -> Verdict:
    G = _metric_array(g)
    ng = covariant_derivative(TensorField(conn.chart, 0, 2, G), conn)
    return zero_verdict("nabla g = 0", ng.comps)


# -- curvature ---------------------------------------------------------------

def _key(point: Mapping) -> tuple:
    return tuple(sorted((k, Fraction(v)) for k, v in point.items()))


def eval_array(arr, point) -> np.ndarray:
    arr = np.asarray(arr, dtype=object)
    out = np.empty(arr.shape, dtype=object)
    src, dst = arr.reshape(-1), out.reshape(-1)
    for i, f in enumerate(src):
        dst[i] = f.evaluate(point)
    return out


class CurvatureTensor:
    """Riemann tensor in both valences, with per-point numeric caches."""

    def __init__(self, chart: Chart, r13: np.ndarray, r04: np.ndarray):
        self.chart = chart
        self.r13 = r13
        self.r04 = r04
        self._cache: dict = {}

    def at(self, point) -> np.ndarray:
        """r04 evaluated at a rational point."""
        key = _key(point)
        if key not in self._cache:
            self._cache[key] = eval_array(self.r04, point)
        return self._cache[key]

    def symmetry_verdicts(self) -> list[Verdict]:
        r = self.r04
        bianchi = r + r.transpose(0, 2, 3, 1) + r.transpose(0, 3, 1, 2)
        return [
            zero_verdict("R antisymmetric in slots 1,2", r + r.transpose(1, 0, 2, 3)),
            zero_verdict("R antisymmetric in slots 3,4", r + r.transpose(0, 1, 3, 2)),
            zero_verdict("R pair symmetry", r - r.transpose(2, 3, 0, 1)),
            zero_verdict("R first Bianchi identity", bianchi),
        ]

    def is_zero(self) -> bool:
        return all(f.is_zero() for f in self.r04.reshape(-1))


def riemann_tensor(conn: Connection, g, check: bool = True) -> CurvatureTensor:
    G = _metric_array(g)
    gam = conn.gamma
    dgam = gradient(gam)  # dgam[m, l, j, k] = d_m Gamma^l_jk
    quad = np.einsum("lim,mjk->lijk", gam, gam)
    r13 = dgam.transpose(1, 0, 2, 3) - dgam.transpose(1, 2, 0, 3) + quad - quad.transpose(0, 2, 1, 3)
    r13 = reduce_all(r13)
    # r04[a, b, c, d] = g_al r13[l, c, d, b]
    r04 = reduce_all(np.einsum("al,lcdb->abcd", G, r13))
    R = CurvatureTensor(conn.chart, r13, r04)
    if check:
        for v in R.symmetry_verdicts():
            if not v.holds:
                raise CurvatureError(f"curvature self-check failed: {v.name} {v.witness}")
    return R


# -- vectors and planes at a point ------------------------------------------

def as_vector(v) -> np.ndarray:
    return np.array([Fraction(x) for x in v], dtype=object)


def form(A: np.ndarray, *vs) -> Fraction:
    """Contract a numeric multilinear array with vectors, slot by slot."""
    out = A
    for v in vs:
        out = np.tensordot(out, v, axes=([0], [0]))
    return out if not isinstance(out, np.ndarray) else out[()]


@dataclass(frozen=True)
class PlaneSpec:
    point: dict
    X: tuple
    Y: tuple


def _independent(X, Y) -> bool:
    n = len(X)
    return any(X[i] * Y[j] - X[j] * Y[i] != 0 for i in range(n) for j in range(i + 1, n))


def plane_delta(g_p: np.ndarray, X, Y) -> Fraction:
    return form(g_p, X, X) * form(g_p, Y, Y) - form(g_p, X, Y) ** 2


def sectional_curvature(R: CurvatureTensor, g, plane: PlaneSpec) -> Fraction:
    """K = R(X,Y,X,Y) / Delta at the plane's point."""
    X, Y = as_vector(plane.X), as_vector(plane.Y)
    if not _independent(X, Y):
        raise LinearDependenceError("plane vectors are linearly dependent")
    g_p = eval_array(_metric_array(g), plane.point)
    delta = plane_delta(g_p, X, Y)
    if delta == 0:
        raise DegeneratePlaneError()
    return form(R.at(plane.point), X, Y, X, Y) / delta


def _structure_at(s, point):
    key = ("structure",) + _key(point)
    cache = s.__dict__.setdefault("_point_cache", {})
    if key not in cache:
        cache[key] = {
            "g": eval_array(s.g.comps, point),
            "phi": eval_array(s.phi.comps, point),
            "eta": eval_array(s.eta_arr, point),
            "eta_bar": eval_array(s.eta_bar, point),
            "xi": eval_array(s.xi_arr, point),
        }
    return cache[key]


def phi_sectional_curvature(s, R: CurvatureTensor, point, X) -> Fraction:
    """H(X) = R(X, phiX, X, phiX) / g(X,X)^2 for non-lightlike X in D."""
    X = as_vector(X)
    at = _structure_at(s, point)
    if any(v != 0 for v in at["eta"].dot(X)):
        raise NotInDistributionError("vector is not in D = Im(phi)")
    gxx = form(at["g"], X, X)
    if gxx == 0:
        raise LightlikeVectorError("vector is lightlike")
    phiX = at["phi"].dot(X)
    return form(R.at(point), X, phiX, X, phiX) / gxx**2


def phi_sectional_field(s, R: CurvatureTensor, E) -> ScalarField:
    """H(E) as a scalar field for a vector field E in D (symbolic)."""
    E = np.asarray(E, dtype=object)
    phiE = s.phi.comps.dot(E)
    num = np.tensordot(np.tensordot(np.tensordot(np.tensordot(R.r04, E, ([0], [0])), phiE, ([0], [0])), E, ([0], [0])), phiE, ([0], [0]))
    num = num[()] if isinstance(num, np.ndarray) else num
    gee = E.dot(s.g.comps).dot(E)
    if gee.is_zero():
        raise LightlikeVectorError("vector field has identically zero norm")
    return (num / (gee * gee)).reduced()


# -- P, Q, B, D ---------------------------------------------------------------

@dataclass
class AuxTensors:
    P: np.ndarray  # P[x, y, z, w] = P(X,Y;Z,W)
    Q: np.ndarray
    epsilon_bar: int


def p_tensor(s) -> np.ndarray:
    g, Phi = s.g.comps, s.Phi_arr
    t = np.einsum("ac,bd->abcd", Phi, g) - np.einsum("ad,bc->abcd", Phi, g)
    return t - np.einsum("bc,ad->abcd", Phi, g) + np.einsum("bd,ac->abcd", Phi, g)


def q_tensor(s) -> np.ndarray:
    g, phi, Phi = s.g.comps, s.phi.comps, s.Phi_arr
    eps = s.epsilon_sum
    pg = phi.T.dot(g).dot(phi)
    eb = s.eta_bar
    A = (g - pg) * eps - np.outer(eb, eb)  # A[x, z] = eps (g(X,Z) - g(phiX,phiZ)) - eta(X) eta(Z)
    # g(W, phi Y) = Phi[w, y]
    return (
        np.einsum("wy,xz->xyzw", Phi, A)
        - np.einsum("wx,yz->xyzw", Phi, A)
        - np.einsum("zy,xw->xyzw", Phi, A)
        + np.einsum("zx,yw->xyzw", Phi, A)
    )


def aux_tensors(s, R: CurvatureTensor | None = None) -> AuxTensors:
    return AuxTensors(reduce_all(p_tensor(s)), reduce_all(q_tensor(s)), s.epsilon_sum)


def master_identity_sides(s, R: CurvatureTensor, aux: AuxTensors):
    """(lhs, rhs) of g(R(X,Y)phiZ, W) + g(R(X,Y)Z, phiW) = -eps P - Q, as arrays [x,y,z,w]."""
    phi, r = s.phi.comps, R.r04
    lhs = np.einsum("wmxy,mz->xyzw", r, phi) + np.einsum("mw,mzxy->xyzw", phi, r)
    rhs = -aux.P * aux.epsilon_bar - aux.Q
    return lhs, rhs


def b_value(s, R: CurvatureTensor, point, X, Y) -> Fraction:
    """B(X,Y) = g(R(X,Y)X, Y) = -R(X,Y,X,Y)."""
    X, Y = as_vector(X), as_vector(Y)
    return -form(R.at(point), X, Y, X, Y)


def d_value(s, R: CurvatureTensor, point, X) -> Fraction:
    """D(X) = B(X, phiX)."""
    X = as_vector(X)
    phiX = _structure_at(s, point)["phi"].dot(X)
    return b_value(s, R, point, X, phiX)


def p_value(s, point, X, Y, Z, W) -> Fraction:
    at = _structure_at(s, point)
    g, phi = at["g"], at["phi"]
    Phi = g.dot(phi)
    X, Y, Z, W = map(as_vector, (X, Y, Z, W))
    return (
        form(Phi, X, Z) * form(g, Y, W)
        - form(Phi, X, W) * form(g, Y, Z)
        - form(Phi, Y, Z) * form(g, X, W)
        + form(Phi, Y, W) * form(g, X, Z)
    )


def b_from_d(s, R: CurvatureTensor, point, X, Y) -> Fraction:
    """The 1/32 combination of D values plus the 24 eps P term."""
    X, Y = as_vector(X), as_vector(Y)
    phi = _structure_at(s, point)["phi"]
    phiY = phi.dot(Y)
    D = lambda v: d_value(s, R, point, v)  # noqa: E731
    total = (
        3 * D(X + phiY) + 3 * D(X - phiY) - D(X + Y) - D(X - Y) - 4 * D(X) - 4 * D(Y)
        + 24 * s.epsilon_sum * p_value(s, point, X, Y, X, phiY)
    )
    return total / 32


# -- reconstruction from phi-sectional curvatures ----------------------------

def _rational_sqrt(q: Fraction) -> Optional[Fraction]:
    if q < 0:
        return None
    n, d = q.numerator, q.denominator
    rn, rd = isqrt(n), isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


def unitize(g_p: np.ndarray, X) -> tuple[np.ndarray, int]:
    """Scale X to g(X,X) = +-1 with a rational factor, or raise."""
    X = as_vector(X)
    n2 = form(g_p, X, X)
    if n2 == 0:
        raise ReconstructionInapplicable("vector in D is lightlike")
    root = _rational_sqrt(abs(n2))
    if root is None:
        raise ReconstructionInapplicable(f"|g(X,X)| = {n2} is not a rational square; no exact unit vector")
    return X / root, (1 if n2 > 0 else -1)


# Sign of the 24 eps term in the unit-vector formula for planes in D.
# It follows from the B expression (which carries +24 eps P) and K = -B/Delta.
P_TERM_SIGN = -1


def sectional_from_phi_unit(s, R: CurvatureTensor, point, X, Y, p_term_sign: int = P_TERM_SIGN) -> Fraction:
    """Sectional curvature of span{X,Y} in D from phi-sectional curvatures.

    X and Y must be unit vectors of D at the point.  Every H argument must
    be non-lightlike; otherwise ReconstructionInapplicable is raised.
    """
    at = _structure_at(s, point)
    g, phi = at["g"], at["phi"]
    X, Y = as_vector(X), as_vector(Y)
    eX, eY = form(g, X, X), form(g, Y, Y)
    if abs(eX) != 1 or abs(eY) != 1:
        raise ValueError("the unit-vector formula needs g(X,X) and g(Y,Y) equal to +-1")
    gxy = form(g, X, Y)
    denom = eX * eY - gxy**2
    if denom == 0:
        raise DegeneratePlaneError()
    phiY = phi.dot(Y)
    gxphiy = form(g, X, phiY)

    def H(v):
        try:
            return phi_sectional_curvature(s, R, point, v)
        except LightlikeVectorError:
            raise ReconstructionInapplicable("an intermediate vector is lightlike") from None

    eps = s.epsilon_sum
    total = (
        3 * (eX + eY + 2 * gxphiy) ** 2 * H(X + phiY)
        + 3 * (eX + eY - 2 * gxphiy) ** 2 * H(X - phiY)
        - (eX + eY + 2 * gxy) ** 2 * H(X + Y)
        - (eX + eY - 2 * gxy) ** 2 * H(X - Y)
        - 4 * H(X)
        - 4 * H(Y)
        + p_term_sign * 24 * eps * (gxphiy**2 + gxy**2 - eX * eY)
    )
    return total / (32 * denom)


def sectional_from_phi(s, R: CurvatureTensor, plane: PlaneSpec, p_term_sign: int = P_TERM_SIGN) -> Fraction:
    """Sectional curvature of any non-degenerate plane from phi-sectional data.

    Split X = X' + x^a xi_a and Y = Y' + y^a xi_a with X', Y' in D.  The D
    part is handled by the unit-vector formula (after exact unitization) and
    the kernel parts by
    R(X,Y,X,Y) = R(X',Y',X',Y') + s_x^2 g(Y',Y') + s_y^2 g(X',X') - 2 s_x s_y g(X',Y'),
    where s_v = sum_a eps_a v^a.  For orthonormal X, Y this is the general
    plane expression built on the decomposition X = aZ + eta^a(X) xi_a.
    """
    point = plane.point
    X, Y = as_vector(plane.X), as_vector(plane.Y)
    if not _independent(X, Y):
        raise LinearDependenceError("plane vectors are linearly dependent")
    at = _structure_at(s, point)
    g, phi = at["g"], at["phi"]
    delta = plane_delta(g, X, Y)
    if delta == 0:
        raise DegeneratePlaneError()
    proj = -phi.dot(phi)
    Xd, Yd = proj.dot(X), proj.dot(Y)
    eps = np.array(s.epsilon, dtype=object)
    sx = eps.dot(at["eta"].dot(X)) if s.r else Fraction(0)
    sy = eps.dot(at["eta"].dot(Y)) if s.r else Fraction(0)
    if _independent(Xd, Yd):
        delta_d = plane_delta(g, Xd, Yd)
        if delta_d == 0:
            raise ReconstructionInapplicable("the D-projection of the plane is degenerate")
        Xu, _ = unitize(g, Xd)
        Yu, _ = unitize(g, Yd)
        k_d = sectional_from_phi_unit(s, R, point, Xu, Yu, p_term_sign)
        r_d = k_d * delta_d
    else:
        r_d = Fraction(0)
    r_xyxy = r_d + sx**2 * form(g, Yd, Yd) + sy**2 * form(g, Xd, Xd) - 2 * sx * sy * form(g, Xd, Yd)
    return r_xyxy / delta


# -- space forms -------------------------------------------------------------

def space_form_tensor(s, c) -> np.ndarray:
    """The (0,4) tensor S(c) of an S-space form with phi-sectional curvature c."""
    chart = s.chart
    c = chart.field(c)
    eps = s.epsilon_sum
    g, phi, Phi = s.g.comps, s.phi.comps, s.Phi_arr
    pg = phi.T.dot(g).dot(phi)
    eb = s.eta_bar
    quarter = chart.constant(Fraction(1, 4))
    t1 = np.einsum("yz,xw->xyzw", pg, pg) - np.einsum("xz,yw->xyzw", pg, pg)
    t2 = (
        np.einsum("wx,zy->xyzw", Phi, Phi)
        - np.einsum("zx,wy->xyzw", Phi, Phi)
        + 2 * np.einsum("xy,wz->xyzw", Phi, Phi)
    )
    t3 = (
        np.einsum("w,x,zy->xyzw", eb, eb, pg)
        - np.einsum("w,y,zx->xyzw", eb, eb, pg)
        + np.einsum("y,z,wx->xyzw", eb, eb, pg)
        - np.einsum("z,x,wy->xyzw", eb, eb, pg)
    )
    a = -(c + 3 * eps) * quarter
    b = -(c - eps) * quarter
    return reduce_all(t1 * a + t2 * b - t3)


def space_form_tensor_special(s, c) -> np.ndarray:
    """S(c) written out for the case sum eps_a = 0 (no eps terms at all)."""
    chart = s.chart
    c = chart.field(c)
    g, phi, Phi = s.g.comps, s.phi.comps, s.Phi_arr
    pg = phi.T.dot(g).dot(phi)
    eb = s.eta_bar
    inner = (
        np.einsum("yz,xw->xyzw", pg, pg)
        - np.einsum("xz,yw->xyzw", pg, pg)
        + np.einsum("wx,zy->xyzw", Phi, Phi)
        - np.einsum("zx,wy->xyzw", Phi, Phi)
        + 2 * np.einsum("xy,wz->xyzw", Phi, Phi)
    )
    t3 = (
        np.einsum("w,x,zy->xyzw", eb, eb, pg)
        - np.einsum("w,y,zx->xyzw", eb, eb, pg)
        + np.einsum("y,z,wx->xyzw", eb, eb, pg)
        - np.einsum("z,x,wy->xyzw", eb, eb, pg)
    )
    return reduce_all(inner * (-c * chart.constant(Fraction(1, 4))) - t3)


def frame_candidates(s) -> list[np.ndarray]:
    """Projected coordinate frame fields -phi^2 d_i, in coordinate order."""
    P = s.projector
    return [P[:, i] for i in range(s.dim)]


def detect_space_form(s, R: CurvatureTensor) -> Optional[Fraction]:
    """Return c if R = S(c) with constant phi-sectional curvature c, else None."""
    for E in frame_candidates(s):
        gee = E.dot(s.g.comps).dot(E)
        if gee.is_zero():
            continue
        H = phi_sectional_field(s, R, E)
        if not H.is_constant():
            return None
        c = H.constant_value()
        residual = R.r04 - space_form_tensor(s, c)
        if all(f.is_zero() for f in residual.reshape(-1)):
            return c
        return None
    raise ValueError("no non-lightlike frame candidate in D")
