"""Coordinate tensor calculus over a single chart.

Components are numpy object arrays of :class:`ScalarField`, contravariant
indices first.  So a (1,1) tensor ``phi`` has ``phi[i, j]`` = i-th
component of phi(d_j), and a (1,2) tensor ``N`` has ``N[k, i, j]``.

Exterior derivatives use the half-normalized convention, in which
``d eta(X, Y) = 1/2 (X eta(Y) - Y eta(X) - eta([X, Y]))`` and in general the
alternating sum carries a factor ``1/(p+1)``.
"""

from __future__ import annotations

import itertools
from typing import Iterable, Sequence

import numpy as np

from .scalars import Chart, ScalarField


def zeros(chart: Chart, shape) -> np.ndarray:
    out = np.empty(shape, dtype=object)
    out.fill(chart.zero)
    return out


def as_array(chart: Chart, data) -> np.ndarray:
    """Object array of fields from nested sequences of ints/Fractions/fields."""
    arr = np.array(data, dtype=object)
    flat = arr.reshape(-1)
    for i, v in enumerate(flat):
        flat[i] = chart.field(v)
    return arr


def partial(arr: np.ndarray, k: int) -> np.ndarray:
    """Componentwise partial derivative along the k-th coordinate."""
    out = np.empty(arr.shape, dtype=object)
    src, dst = arr.reshape(-1), out.reshape(-1)
    for i, f in enumerate(src):
        dst[i] = f.diff(k)
    return out


def gradient(arr: np.ndarray) -> np.ndarray:
    """Array with one extra leading index: ``out[k, ...] = d_k arr[...]``."""
    chart = _chart(arr)
    return np.stack([partial(arr, k) for k in range(chart.dim)])


def reduce_all(arr: np.ndarray) -> np.ndarray:
    out = np.empty(arr.shape, dtype=object)
    src, dst = arr.reshape(-1), out.reshape(-1)
    for i, f in enumerate(src):
        dst[i] = f.reduced()
    return out


def _chart(arr) -> Chart:
    return np.asarray(arr, dtype=object).reshape(-1)[0].chart


def is_zero_array(arr) -> bool:
    return all(f.is_zero() for f in np.asarray(arr, dtype=object).reshape(-1))


def first_nonzero(arr):
    """(index tuple, reduced value) of the first nonzero component, or None."""
    arr = np.asarray(arr, dtype=object)
    for idx in np.ndindex(arr.shape):
        if not arr[idx].is_zero():
            return tuple(int(i) for i in idx), arr[idx].reduced()
    return None


def arrays_equal(a, b) -> bool:
    a = np.asarray(a, dtype=object)
    b = np.asarray(b, dtype=object)
    if a.shape != b.shape:
        return False
    return all(x == y for x, y in zip(a.reshape(-1), b.reshape(-1)))


class TensorField:
    """Dense tensor field of valence (p, q) on a chart."""

    __slots__ = ("chart", "p", "q", "comps")

    def __init__(self, chart: Chart, p: int, q: int, comps):
        comps = comps if isinstance(comps, np.ndarray) and comps.dtype == object else as_array(chart, comps)
        if comps.shape != (chart.dim,) * (p + q):
            raise ValueError(f"components have shape {comps.shape}, expected {(chart.dim,) * (p + q)}")
        self.chart, self.p, self.q, self.comps = chart, p, q, comps

    @property
    def valence(self) -> tuple[int, int]:
        return self.p, self.q

    def __getitem__(self, idx):
        return self.comps[idx]

    def __add__(self, other: "TensorField"):
        self._same(other)
        return TensorField(self.chart, self.p, self.q, self.comps + other.comps)

    def __sub__(self, other: "TensorField"):
        self._same(other)
        return TensorField(self.chart, self.p, self.q, self.comps - other.comps)

    def __neg__(self):
        return TensorField(self.chart, self.p, self.q, -self.comps)

    def scale(self, c) -> "TensorField":
        c = self.chart.field(c)
        return TensorField(self.chart, self.p, self.q, self.comps * c)

    def _same(self, other):
        if self.valence != other.valence or self.chart != other.chart:
            raise ValueError("tensor valences or charts differ")

    def is_zero(self) -> bool:
        return is_zero_array(self.comps)

    def __eq__(self, other):
        if not isinstance(other, TensorField):
            return NotImplemented
        return self.valence == other.valence and arrays_equal(self.comps, other.comps)

    __hash__ = None

    def __repr__(self):
        return f"TensorField({self.p},{self.q}) on {self.chart}"


class VectorField(TensorField):
    """A (1,0) tensor field; components in the coordinate frame."""

    __slots__ = ()

    def __init__(self, chart: Chart, comps):
        super().__init__(chart, 1, 0, comps)

    @classmethod
    def coordinate(cls, chart: Chart, i: int) -> "VectorField":
        return cls(chart, [1 if k == i else 0 for k in range(chart.dim)])

    def __add__(self, other):
        return VectorField(self.chart, self.comps + other.comps)

    def __sub__(self, other):
        return VectorField(self.chart, self.comps - other.comps)

    def __neg__(self):
        return VectorField(self.chart, -self.comps)

    def scale(self, c) -> "VectorField":
        return VectorField(self.chart, self.comps * self.chart.field(c))

    def derivative_of(self, f: ScalarField) -> ScalarField:
        """Directional derivative X(f)."""
        total = self.chart.zero
        for k, xk in enumerate(self.comps):
            if not xk.is_zero():
                total = total + xk * f.diff(k)
        return total


class PForm:
    """Differential p-form, stored on strictly increasing index tuples."""

    __slots__ = ("chart", "degree", "comps")

    def __init__(self, chart: Chart, degree: int, comps: dict | None = None):
        if not 0 <= degree <= chart.dim:
            raise ValueError(f"degree {degree} out of range for dim {chart.dim}")
        self.chart, self.degree = chart, degree
        self.comps = {}
        for idx, f in (comps or {}).items():
            idx = tuple(idx)
            if len(idx) != degree or any(a >= b for a, b in zip(idx, idx[1:])):
                raise ValueError(f"form index {idx} is not strictly increasing of length {degree}")
            f = chart.field(f)
            if not f.is_zero():
                self.comps[idx] = f

    @classmethod
    def from_covector(cls, chart: Chart, comps: Sequence) -> "PForm":
        return cls(chart, 1, {(i,): c for i, c in enumerate(comps)})

    @classmethod
    def from_function(cls, f: ScalarField) -> "PForm":
        return cls(f.chart, 0, {(): f})

    @classmethod
    def from_tensor(cls, t: TensorField) -> "PForm":
        """Take the increasing-index components of a (0,p) tensor (antisymmetry assumed)."""
        if t.p:
            raise ValueError("forms are covariant")
        idxs = itertools.combinations(range(t.chart.dim), t.q)
        return cls(t.chart, t.q, {i: t.comps[i] for i in idxs})

    def component(self, idx: Iterable[int]) -> ScalarField:
        """Component at an arbitrary index tuple, with the sign of the sorting permutation."""
        idx = tuple(idx)
        if len(set(idx)) < len(idx):
            return self.chart.zero
        order = sorted(range(len(idx)), key=lambda k: idx[k])
        sign = _perm_sign(order)
        f = self.comps.get(tuple(sorted(idx)), self.chart.zero)
        return f if sign > 0 else -f

    def to_tensor(self) -> TensorField:
        arr = zeros(self.chart, (self.chart.dim,) * self.degree)
        for idx, f in self.comps.items():
            for perm in itertools.permutations(range(self.degree)):
                sign = _perm_sign(list(perm))
                arr[tuple(idx[k] for k in perm)] = f if sign > 0 else -f
        if self.degree == 0:
            arr = np.array(self.comps.get((), self.chart.zero), dtype=object)
        return TensorField(self.chart, 0, self.degree, arr)

    def __sub__(self, other: "PForm") -> "PForm":
        if other.degree != self.degree:
            raise ValueError("degrees differ")
        keys = set(self.comps) | set(other.comps)
        z = self.chart.zero
        return PForm(self.chart, self.degree, {k: self.comps.get(k, z) - other.comps.get(k, z) for k in keys})

    def is_zero(self) -> bool:
        return all(f.is_zero() for f in self.comps.values())

    def first_nonzero(self):
        for idx in sorted(self.comps):
            f = self.comps[idx]
            if not f.is_zero():
                return idx, f.reduced()
        return None

    def __eq__(self, other):
        if not isinstance(other, PForm):
            return NotImplemented
        return self.degree == other.degree and (self - other).is_zero()

    __hash__ = None

    def __repr__(self):
        return f"PForm(degree={self.degree}, {len(self.comps)} nonzero components)"


def _perm_sign(order: Sequence[int]) -> int:
    order = list(order)
    sign = 1
    for i in range(len(order)):
        while order[i] != i:
            j = order[i]
            order[i], order[j] = order[j], order[i]
            sign = -sign
    return sign


# -- operations ------------------------------------------------------------

def lie_bracket(X: VectorField, Y: VectorField) -> VectorField:
    """[X, Y]^k = X^i d_i Y^k - Y^i d_i X^k."""
    if X.chart != Y.chart:
        raise ValueError("vector fields live on different charts")
    comps = [X.derivative_of(Y.comps[k]) - Y.derivative_of(X.comps[k]) for k in range(X.chart.dim)]
    return VectorField(X.chart, comps)


def exterior_derivative(omega: PForm) -> PForm:
    """Half-normalized exterior derivative: carries the factor 1/(p+1)."""
    p, chart = omega.degree, omega.chart
    if p >= chart.dim:
        raise ValueError("degree must be smaller than the dimension")
    factor = chart.constant(1) / (p + 1)
    out = {}
    for idx in itertools.combinations(range(chart.dim), p + 1):
        total = chart.zero
        for k, ik in enumerate(idx):
            rest = idx[:k] + idx[k + 1:]
            f = omega.comps.get(rest)
            if f is None:
                continue
            term = f.diff(ik)
            total = total + term if k % 2 == 0 else total - term
        if not total.is_zero():
            out[idx] = total * factor
    return PForm(chart, p + 1, out)


def apply_11(phi: TensorField | np.ndarray, X: VectorField) -> VectorField:
    """phi(X) for a (1,1) tensor."""
    comps = phi.comps if isinstance(phi, TensorField) else phi
    return VectorField(X.chart, comps.dot(X.comps))


def lie_derivative(T, X: VectorField):
    """Lie derivative along X of a vector field, a (0,q) tensor, a (1,1) tensor or a form."""
    if isinstance(T, PForm):
        return PForm.from_tensor(lie_derivative(T.to_tensor(), X))
    if isinstance(T, VectorField) or (isinstance(T, TensorField) and T.valence == (1, 0)):
        return lie_bracket(X, T if isinstance(T, VectorField) else VectorField(T.chart, T.comps))
    if not isinstance(T, TensorField):
        raise TypeError("expected a TensorField, VectorField or PForm")
    chart, n = T.chart, T.chart.dim
    dX = gradient(X.comps)  # dX[i, k] = d_i X^k
    # directional derivative term X^k d_k T
    out = zeros(chart, T.comps.shape)
    for k in range(n):
        if not X.comps[k].is_zero():
            out = out + partial(T.comps, k) * X.comps[k]
    if T.p == 0:
        q = T.q
        for s in range(q):
            # T_{.. k ..} d_{i_s} X^k : contract slot s of T with the k-index of dX
            term = np.tensordot(T.comps, dX, axes=([s], [1]))  # remaining indices: others..., i_s
            term = np.moveaxis(term, -1, s)
            out = out + term
        return TensorField(chart, 0, q, out)
    if T.valence == (1, 1):
        phi = T.comps
        # - phi^k_j d_k X^i  +  phi^i_k d_j X^k
        out = out - np.einsum("kj,ki->ij", phi, dX) + np.einsum("ik,jk->ij", phi, dX)
        return TensorField(chart, 1, 1, out)
    raise ValueError(f"Lie derivative of valence {T.valence} is not supported")


def nijenhuis_torsion(phi: TensorField) -> TensorField:
    """N_phi as a (1,2) tensor: N[k, i, j] = N_phi(d_i, d_j)^k.

    N_phi(X,Y) = phi^2[X,Y] + [phiX,phiY] - phi[phiX,Y] - phi[X,phiY], which on
    coordinate frames reduces to
    phi^l_i d_l phi^k_j - phi^l_j d_l phi^k_i - phi^k_l (d_i phi^l_j - d_j phi^l_i).
    """
    if phi.valence != (1, 1):
        raise ValueError("Nijenhuis torsion needs a (1,1) tensor")
    chart = phi.chart
    dphi = gradient(phi.comps)  # dphi[m, k, j] = d_m phi^k_j
    a = np.einsum("li,lkj->kij", phi.comps, dphi)
    b = np.einsum("kl,ilj->kij", phi.comps, dphi)
    comps = a - a.transpose(0, 2, 1) - b + b.transpose(0, 2, 1)
    return TensorField(chart, 1, 2, comps)


def normality_tensor(phi: TensorField, xi: Sequence[VectorField], eta: Sequence[PForm]) -> TensorField:
    """N = N_phi + 2 sum_a d eta^a (x) xi_a, with the half-normalized d."""
    N = nijenhuis_torsion(phi).comps
    for x, e in zip(xi, eta):
        de = exterior_derivative(e).to_tensor().comps
        N = N + 2 * np.einsum("k,ij->kij", x.comps, de)
    return TensorField(phi.chart, 1, 2, N)


def n2_from_d(phi: TensorField, eta: PForm) -> TensorField:
    """N2(X,Y) = 2 d eta(phi X, Y) - 2 d eta(phi Y, X), as a (0,2) tensor."""
    de = exterior_derivative(eta).to_tensor().comps
    t = np.einsum("li,lj->ij", phi.comps, de)
    return TensorField(phi.chart, 0, 2, 2 * t - 2 * t.T)


def n2_from_lie(phi: TensorField, eta: PForm) -> TensorField:
    """N2(d_i, d_j) = (L_{phi d_i} eta)(d_j) - (L_{phi d_j} eta)(d_i)."""
    chart = phi.chart
    n = chart.dim
    eta_t = eta.to_tensor()
    rows = []
    for i in range(n):
        X = VectorField(chart, phi.comps[:, i])
        rows.append(lie_derivative(eta_t, X).comps)
    L = np.array(rows, dtype=object)  # L[i, j] = (L_{phi d_i} eta)_j
    return TensorField(chart, 0, 2, L - L.T)
