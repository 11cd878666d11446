"""Metric globally framed f-structures: validation and classification."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

import numpy as np

from .linalg import matrix_inverse, matrix_rank, rational_inertia
from .report import Verdict, combine, zero_verdict
from .scalars import Chart
from .specfile import ManifoldSpec
from .tensors import (
    PForm,
    TensorField,
    VectorField,
    exterior_derivative,
    lie_derivative,
    normality_tensor,
    zeros,
)


class StructureError(ValueError):
    """The data cannot describe a metric g.f.f-structure at all."""


class GffStructure:
    """The structure tensors and the metric on one chart, with derived quantities cached."""

    def __init__(self, chart: Chart, phi, xi, eta, g, sample_points=None):
        n = chart.dim
        self.chart = chart
        self.phi = phi if isinstance(phi, TensorField) else TensorField(chart, 1, 1, phi)
        self.xi = [x if isinstance(x, VectorField) else VectorField(chart, x) for x in xi]
        self.eta = [e if isinstance(e, PForm) else PForm.from_covector(chart, e) for e in eta]
        self.g = g if isinstance(g, TensorField) else TensorField(chart, 0, 2, g)
        if len(self.xi) != len(self.eta):
            raise StructureError("need as many 1-forms as characteristic vector fields")
        if self.phi.valence != (1, 1) or self.g.valence != (0, 2):
            raise StructureError("phi must be (1,1) and g must be (0,2)")
        for i in range(n):
            for j in range(i):
                if self.g.comps[i, j] != self.g.comps[j, i]:
                    raise StructureError(f"metric is not symmetric at [{j + 1},{i + 1}]")
        self.sample_points = list(sample_points or [])

    @classmethod
    def from_spec(cls, spec: ManifoldSpec) -> "GffStructure":
        chart = spec.chart
        return cls(
            chart,
            np.array(spec.phi, dtype=object),
            [np.array(x, dtype=object) for x in spec.xi],
            [list(e) for e in spec.eta],
            np.array(spec.metric, dtype=object),
            spec.points(),
        )

    # -- basic sizes --------------------------------------------------------
    @property
    def dim(self) -> int:
        return self.chart.dim

    @property
    def r(self) -> int:
        return len(self.xi)

    @property
    def coords(self):
        return self.chart.coords

    def frame_labels(self) -> list[str]:
        return [f"d{c}" for c in self.coords]

    # -- derived data -------------------------------------------------------
    @cached_property
    def eta_arr(self) -> np.ndarray:
        """eta_arr[a, i] = eta^a(d_i)."""
        return np.array([[e.component((i,)) for i in range(self.dim)] for e in self.eta], dtype=object).reshape(
            self.r, self.dim
        )

    @cached_property
    def xi_arr(self) -> np.ndarray:
        """xi_arr[a, i] = i-th component of xi_a."""
        return np.array([x.comps for x in self.xi], dtype=object).reshape(self.r, self.dim)

    @cached_property
    def epsilon(self) -> tuple[int, ...]:
        """Causal characters g(xi_a, xi_a); each must be the constant +1 or -1."""
        out = []
        for a, x in enumerate(self.xi):
            val = x.comps.dot(self.g.comps).dot(x.comps)
            if not val.is_constant() or val.constant_value() not in (1, -1):
                raise StructureError(f"g(xi_{a + 1}, xi_{a + 1}) = {val.reduced()} is not the constant 1 or -1")
            out.append(int(val.constant_value()))
        return tuple(out)

    @property
    def epsilon_sum(self) -> int:
        return sum(self.epsilon)

    @cached_property
    def xi_bar(self) -> np.ndarray:
        return self.xi_arr.sum(axis=0)

    @cached_property
    def eta_bar(self) -> np.ndarray:
        """Components of sum_a eps_a eta^a."""
        out = zeros(self.chart, (self.dim,))
        for a, e in enumerate(self.epsilon):
            out = out + self.eta_arr[a] * e
        return out

    @cached_property
    def phi_sq(self) -> np.ndarray:
        return self.phi.comps.dot(self.phi.comps)

    @cached_property
    def projector(self) -> np.ndarray:
        """-phi^2, the projector onto D = Im(phi) along ker(phi)."""
        return -self.phi_sq

    @cached_property
    def Phi_arr(self) -> np.ndarray:
        """Phi_ij = g(d_i, phi d_j)."""
        return self.g.comps.dot(self.phi.comps)

    @cached_property
    def g_inv(self) -> np.ndarray:
        try:
            return matrix_inverse(self.g.comps)
        except ZeroDivisionError:
            raise StructureError("metric is identically degenerate") from None

    @cached_property
    def connection(self):
        from .curvature import levi_civita

        return levi_civita(self.g)

    @cached_property
    def curvature(self):
        from .curvature import riemann_tensor

        return riemann_tensor(self.connection, self.g)

    @cached_property
    def d_eta(self) -> list[PForm]:
        return [exterior_derivative(e) for e in self.eta]

    @cached_property
    def normality(self) -> TensorField:
        return normality_tensor(self.phi, self.xi, self.eta)

    # -- evaluation helpers ---------------------------------------------------
    def gval(self, X, Y):
        return np.asarray(X, dtype=object).dot(self.g.comps).dot(np.asarray(Y, dtype=object))

    def phi_of(self, X) -> np.ndarray:
        return self.phi.comps.dot(np.asarray(X, dtype=object))

    def with_eta(self, eta) -> "GffStructure":
        return GffStructure(self.chart, self.phi, self.xi, eta, self.g, self.sample_points)

    def with_metric(self, g) -> "GffStructure":
        return GffStructure(self.chart, self.phi, self.xi, self.eta, g, self.sample_points)


# -- checks -------------------------------------------------------------------

def check_f_axioms(s: GffStructure) -> list[Verdict]:
    phi = s.phi.comps
    n, r = s.dim, s.r
    out = [zero_verdict("phi^3 + phi = 0", s.phi_sq.dot(phi) + phi)]
    rank = matrix_rank(phi)
    out.append(Verdict("rank phi = dim - r", rank == n - r, f"rank {rank}, expected {n - r}"))
    out.append(zero_verdict("phi xi_a = 0", np.array([phi.dot(x.comps) for x in s.xi], dtype=object).reshape(r, n)))
    delta = s.eta_arr.dot(s.xi_arr.T) - np.array(
        [[s.chart.one if a == b else s.chart.zero for b in range(r)] for a in range(r)], dtype=object
    ).reshape(r, r)
    out.append(zero_verdict("eta^a(xi_b) = delta", delta))
    out.append(zero_verdict("eta^a o phi = 0", s.eta_arr.dot(phi)))
    return out


def pointwise_ranks(s: GffStructure) -> list[int]:
    """Rank of phi at each sample point (reported, never a failure)."""
    ranks = []
    for p in s.sample_points:
        m = [[f.evaluate(p) for f in row] for row in s.phi.comps]
        ranks.append(_rational_rank(m))
    return ranks


def _rational_rank(m) -> int:
    m = [list(map(Fraction, row)) for row in m]
    rank, rows, cols = 0, len(m), len(m[0])
    for c in range(cols):
        piv = next((i for i in range(rank, rows) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        for i in range(rank + 1, rows):
            f = m[i][c] / m[rank][c]
            for j in range(c, cols):
                m[i][j] -= f * m[rank][j]
        rank += 1
    return rank


def check_compatibility(s: GffStructure) -> list[Verdict]:
    labels = s.frame_labels()
    g, phi = s.g.comps, s.phi.comps
    try:
        eps = s.epsilon
    except StructureError as exc:
        return [Verdict("causal characters are +1 or -1", False, str(exc))]
    out = [Verdict("causal characters are +1 or -1", True, str(eps))]
    rhs = g.copy()
    for a, e in enumerate(eps):
        rhs = rhs - np.outer(s.eta_arr[a], s.eta_arr[a]) * e
    out.append(zero_verdict("g(phiX,phiY) = g(X,Y) - sum eps eta eta", phi.T.dot(g).dot(phi) - rhs, labels))
    dual = np.array([g.dot(x.comps) * e for x, e in zip(s.xi, eps)], dtype=object).reshape(s.r, s.dim) - s.eta_arr
    out.append(zero_verdict("eps_a g(X,xi_a) = eta^a(X)", dual))
    Phi = s.Phi_arr
    out.append(zero_verdict("phi is g-skew", Phi + Phi.T, labels))
    return out


def fundamental_form(s: GffStructure) -> PForm:
    """Phi(X, Y) = g(X, phi Y) as a 2-form."""
    Phi = s.Phi_arr
    bad = zero_verdict("phi is g-skew", Phi + Phi.T, s.frame_labels())
    if not bad.holds:
        raise StructureError(f"Phi is not antisymmetric: {bad.witness}")
    return PForm.from_tensor(TensorField(s.chart, 0, 2, Phi))


def h_operators(s: GffStructure):
    """h_a = 1/2 L_{xi_a} phi, with verdicts for its standard properties."""
    half = s.chart.constant(Fraction(1, 2))
    hs = [lie_derivative(s.phi, x).scale(half) for x in s.xi]
    labels = s.frame_labels()
    verdicts = []
    sa, hx, anti = [], [], []
    for a, h in enumerate(hs):
        gh = s.g.comps.dot(h.comps)
        sa.append(zero_verdict(f"h_{a + 1} self-adjoint", gh - gh.T, labels))
        hx.append(zero_verdict(f"h_{a + 1} xi_b = 0", np.array([h.comps.dot(x.comps) for x in s.xi], dtype=object)))
        anti.append(zero_verdict(f"h_{a + 1} phi + phi h_{a + 1} = 0", h.comps.dot(s.phi.comps) + s.phi.comps.dot(h.comps), labels))
    verdicts.append(combine("h_a self-adjoint", sa))
    verdicts.append(combine("h_a(xi_b) = 0", hx))
    verdicts.append(combine("h_a phi + phi h_a = 0", anti))
    return hs, verdicts


@dataclass
class ClassificationReport:
    classification: str
    flags: dict
    verdicts: list = field(default_factory=list)


def classify(s: GffStructure) -> ClassificationReport:
    """Place the structure in the K / C / almost-S / S hierarchy."""
    labels = s.frame_labels()
    axioms = check_f_axioms(s) + check_compatibility(s)
    valid = all(v.holds for v in axioms)
    verdicts = list(axioms)
    if not valid:
        return ClassificationReport("not-gff", {"valid": False}, verdicts)

    Phi = fundamental_form(s)
    d_phi = exterior_derivative(Phi)
    normal = zero_verdict("normal (N = 0)", s.normality.comps, None)
    closed_phi = Verdict("d Phi = 0", d_phi.is_zero(), _form_witness(d_phi, labels))
    closed_eta = combine(
        "d eta^a = 0",
        [Verdict(f"d eta^{a + 1} = 0", de.is_zero(), _form_witness(de, labels)) for a, de in enumerate(s.d_eta)],
    )
    contact = combine(
        "d eta^a = Phi",
        [
            Verdict(f"d eta^{a + 1} = Phi", (de - Phi).is_zero(), _form_witness(de - Phi, labels))
            for a, de in enumerate(s.d_eta)
        ],
    )
    verdicts += [normal, closed_phi, closed_eta, contact]
    flags = {
        "valid": True,
        "normal": bool(normal.holds),
        "closed_phi": bool(closed_phi.holds),
        "closed_eta": bool(closed_eta.holds),
        "contact": bool(contact.holds),
    }
    if flags["normal"] and flags["contact"]:
        cls = "S"
    elif flags["contact"]:
        cls = "almost-S"
    elif flags["normal"] and flags["closed_phi"] and flags["closed_eta"]:
        cls = "C"
    elif flags["normal"] and flags["closed_phi"]:
        cls = "K"
    else:
        cls = "metric-gff"
    return ClassificationReport(cls, flags, verdicts)


def _form_witness(form: PForm, labels):
    hit = form.first_nonzero()
    if hit is None:
        return None
    idx, val = hit
    return "(" + ", ".join(labels[i] for i in idx) + f") = {val}"


def check_killing(s: GffStructure) -> list[Verdict]:
    labels = s.frame_labels()
    kg = [zero_verdict(f"L_xi_{a + 1} g = 0", lie_derivative(s.g, x).comps, labels) for a, x in enumerate(s.xi)]
    ke = []
    for a, x in enumerate(s.xi):
        for b, e in enumerate(s.eta):
            ke.append(
                zero_verdict(f"L_xi_{a + 1} eta^{b + 1} = 0", lie_derivative(e.to_tensor(), x).comps, labels)
            )
    return [combine("xi_a are Killing", kg), combine("L_xi_a eta^b = 0", ke)]


def sampled_signatures(s: GffStructure) -> list:
    """(point, (n_plus, n_minus)) or (point, None) when g is singular there."""
    out = []
    for p in s.sample_points:
        values = [[f.evaluate(p) for f in row] for row in s.g.comps]
        plus, minus, zero = rational_inertia(values)
        out.append((p, None if zero else (plus, minus)))
    return out


def d_signatures(s: GffStructure) -> list:
    """Signature of g restricted to D = Im(phi) at each sample point.

    Computed as the inertia of P^T g P (P = -phi^2) minus the r zero
    directions of ker phi.
    """
    P = s.projector
    gd = P.T.dot(s.g.comps).dot(P)
    out = []
    for p in s.sample_points:
        values = [[f.evaluate(p) for f in row] for row in gd]
        plus, minus, zero = rational_inertia(values)
        out.append((p, (plus, minus) if zero == s.r else None))
    return out
