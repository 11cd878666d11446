"""Identity suites: each function returns a list of Verdicts.

Identities quantified over sections of D = Im(phi) are turned into full
tensor identities by contracting every D-slot with the projector -phi^2.
Identities quadratic in a D-argument are symmetrized in the two copies of
that argument before projecting, which is equivalent by polarization.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np
from sympy.polys.domains import QQ
from sympy.polys.rings import ring

from . import curvature as cv
from .report import Verdict, combine, skipped, zero_verdict
from .scalars import to_qq
from .structure import fundamental_form, h_operators
from .tensors import (
    PForm,
    TensorField,
    VectorField,
    exterior_derivative,
    lie_bracket,
    lie_derivative,
    n2_from_d,
    n2_from_lie,
)


def contract(T: np.ndarray, slot: int, M: np.ndarray) -> np.ndarray:
    """T'[.., a, ..] = sum_i T[.., i, ..] M[i, a] in the given slot."""
    return np.moveaxis(np.tensordot(T, M, axes=([slot], [0])), -1, slot)


def project(T: np.ndarray, M: np.ndarray, slots=None) -> np.ndarray:
    for k in range(T.ndim) if slots is None else slots:
        T = contract(T, k, M)
    return T


def along(T: np.ndarray, slot: int, v) -> np.ndarray:
    """Feed the vector v into one slot (the slot disappears)."""
    return np.tensordot(T, np.asarray(v, dtype=object), axes=([slot], [0]))


def symmetrize_pairs(T: np.ndarray, pairs) -> np.ndarray:
    """Sum over all swaps of the given slot pairs."""
    out = T
    for a, b in pairs:
        perm = list(range(T.ndim))
        perm[a], perm[b] = perm[b], perm[a]
        out = out + out.transpose(perm)
    return out


class Context:
    """Arrays shared by the identity checks of one structure."""

    def __init__(self, s):
        self.s = s
        self.labels = s.frame_labels()
        self.g = s.g.comps
        self.phi = s.phi.comps
        self.Phi = s.Phi_arr
        self.pg = self.phi.T.dot(self.g).dot(self.phi)  # pg[i, j] = g(phi d_i, phi d_j)
        self.Pi = s.projector
        self.gPi = self.Pi.T.dot(self.g).dot(self.Pi)
        self.eps = s.epsilon
        self.eb = s.eta_bar
        self.xb = s.xi_bar
        self.eta = s.eta_arr
        self.xi = s.xi_arr
        self.conn = s.connection
        self._cache = {}

    def cached(self, key, fn):
        if key not in self._cache:
            self._cache[key] = fn()
        return self._cache[key]

    @property
    def dphi(self) -> np.ndarray:
        """dphi[i, j, k] = k-th component of (nabla_{d_i} phi) d_j."""
        return self.cached(
            "dphi", lambda: cv.covariant_derivative(self.s.phi, self.conn).comps.transpose(1, 2, 0)
        )

    @property
    def nabla_Phi(self) -> np.ndarray:
        """nabla_Phi[i, j, k] = (nabla_{d_i} Phi)(d_j, d_k)."""
        return self.cached(
            "nPhi", lambda: cv.covariant_derivative(TensorField(self.s.chart, 0, 2, self.Phi), self.conn).comps
        )

    @property
    def N(self) -> np.ndarray:
        return self.s.normality.comps

    @property
    def hs(self):
        return self.cached("h", lambda: h_operators(self.s))

    @property
    def d_Phi(self) -> np.ndarray:
        return self.cached("dPhi", lambda: exterior_derivative(fundamental_form(self.s)).to_tensor().comps)

    @property
    def d_eta(self):
        return [de.to_tensor().comps for de in self.s.d_eta]

    @property
    def n2(self):
        return self.cached("n2", lambda: [n2_from_d(self.s.phi, e).comps for e in self.s.eta])

    def g_of_n_phix(self) -> np.ndarray:
        """[i, j, k] = g(N(d_j, d_k), phi d_i)."""
        return np.einsum("mjk,mi->ijk", self.N, self.Phi)

    def zero(self, name, arr, frames=True) -> Verdict:
        return zero_verdict(name, arr, self.labels if frames else None)


# -- metric g.f.f level -----------------------------------------------------

def koszul_identity(ctx: Context) -> Verdict:
    """2g((nabla_X phi)Y, Z) from exterior derivatives and normality tensors (any metric g.f.f)."""
    lhs = 2 * np.einsum("ijm,mk->ijk", ctx.dphi, ctx.g)
    dPhi = ctx.d_Phi
    rhs = 3 * project(dPhi, ctx.phi, slots=(1, 2)) - 3 * dPhi + ctx.g_of_n_phix()
    for a, e in enumerate(ctx.eps):
        de = ctx.d_eta[a]
        rhs = rhs + e * np.einsum("jk,i->ijk", ctx.n2[a], ctx.eta[a])
        t = ctx.phi.T.dot(de)  # t[j, i] = d eta(phi d_j, d_i)
        rhs = rhs + 2 * e * np.einsum("ji,k->ijk", t, ctx.eta[a]) - 2 * e * np.einsum("ki,j->ijk", t, ctx.eta[a])
    return ctx.zero("Koszul-type formula for 2g((nabla_X phi)Y,Z)", lhs - rhs)


def lie_phi_identity(ctx: Context) -> Verdict:
    s, out = ctx.s, []
    PhiT = TensorField(s.chart, 0, 2, ctx.Phi)
    for a, x in enumerate(s.xi):
        lPhi = lie_derivative(PhiT, x).comps
        lg = lie_derivative(s.g, x).comps
        lphi = lie_derivative(s.phi, x).comps
        out.append(ctx.zero(f"alpha={a + 1}", lPhi - lg.dot(ctx.phi) - ctx.g.dot(lphi)))
    return combine("(L_xi Phi)(X,Y) = (L_xi g)(X,phiY) + g(X,(L_xi phi)Y)", out)


def nabla_Phi_identity(ctx: Context) -> Verdict:
    return ctx.zero(
        "(nabla_X Phi)(Y,Z) = g(Y,(nabla_X phi)Z)",
        ctx.nabla_Phi - np.einsum("jm,ikm->ijk", ctx.g, ctx.dphi),
    )


def lie_phi_kernel_bracket(ctx: Context) -> Verdict:
    """If L_{xi_a} phi = 0 then eta^b[phi Z, xi_a] = 0, per a."""
    s, out = ctx.s, []
    for a, x in enumerate(s.xi):
        if not all(f.is_zero() for f in lie_derivative(s.phi, x).comps.reshape(-1)):
            out.append(skipped(f"alpha={a + 1}", "L_xi phi is not zero"))
            continue
        rows = []
        for k in range(s.dim):
            br = lie_bracket(VectorField(s.chart, ctx.phi[:, k]), x).comps
            rows.append(ctx.eta.dot(br))
        out.append(ctx.zero(f"alpha={a + 1}", np.array(rows, dtype=object), frames=False))
    return combine("L_xi_a phi = 0 implies eta^b([phi Z, xi_a]) = 0", out)


def normal_implies_n2(ctx: Context, normal: bool) -> Verdict:
    name = "N = 0 implies N2_a = 0"
    if not normal:
        return skipped(name, "precondition failed: structure is not normal")
    return combine(name, [ctx.zero(f"N2_{a + 1}", n) for a, n in enumerate(ctx.n2)])


def n2_consistency(ctx: Context) -> Verdict:
    s = ctx.s
    parts = [
        ctx.zero(f"alpha={a + 1}", ctx.n2[a] - n2_from_lie(s.phi, e).comps) for a, e in enumerate(s.eta)
    ]
    return combine("N2 via d eta agrees with N2 via Lie derivatives", parts)


def killing_criterion(ctx: Context, killing, s_formula: Verdict, is_s: bool) -> Verdict:
    name = "Killing xi, L_xi eta = 0 and the nabla phi formula imply S"
    if not (all(v.holds for v in killing) and s_formula.holds):
        return skipped(name, "precondition failed")
    return Verdict(name, is_s, None if is_s else "hypotheses hold but the structure is not S")


def metric_gff_suite(ctx: Context, flags: dict) -> list[Verdict]:
    return [
        koszul_identity(ctx),
        lie_phi_identity(ctx),
        nabla_Phi_identity(ctx),
        lie_phi_kernel_bracket(ctx),
        normal_implies_n2(ctx, flags.get("normal", False)),
        n2_consistency(ctx),
    ]


# -- almost S level ---------------------------------------------------------

def s_formula(ctx: Context) -> Verdict:
    """(nabla_X phi)Y = g(phiX,phiY) xi_bar + eta_bar(Y) phi^2 X on frames."""
    phisq = ctx.s.phi_sq
    arr = ctx.dphi - np.einsum("ij,k->ijk", ctx.pg, ctx.xb) - np.einsum("j,ki->ijk", ctx.eb, phisq)
    return ctx.zero("(nabla_X phi)Y = g(phiX,phiY) xi_bar + eta_bar(Y) phi^2 X", arr)


def s_form_formula(ctx: Context) -> Verdict:
    arr = ctx.nabla_Phi - np.einsum("j,ik->ijk", ctx.eb, ctx.pg) + np.einsum("k,ij->ijk", ctx.eb, ctx.pg)
    return ctx.zero("(nabla_X Phi)(Y,Z) = eta_bar(Y)g(phiX,phiZ) - eta_bar(Z)g(phiX,phiY)", arr)


def almost_s_nabla_phi(ctx: Context) -> Verdict:
    lhs = 2 * np.einsum("ijm,mk->ijk", ctx.dphi, ctx.g)
    rhs = ctx.g_of_n_phix() + 2 * np.einsum("ji,k->ijk", ctx.pg, ctx.eb) - 2 * np.einsum("ki,j->ijk", ctx.pg, ctx.eb)
    return ctx.zero("2g((nabla_X phi)Y,Z) = g(N(Y,Z),phiX) + 2g(phiY,phiX)eta_bar(Z) - 2g(phiZ,phiX)eta_bar(Y)", lhs - rhs)


def check_s_identities(s, ctx: Context | None = None) -> list[Verdict]:
    """The nabla phi and nabla Phi characterizations of S plus the almost-S nabla phi formula.

    Always evaluated, whatever the classification, so that a failure is
    localized by its witness.
    """
    ctx = ctx or Context(s)
    return [s_formula(ctx), s_form_formula(ctx), almost_s_nabla_phi(ctx)]


def almost_s_suite(ctx: Context, flags: dict) -> list[Verdict]:
    s = ctx.s
    out = []
    out.append(combine("N2_a = 0", [ctx.zero(f"N2_{a + 1}", n) for a, n in enumerate(ctx.n2)]))
    # eta^a[phi E_i, E_j] = eta^a[phi E_j, E_i] on projected frames
    E = [VectorField(s.chart, ctx.Pi[:, i]) for i in range(s.dim)]
    pE = [VectorField(s.chart, ctx.phi.dot(e.comps)) for e in E]
    arr = np.empty((s.r, s.dim, s.dim), dtype=object)
    for i in range(s.dim):
        for j in range(s.dim):
            d = lie_bracket(pE[i], E[j]).comps - lie_bracket(pE[j], E[i]).comps
            arr[:, i, j] = ctx.eta.dot(d)
    out.append(ctx.zero("eta^a([phiX,Y]) = eta^a([phiY,X]) on D", arr, frames=False))
    out.append(almost_s_nabla_phi(ctx))
    nxp = np.einsum("ai,ijk->ajk", ctx.xi, ctx.dphi)
    out.append(ctx.zero("nabla_xi_a phi = 0", nxp, frames=False))
    nxx = np.array([[cv.nabla(ctx.conn, x, y) for y in ctx.xi] for x in ctx.xi], dtype=object)
    out.append(ctx.zero("nabla_xi_a xi_b = 0", nxx, frames=False))
    hs, hverdicts = ctx.hs
    out.extend(hverdicts)
    h = [t.comps for t in hs]
    a_arr = np.einsum("km,mij->ijk", ctx.phi, ctx.N) + np.einsum("kpj,pi->ijk", ctx.N, ctx.phi)
    for a in range(s.r):
        a_arr = a_arr - 2 * np.einsum("i,kj->ijk", ctx.eta[a], h[a])
    out.append(ctx.zero("phi N(X,Y) + N(phiX,Y) = 2 eta^a(X) h_a(Y)", a_arr))
    out.append(ctx.zero("eta^a(N(X,Y)) = 0", np.einsum("ak,kij->aij", ctx.eta, ctx.N), frames=False))
    parts = []
    for a, x in enumerate(s.xi):
        nx = cv.covariant_derivative(TensorField(s.chart, 1, 0, x.comps), ctx.conn).comps
        parts.append(ctx.zero(f"alpha={a + 1}", nx + ctx.phi * ctx.eps[a] + ctx.phi.dot(h[a])))
    out.append(combine("nabla_X xi_a = -eps_a phiX - phi h_a X", parts))
    out.extend(prop_nabla_phi_phi(ctx, h))
    is_s = flags.get("normal", False)
    eq7, cf = s_formula(ctx), s_form_formula(ctx)
    out.append(Verdict("S iff the nabla phi formula holds", bool(eq7.holds) == is_s, eq7.witness))
    out.append(Verdict("S iff the nabla Phi formula holds", bool(cf.holds) == is_s, cf.witness))
    out.extend(kernel_verdicts(ctx)[:1])
    return out


def prop_nabla_phi_phi(ctx: Context, h) -> list[Verdict]:
    s = ctx.s
    both = ctx.dphi + np.einsum("pi,pqk,qj->ijk", ctx.phi, ctx.dphi, ctx.phi)
    arr = both - 2 * np.einsum("ij,k->ijk", ctx.pg, ctx.xb) - np.einsum("j,ki->ijk", ctx.eb, s.phi_sq)
    for a in range(s.r):
        arr = arr + np.einsum("j,ki->ijk", ctx.eta[a], h[a])
    out = [ctx.zero("(nabla_X phi)Y + (nabla_phiX phi)phiY formula", arr)]
    on_d = project(both, ctx.Pi, slots=(0, 1)) - 2 * np.einsum("ab,k->abk", ctx.gPi, ctx.xb)
    out.append(ctx.zero("(nabla_X phi)Y + (nabla_phiX phi)phiY = 2g(X,Y) xi_bar on D", on_d))
    F = np.einsum("iqk,qj->ijk", ctx.dphi, ctx.phi) - np.einsum("pi,pjk->ijk", ctx.phi, ctx.dphi)
    F = project(F, ctx.Pi, slots=(0, 1))
    out.append(ctx.zero("(nabla_X phi)phiX = (nabla_phiX phi)X on D", symmetrize_pairs(F, [(0, 1)])))
    return out


def kernel_verdicts(ctx: Context) -> list[Verdict]:
    """ker phi is integrable and flat."""
    s = ctx.s
    br = np.array([[ctx.phi.dot(lie_bracket(x, y).comps) for y in s.xi] for x in s.xi], dtype=object)
    out = [ctx.zero("ker phi integrable: phi[xi_a, xi_b] = 0", br, frames=False)]
    r13 = s.curvature.r13
    t = np.einsum("lijk,ai,bj,ck->abcl", r13, ctx.xi, ctx.xi, ctx.xi)
    out.append(ctx.zero("ker phi flat: R(xi_a,xi_b)xi_c = 0", t, frames=False))
    return out


# -- S level ----------------------------------------------------------------

def s_suite(ctx: Context, killing) -> list[Verdict]:
    s = ctx.s
    hs, _ = ctx.hs
    out = [combine("h_a = 0", [ctx.zero(f"h_{a + 1}", h.comps) for a, h in enumerate(hs)])]
    parts = []
    for a, x in enumerate(s.xi):
        nx = cv.covariant_derivative(TensorField(s.chart, 1, 0, x.comps), ctx.conn).comps
        parts.append(ctx.zero(f"alpha={a + 1}", nx + ctx.phi * ctx.eps[a]))
    out.append(combine("nabla_X xi_a = -eps_a phiX", parts))
    out.extend(check_s_identities(s, ctx)[:2])
    out.append(combine("xi_a Killing and L_xi_a eta^b = 0", killing))
    return out


def curvature_identity_suite(s, R=None, ctx: Context | None = None, c=None) -> list[Verdict]:
    """Curvature identities of S-manifolds, exact on (projected) frames."""
    ctx = ctx or Context(s)
    R = R or s.curvature
    r13, r04 = R.r13, R.r04
    Pi, g, phi, eb, xb = ctx.Pi, ctx.g, ctx.phi, ctx.eb, ctx.xb
    aux = cv.aux_tensors(s, R)
    eps = s.epsilon_sum
    out = []
    out.append(kernel_verdicts(ctx)[1])
    # K(X, xi_a) = eps_a with Delta = g(X,X) eps_a, i.e. R(X, xi_a, X, xi_a) = g(X,X)
    parts = []
    for a in range(s.r):
        xi = ctx.xi[a]
        t = project(along(along(r04, 3, xi), 1, xi), Pi)
        parts.append(ctx.zero(f"alpha={a + 1}", t - ctx.gPi))
    out.append(combine("K(X, xi_a) = eps_a for X in D", parts))
    p1, p2, p3 = [], [], []
    for a in range(s.r):
        for b in range(s.r):
            t = along(along(r13, 3, ctx.xi[b]), 1, ctx.xi[a])  # t[l, j]
            t = contract(t, 1, Pi) + Pi * (ctx.eps[a] * ctx.eps[b])
            p1.append(ctx.zero(f"alpha={a + 1}, beta={b + 1}", t))
        m = project(along(r13, 2, ctx.xi[a]), Pi, slots=(1, 2))  # m[l, x, y] = R(X, xi_a)Y
        t = symmetrize_pairs(m, [(1, 2)]) + 2 * ctx.eps[a] * np.einsum("l,xy->lxy", xb, ctx.gPi)
        p2.append(ctx.zero(f"alpha={a + 1}", t))
        # g(R(X, xi_a)Y, Z) = R(Z, Y, X, xi_a)
        m = project(along(r04, 3, ctx.xi[a]), Pi, slots=(1, 2))  # m[z, y, x]
        t = m + ctx.eps[a] * np.einsum("yx,z->zyx", ctx.gPi, eb)
        p3.append(ctx.zero(f"alpha={a + 1}", t))
    out.append(combine("R(xi_a, X)xi_b = -eps_a eps_b X on D", p1))
    out.append(combine("R(X, xi_a)X = -g(X,X) eps_a xi_bar on D", p2))
    out.append(combine("g(R(X, xi_a)Y, Z) = -eps_a g(X,Y) eta_bar(Z) on D", p3))
    P, Q = aux.P, aux.Q
    out.append(ctx.zero("P(X,Y;Z,W) = -P(Z,W;X,Y)", P + P.transpose(2, 3, 0, 1)))
    T = (
        contract(P, 3, phi)
        - np.einsum("ab,cd->abcd", ctx.Phi, ctx.Phi)
        - np.einsum("ab,cd->abcd", g, g)
        + np.einsum("ac,bd->abcd", g, g)
    )
    T = project(symmetrize_pairs(T, [(0, 2), (1, 3)]), Pi)
    out.append(ctx.zero("P(X,Y;X,phiY) = g(X,phiY)^2 + g(X,Y)^2 - g(X,X)g(Y,Y) on D", T))
    lhs, rhs = cv.master_identity_sides(s, R, aux)
    out.append(ctx.zero("g(R(X,Y)phiZ,W) + g(R(X,Y)Z,phiW) = -eps P - Q", lhs - rhs))
    out.append(ctx.zero("Q = 0 on D", project(Q, Pi)))
    out.append(ctx.zero("R(phiX,phiY,phiZ,phiW) = R(X,Y,Z,W) on D", project(r04, phi) - project(r04, Pi)))
    out.extend(d_quadratic_identities(ctx, r04, P, eps))
    out.append(b_expression_verdict(s, R))
    out.extend(uniqueness_hypotheses(s, R, ctx, P, c))
    return out


def d_quadratic_identities(ctx: Context, r04, P, eps, with_p=True) -> list[Verdict]:
    phi, Pi = ctx.phi, ctx.Pi
    # slots [x1, x2, y1, y2]
    t1 = np.einsum("pyxq,pv,qw->xwyv", r04, phi, phi)  # R(phiY2, Y1, X1, phiX2)
    t2 = np.einsum("vwxy->xwyv", r04)  # R(Y2, X2, X1, Y1)
    t3 = np.einsum("pwxq,pv,qy->xwyv", r04, phi, phi)  # R(phiY2, X2, X1, phiY1)
    t4 = np.einsum("xywq,qv->xwyv", P, phi)  # P(X1, Y1; X2, phiY2)
    b = t1 - t2 - t3
    name = "g(R(X,phiX)Y,phiY) = g(R(X,Y)X,Y) + g(R(X,phiY)X,phiY) - 2 eps P(X,Y;X,phiY) on D"
    if with_p:
        b = b + 2 * eps * t4
    else:
        name = "g(R(X,phiX)Y,phiY) = g(R(X,Y)X,Y) + g(R(X,phiY)X,phiY) on D"
    b = project(symmetrize_pairs(b, [(0, 1), (2, 3)]), Pi)
    c1 = np.einsum("vpqy,pw,qx->xwyv", r04, phi, phi)  # R(Y2, phiX2, phiX1, Y1)
    c = c1 - t3
    c = project(symmetrize_pairs(c, [(0, 1), (2, 3)]), Pi)
    return [ctx.zero(name, b), ctx.zero("g(R(phiX,Y)phiX,Y) = g(R(X,phiY)X,phiY) on D", c)]


def b_expression_residual(s, R, point):
    """B(X,Y) minus its expression through D, for generic X, Y in D at a point.

    X and Y are -phi^2 applied to vectors of indeterminates, so a zero
    residual proves the identity at that point for all X, Y in D.
    """
    n = s.dim
    names = [f"a{i}" for i in range(n)] + [f"b{i}" for i in range(n)]
    Rg, *gens = ring(",".join(names), QQ)
    lift = np.vectorize(lambda v: Rg.ground_new(to_qq(v)), otypes=[object])
    at = cv._structure_at(s, point)
    phi = lift(at["phi"])
    g = lift(at["g"])
    r04 = lift(R.at(point))
    proj = -phi.dot(phi)
    X = proj.dot(np.array(gens[:n], dtype=object))
    Y = proj.dot(np.array(gens[n:], dtype=object))
    Phi = g.dot(phi)

    def f4(A, B, C, D):
        return cv.form(r04, A, B, C, D)

    def Bv(A, B):
        return -f4(A, B, A, B)

    def Dv(A):
        return Bv(A, phi.dot(A))

    phiY = phi.dot(Y)
    p = (
        cv.form(Phi, X, X) * cv.form(g, Y, phiY)
        - cv.form(Phi, X, phiY) * cv.form(g, Y, X)
        - cv.form(Phi, Y, X) * cv.form(g, X, phiY)
        + cv.form(Phi, Y, phiY) * cv.form(g, X, X)
    )
    combo = (
        3 * Dv(X + phiY) + 3 * Dv(X - phiY) - Dv(X + Y) - Dv(X - Y) - 4 * Dv(X) - 4 * Dv(Y)
        + 24 * s.epsilon_sum * p
    )
    return Bv(X, Y) * 32 - combo


def b_expression_verdict(s, R) -> Verdict:
    name = "B(X,Y) as the 1/32 combination of D values and 24 eps P on D"
    for point in s.sample_points:
        res = b_expression_residual(s, R, point)
        if res != 0:
            where = ", ".join(f"{k}={v}" for k, v in point.items())
            return Verdict(name, False, f"at {where}: residual {res}")
    return Verdict(name, True)


def uniqueness_hypotheses(s, R, ctx: Context, P, c) -> list[Verdict]:
    """R and S(c) satisfy the hypotheses that make R determined by H."""
    if c is None:
        return [skipped("R and S(c) agree on kernel-type arguments", "not a space form")]
    S = cv.space_form_tensor(s, c)
    r04, Pi = R.r04, ctx.Pi
    eps = s.epsilon_sum
    sym = [
        zero_verdict("antisymmetric in slots 1,2", S + S.transpose(1, 0, 2, 3)),
        zero_verdict("antisymmetric in slots 3,4", S + S.transpose(0, 1, 3, 2)),
        zero_verdict("pair symmetry", S - S.transpose(2, 3, 0, 1)),
        zero_verdict("first Bianchi", S + S.transpose(0, 2, 3, 1) + S.transpose(0, 3, 1, 2)),
    ]
    out = [combine("S(c) has the algebraic curvature symmetries", sym)]
    v = contract(S, 2, ctx.phi) + contract(S, 3, ctx.phi) - P * eps
    out.append(ctx.zero("S(c)(X,Y,phiZ,W) + S(c)(X,Y,Z,phiW) = eps P on D", project(v, Pi)))
    diff = r04 - S
    parts = []
    for a in range(s.r):
        xa = ctx.xi[a]
        t = along(diff, 1, xa)  # [x1, x2, y]
        parts.append(zero_verdict("a", project(symmetrize_pairs(t, [(0, 1)]), Pi)))
        for b in range(s.r):
            xb_ = ctx.xi[b]
            t = along(along(diff, 2, xb_), 0, xa)  # [x, y]
            parts.append(zero_verdict("b", project(t, Pi)))
            for c_ in range(s.r):
                t = along(along(along(diff, 3, ctx.xi[c_]), 2, xb_), 0, xa)
                parts.append(zero_verdict("c", project(t, Pi)))
    kernel = np.einsum("abcd,pa,qb,rc,sd->pqrs", diff, ctx.xi, ctx.xi, ctx.xi, ctx.xi)
    parts.append(zero_verdict("d", kernel))
    out.append(combine("R and S(c) agree on kernel-type arguments", parts))
    return out


def space_form_verdicts(s, R, ctx: Context, c) -> list[Verdict]:
    out = []
    if c is None:
        return [skipped("R = S(c) for constant phi-sectional curvature c", "phi-sectional curvature is not constant")]
    out.append(ctx.zero("R = S(c) for constant phi-sectional curvature c", R.r04 - cv.space_form_tensor(s, c)))
    parts = []
    for i, E in enumerate(cv.frame_candidates(s)):
        gee = E.dot(ctx.g).dot(E)
        phiE = ctx.phi.dot(E)
        val = cv.form(R.r04, E, phiE, E, phiE)
        parts.append(zero_verdict(f"-phi^2 d{s.coords[i]}", np.array([val - gee * gee * c], dtype=object)))
    out.append(combine("R(X,phiX,X,phiX) = c g(X,X)^2", parts))
    residual = R.r04 - cv.space_form_tensor(s, Fraction(c) + 1)
    nonzero = not all(f.is_zero() for f in residual.reshape(-1))
    out.append(Verdict("S(c+1) differs from R", nonzero))
    return out


def special_suite(s, R, ctx: Context, c) -> list[Verdict]:
    """Checks for sum eps_a = 0."""
    aux = cv.aux_tensors(s, R)
    Q, Pi = aux.Q, ctx.Pi
    out = []
    parts1, parts2, parts3 = [], [], []
    for a in range(s.r):
        xa = ctx.xi[a]
        t = project(along(Q, 0, xa), Pi)  # Q(xi_a, Y; Z, W)
        parts3.append(zero_verdict(f"alpha={a + 1}", t))
        for b in range(s.r):
            xb_ = ctx.xi[b]
            want = np.einsum("wy->yw", ctx.Phi) * (-ctx.eps[a] * ctx.eps[b])  # -eps eps g(W, phiY)
            want = project(want, Pi)
            t1 = project(along(along(Q, 2, xb_), 0, xa), Pi)  # [y, w]
            t2 = project(along(along(Q, 3, xb_), 1, xa), Pi)
            parts1.append(zero_verdict(f"alpha={a + 1}, beta={b + 1}", t1 - want))
            parts2.append(zero_verdict(f"alpha={a + 1}, beta={b + 1}", t2 - want))
    out.append(combine("Q(xi_a,Y;Z,W) = 0 for Y,Z,W in D", parts3))
    out.append(combine("Q(xi_a,Y;xi_b,W) = -eps_a eps_b g(W,phiY) on D", parts1))
    out.append(combine("Q(Y,xi_a;W,xi_b) = -eps_a eps_b g(W,phiY) on D", parts2))
    out.extend(d_quadratic_identities(ctx, R.r04, aux.P, 0, with_p=False)[:1])
    cc = 0 if c is None else c
    out.append(
        ctx.zero(
            "S(c) agrees with its eps = 0 form",
            cv.space_form_tensor(s, cc) - cv.space_form_tensor_special(s, cc),
        )
    )
    return out
