"""Pipelines behind the three CLI commands, each producing a Report."""

from __future__ import annotations

from typing import Optional

from . import curvature as cv
from . import identities as ids
from .linalg import matrix_det
from .planes import generate_planes
from .report import Report, Verdict, skipped
from .specfile import ManifoldSpec
from .structure import (
    GffStructure,
    check_killing,
    classify,
    d_signatures,
    pointwise_ranks,
    sampled_signatures,
)


FLAG_NAMES = ("normal (N = 0)", "d Phi = 0", "d eta^a = 0", "d eta^a = Phi")


def _eps_text(eps) -> str:
    return "(" + ", ".join(f"{e:+d}" for e in eps) + ")"


def _signature_summary(entries) -> str:
    counts: dict = {}
    singular = 0
    for _, sig in entries:
        if sig is None:
            singular += 1
        else:
            counts[sig] = counts.get(sig, 0) + 1
    parts = [f"({p},{m}) at {k}/{len(entries)} points" for (p, m), k in sorted(counts.items())]
    if singular:
        parts.append(f"degenerate at {singular}/{len(entries)} points")
    return "; ".join(parts)


def structure_report(s: GffStructure, with_space_form: bool = True) -> tuple[Report, object]:
    """Axioms and classification with basic invariants; detects space forms for S structures."""
    rep = Report()
    cls = classify(s)
    rep.classification = cls.classification
    rep.add(*(v for v in cls.verdicts if v.name not in FLAG_NAMES))
    rep.note("dim", str(s.dim))
    rep.note("frame size r", str(s.r))
    try:
        rep.note("det g", matrix_det(s.g.comps))
    except ZeroDivisionError:
        rep.note("det g", "0")
    if cls.flags.get("valid"):
        rep.note("epsilon", _eps_text(s.epsilon))
        rep.note("sampled signature", _signature_summary(sampled_signatures(s)))
        rep.note("signature on D", _signature_summary(d_signatures(s)))
        ranks = sorted(set(pointwise_ranks(s)))
        rep.note("rank phi at sample points", ", ".join(map(str, ranks)))
        rep.note("structure class", cls.classification)
        # class-defining properties are facts, not pass/fail verdicts
        for v in (v for v in cls.verdicts if v.name in FLAG_NAMES):
            rep.note(v.name, "yes" if v.holds else f"no, {v.witness}")
    if with_space_form and cls.classification == "S":
        c = cv.detect_space_form(s, s.curvature)
        if c is not None:
            rep.classification = "S-space-form"
            rep.space_form_c = c
    return rep, cls


def classify_report(s: GffStructure) -> Report:
    rep, _ = structure_report(s)
    return rep


def curvature_report(
    s: GffStructure,
    point: Optional[dict] = None,
    plane: Optional[tuple] = None,
    phi_vector=None,
) -> Report:
    """Christoffel symbols and curvature self-checks, plus requested sectional values.

    Degenerate or dependent planes raise the curvature module's errors; the
    CLI maps them to exit code 1.
    """
    rep, cls = structure_report(s)
    if not cls.flags.get("valid"):
        return rep
    conn = s.connection
    labels = s.coords
    for (k, i, j), f in conn.nonzero_symbols():
        if i <= j:
            rep.note(f"Gamma^{k + 1}_{i + 1}{j + 1} ({labels[k]}; {labels[i]}, {labels[j]})", f)
    rep.add(conn.is_torsion_free(), cv.metric_compatibility(conn, s.g))
    R = s.curvature
    rep.add(*R.symmetry_verdicts())
    if plane is not None:
        X, Y = plane
        spec = cv.PlaneSpec(dict(point or {}), tuple(X), tuple(Y))
        rep.note("sectional curvature K(X,Y)", cv.sectional_curvature(R, s.g, spec))
        if cls.classification == "S":
            try:
                rep.note("K(X,Y) from phi-sectional curvatures", cv.sectional_from_phi(s, R, spec))
            except cv.ReconstructionInapplicable as exc:
                rep.note("K(X,Y) from phi-sectional curvatures", f"reconstruction inapplicable at this plane ({exc})")
    if phi_vector is not None:
        rep.note("phi-sectional curvature H(X)", cv.phi_sectional_curvature(s, R, point or {}, phi_vector))
    if rep.space_form_c is not None:
        rep.add(Verdict("R = S(c)", True, None))
    return rep


def reconstruction_verdicts(s, R, per_kind: int = 10) -> list[Verdict]:
    planes = generate_planes(s, R, per_kind=per_kind)
    bad, kernel_bad = [], []
    for tp in planes:
        direct = cv.sectional_curvature(R, s.g, tp.plane)
        rebuilt = cv.sectional_from_phi(s, R, tp.plane)
        if direct != rebuilt:
            bad.append(f"{tp.kind} plane at {tp.plane.point}: direct {direct}, rebuilt {rebuilt}")
        if tp.kind == "kernel":
            xi = list(tp.plane.Y)
            a = next(i for i in range(s.r) if list(cv._structure_at(s, tp.plane.point)["xi"][i]) == xi)
            if direct != s.epsilon[a]:
                kernel_bad.append(f"K = {direct} for xi_{a + 1}")
    n_kernel = sum(tp.kind == "kernel" for tp in planes)
    return [
        Verdict(
            f"K from phi-sectional curvatures equals direct K ({len(planes)} planes)",
            not bad and len(planes) > 0,
            bad[0] if bad else (None if planes else "no applicable planes found"),
        ),
        Verdict(
            f"K(X, xi_a) = eps_a on kernel-mixed planes ({n_kernel} planes)",
            not kernel_bad and n_kernel > 0,
            kernel_bad[0] if kernel_bad else None,
        ),
    ]


def verify_report(s: GffStructure) -> Report:
    """Run every identity whose hypotheses hold; the rest are reported as skipped."""
    rep, cls = structure_report(s)
    flags = cls.flags
    if not flags.get("valid"):
        rep.add(skipped("identity suites", "precondition failed: not a metric g.f.f-structure"))
        return rep
    ctx = ids.Context(s)
    conn = s.connection
    rep.add(conn.is_torsion_free(), cv.metric_compatibility(conn, s.g))
    R = s.curvature
    rep.add(*R.symmetry_verdicts())
    rep.add(*ids.metric_gff_suite(ctx, flags))
    killing = check_killing(s)
    rep.add(*killing)
    is_s = cls.classification == "S"
    rep.add(ids.killing_criterion(ctx, killing, ids.s_formula(ctx), is_s))
    if flags.get("contact"):
        rep.add(*ids.almost_s_suite(ctx, flags))
    else:
        rep.add(skipped("almost-S identities", "precondition failed: d eta^a = Phi does not hold"))
    if not is_s:
        rep.add(skipped("S identities", "precondition failed: structure is not S"))
        rep.add(skipped("curvature identities of S-manifolds", "precondition failed: structure is not S"))
        return rep
    c = rep.space_form_c
    rep.add(*ids.s_suite(ctx, killing))
    rep.add(*ids.curvature_identity_suite(s, R, ctx, c))
    rep.add(*ids.space_form_verdicts(s, R, ctx, c))
    rep.add(*reconstruction_verdicts(s, R))
    if s.epsilon_sum == 0:
        rep.add(*ids.special_suite(s, R, ctx, c))
    else:
        rep.add(skipped("identities for sum eps_a = 0", "precondition failed: sum eps_a is not 0"))
    return rep


def build_structure(spec: ManifoldSpec) -> GffStructure:
    return GffStructure.from_spec(spec)
