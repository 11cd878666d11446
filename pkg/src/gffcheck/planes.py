"""Deterministic generation of rational test planes.

Planes in D are built from exactly unitizable vectors so the phi-sectional
reconstruction can run without square roots.  Rational rotations come from
Pythagorean triples, and their hyperbolic analogues for mixed signs.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import curvature as cv

# (p, q, r) with p^2 + q^2 = r^2 and with p^2 - q^2 = r^2
_TRIPLES = ((3, 4, 5), (4, 3, 5), (5, 12, 13), (12, 5, 13), (8, 15, 17))
_HYPERBOLIC = ((5, 4, 3), (13, 12, 5), (5, 3, 4), (17, 15, 8))


@dataclass(frozen=True)
class TestPlane:
    kind: str  # "D", "mixed" or "kernel"
    plane: cv.PlaneSpec


def unit_vectors_in_d(s, point, bound: int = 1, limit: int = 24) -> list:
    """Unit vectors of D at ``point`` obtained as unitized projections -phi^2 a."""
    at = cv._structure_at(s, point)
    g = at["g"]
    proj = -at["phi"].dot(at["phi"])
    seen, out = set(), []
    for a in itertools.product(range(-bound, bound + 1), repeat=s.dim):
        v = proj.dot(cv.as_vector(a))
        if all(x == 0 for x in v):
            continue
        try:
            u, sign = cv.unitize(g, v)
        except cv.ReconstructionInapplicable:
            continue
        key = tuple(u)
        if key in seen or tuple(-u) in seen:
            continue
        seen.add(key)
        out.append((u, sign))
        phiu = at["phi"].dot(u)
        if tuple(phiu) not in seen and tuple(-phiu) not in seen:
            seen.add(tuple(phiu))
            out.append((phiu, sign))
        if len(out) >= limit:
            break
    return out


def _rotations(g, U, V):
    """Rational unit combinations of two orthogonal unit vectors U, V."""
    eu, ev = cv.form(g, U, U), cv.form(g, V, V)
    if cv.form(g, U, V) != 0:
        return []
    table = _TRIPLES if eu == ev else _HYPERBOLIC
    return [(U * p + V * q) / r for p, q, r in table]


def d_plane_pairs(s, point):
    """Candidate (X, Y) unit pairs in D at the point, in a fixed order."""
    at = cv._structure_at(s, point)
    g = at["g"]
    units = unit_vectors_in_d(s, point)
    pool = [u for u, _ in units]
    for (U, _), (V, _) in itertools.combinations(units, 2):
        pool.extend(_rotations(g, U, V))
    for X, Y in itertools.combinations(pool, 2):
        if cv._independent(X, Y):
            yield X, Y


def _reconstructible(s, R, plane) -> bool:
    try:
        cv.sectional_from_phi(s, R, plane)
    except (cv.ReconstructionInapplicable, cv.DegeneratePlaneError, cv.LinearDependenceError):
        return False
    return True


def generate_planes(s, R, per_kind: int = 10, seed: int = 0, points=None) -> list[TestPlane]:
    """Non-degenerate planes on which the reconstruction is applicable.

    ``per_kind`` planes each of kinds "D" (both vectors in D), "mixed"
    (both vectors with kernel components) and "kernel" (X in D, Y = xi_a).
    """
    rng = random.Random(seed)
    points = list(points if points is not None else s.sample_points)
    found = {"D": [], "mixed": [], "kernel": []}
    for point in points:
        at = cv._structure_at(s, point)
        xis = [at["xi"][a] for a in range(s.r)]
        pairs = list(d_plane_pairs(s, point))
        rng.shuffle(pairs)
        for X, Y in pairs:
            if all(len(v) >= per_kind for v in found.values()):
                return _flatten(found)
            if len(found["D"]) < per_kind:
                plane = cv.PlaneSpec(dict(point), tuple(X), tuple(Y))
                if _reconstructible(s, R, plane):
                    found["D"].append(plane)
            if len(found["mixed"]) < per_kind:
                a = [Fraction(rng.randint(-2, 2)) for _ in xis]
                b = [Fraction(rng.randint(-2, 2)) for _ in xis]
                Xm = X + sum((x * c for x, c in zip(xis, a)), np.zeros(s.dim, dtype=object))
                Ym = Y + sum((x * c for x, c in zip(xis, b)), np.zeros(s.dim, dtype=object))
                plane = cv.PlaneSpec(dict(point), tuple(Xm), tuple(Ym))
                if any(a) and any(b) and _reconstructible(s, R, plane):
                    found["mixed"].append(plane)
            if len(found["kernel"]) < per_kind:
                xi = xis[len(found["kernel"]) % s.r]
                plane = cv.PlaneSpec(dict(point), tuple(X), tuple(xi))
                if _reconstructible(s, R, plane):
                    found["kernel"].append(plane)
    return _flatten(found)


def _flatten(found) -> list[TestPlane]:
    return [TestPlane(kind, p) for kind in ("D", "mixed", "kernel") for p in found[kind]]
