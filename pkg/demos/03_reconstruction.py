"""
Sectional curvature from phi-sectional curvature
================================================

On an S-manifold every sectional curvature can be rebuilt from values of
H.  We rebuild K on rational test planes and compare with the direct
computation.  We also show what happens when the 24 eps term is
given the opposite sign.
"""

from gffcheck import GffStructure, builtin_fixture
from gffcheck import curvature as cv
from gffcheck.planes import generate_planes

s = GffStructure.from_spec(builtin_fixture("example1"))
R = s.curvature

# the generator mixes planes inside D with planes that meet the kernel
planes = generate_planes(s, R, per_kind=4)
for tp in planes:
    direct = cv.sectional_curvature(R, s.g.comps, tp.plane)
    rebuilt = cv.sectional_from_phi(s, R, tp.plane)
    print(f"{tp.kind:6s} direct={str(direct):>8s} rebuilt={str(rebuilt):>8s}")

###############################################################################
# With eps = -2 the sign of the eps term matters.

for tp in planes:
    if tp.kind != "D":
        continue
    direct = cv.sectional_curvature(R, s.g.comps, tp.plane)
    flipped = cv.sectional_from_phi(s, R, tp.plane, p_term_sign=+1)
    print(f"direct={direct}  with +24 eps: {flipped}")

###############################################################################
# Degenerate planes are refused rather than divided by zero.  At the origin
# dx1 + dy1 + xi_1 is null and orthogonal to dx2.

try:
    origin = {c: 0 for c in s.coords}
    cv.sectional_curvature(R, s.g.comps, cv.PlaneSpec(origin, (1, 0, 1, 0, 1, 0), (0, 1, 0, 0, 0, 0)))
except cv.DegeneratePlaneError as exc:
    print("refused:", exc)
