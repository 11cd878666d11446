"""
Curvature of the Lorentzian example
===================================

The four dimensional example has eps_1 + eps_2 = 0.  Its Levi-Civita
connection is short enough to print in full, and its phi-sectional
curvature turns out to vanish identically.
"""

import numpy as np

from gffcheck import GffStructure, builtin_fixture
from gffcheck import curvature as cv

s = GffStructure.from_spec(builtin_fixture("example3"))
conn = s.connection

# nonzero Christoffel symbols, 1-based, lower indices ordered
for (k, i, j), f in conn.nonzero_symbols():
    if i <= j:
        print(f"Gamma^{k + 1}_{i + 1}{j + 1} = {f}")

R = s.curvature
print([(v.name, v.holds) for v in R.symmetry_verdicts()])

###############################################################################
# D is spanned by X = d/dx - y xi_1 - y xi_2 together with phi X = d/dy.

ch = s.chart
y = ch.coordinate("y")
X = np.array([ch.one, ch.zero, -y, -y], dtype=object)
print("g(X,X) =", X.dot(s.g.comps).dot(X))
print("H(X)   =", cv.phi_sectional_field(s, R, X))

# mixed planes with a characteristic field have K = eps_a
point = {"x": 0, "y": 2, "z1": 0, "z2": 0}
Xp = cv.eval_array(X, point)
for a, xi in enumerate(cv._structure_at(s, point)["xi"]):
    plane = cv.PlaneSpec(point, tuple(Xp), tuple(xi))
    print(f"K(X, xi_{a + 1}) =", cv.sectional_curvature(R, s.g.comps, plane))

###############################################################################
# Constant phi-sectional curvature pins the whole tensor down.

c = cv.detect_space_form(s, R)
print("space form constant c =", c)
residual = R.r04 - cv.space_form_tensor(s, c)
print("components of R - S(c) that are nonzero:", sum(not f.is_zero() for f in residual.reshape(-1)))
