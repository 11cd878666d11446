"""
The three bundled manifolds
===========================

Each bundled example is a polynomial structure on a coordinate chart.  We
load them and let the classifier place them.
"""

from gffcheck import GffStructure, builtin_fixture, classify
from gffcheck.linalg import matrix_char_poly, matrix_det
from gffcheck.structure import sampled_signatures

# a definition is plain data until it is turned into a structure
spec = builtin_fixture("example3")
print("coordinates:", spec.coords, " frame size:", spec.r)

s = GffStructure.from_spec(spec)

# determinants and characteristic polynomials are exact polynomial identities
print("det g =", matrix_det(s.g.comps))
print("det(g - lambda I) =", matrix_char_poly(s.g.comps).as_expr())

# the index is read off by exact congruence diagonalization at sample points
for point, sig in sampled_signatures(s)[:3]:
    print(point, "->", sig)

# the causal characters of the characteristic fields
print("eps =", s.epsilon, " sum =", s.epsilon_sum)

###############################################################################
# Classification runs the structural checks and reports the defining flags.

for name in ("example1", "example2", "example3"):
    st = GffStructure.from_spec(builtin_fixture(name))
    cls = classify(st)
    print(f"{name}: {cls.classification}  eps={st.epsilon}  flags={cls.flags}")
