"""
A structure that is almost, but not, an S-manifold
==================================================

Replacing g by 2g - sum eps_a eta^a (x) eta^a keeps the structure
tensors compatible, so the result is still a metric structure.  The 2-form doubles
while d eta does not, and the characterizing formula for nabla phi breaks.
The checks report where.
"""

import numpy as np

from gffcheck import GffStructure, builtin_fixture, classify
from gffcheck import identities as ids
from gffcheck.report import serialize_report
from gffcheck.suite import verify_report

s = GffStructure.from_spec(builtin_fixture("example1"))
g2 = 2 * s.g.comps - sum(e * np.outer(t, t) for e, t in zip(s.epsilon, s.eta_arr))
p = s.with_metric(g2)

print("class:", classify(p).classification)

ctx = ids.Context(p)
for v in (ids.koszul_identity(ctx), ids.s_formula(ctx), ids.s_form_formula(ctx)):
    print(f"{v.status:6s} {v.name}  witness: {v.witness}")

###############################################################################
# The verify pipeline skips what no longer applies instead of failing it.

print(serialize_report(verify_report(p), "text"))
