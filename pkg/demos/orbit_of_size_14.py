"""Walk through one nilpotent orbit of sp(14) and its lift to an orthogonal group.

Run with ``python3 demos/orbit_of_size_14.py`` from the repository root.
"""

import json
from pathlib import Path

from orbitlift import build_module, build_moment_lift, jordan_type, theta_lift_tableau
from orbitlift.dualpair import sigma_report
from orbitlift.sl2 import grade, grading_report, mx_dimension_report
from orbitlift.tableaux import YoungTableau

here = Path(__file__).resolve().parent.parent
tab, eps = YoungTableau.from_json(json.loads((here / "data" / "example14.json").read_text()))
print("tableau", tab.exponent_notation(), "with epsilon", eps)
for row in tab.rows:
    print("  row of length %d, attached form" % row.t, [[str(x) for x in r] for r in row.form.gram.coeffs[0]])

# The module is a sum of A_j (x) k^{t_j}; X acts as a lowering operator on each block.
V, gamma = build_module(tab, eps)
print("dim V =", V.dim, " Jordan type of X:", jordan_type(gamma.X))

G = grade(gamma)
rep = grading_report(G)
print("weights of H on V:", rep["V_dims"])
print("graded pieces of g:", rep["g_dims"])
print("centralizer of gamma in g_0:", mx_dimension_report(gamma, G)["dim_m_X"])

# The smallest orthogonal space that can carry the lift adds one box per row.
dim_t = tab.size + tab.num_parts
print("lifted tableau in dim %d:" % dim_t, theta_lift_tableau(tab, eps, dim_t).exponent_notation())

lift = build_moment_lift(tab, eps)
print("moment lift checks:", lift.checks())

s = sigma_report(lift)
print("dim g_-1 + dim g~_-1 = %d + %d, dim W = %d" % (s["dim_g_minus1"], s["dim_gt_minus1"], s["dim_W"]))
print("J_T carries the kappa forms onto the trace pairing:", s["gram_matches"])
