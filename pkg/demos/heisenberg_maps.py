"""Unipotent radicals mapping onto Heisenberg groups, checked on random elements.

Run with ``python3 demos/heisenberg_maps.py``.
"""

import json
import random
from pathlib import Path

from orbitlift import YoungTableau, build_moment_lift
from orbitlift.dualpair import WSpace, alpha_T, phi_T
from orbitlift.sampling import rand_mtilde, rand_n_element
from orbitlift.sl2 import alpha_gamma, heisenberg_coordinates, heisenberg_group

rng = random.Random(2024)

# rows of both parities give odd weight gaps, hence a nonzero g_-1
data = Path(__file__).resolve().parent.parent / "data" / "example14.json"
tab, eps = YoungTableau.from_json(json.loads(data.read_text()))
lift = build_moment_lift(tab, eps)
G, Gt = lift.grading, lift.grading_t
print("lift of", tab.exponent_notation(), "->", lift.tableau_t.exponent_notation())

n = rand_n_element(rng, G, bound=3)
T, Z = heisenberg_coordinates(n, G)
print("n = exp(T) exp(Z) with T in degrees", sorted(G.degrees_of(T)), "and Z in degrees", sorted(G.degrees_of(Z)))

H = heisenberg_group(G)
a, b = rand_n_element(rng, G, 3), rand_n_element(rng, G, 3)
print("alpha_gamma(ab) == alpha_gamma(a) alpha_gamma(b):",
      alpha_gamma(a @ b, lift.gamma, G) == H.mul(alpha_gamma(a, lift.gamma, G), alpha_gamma(b, lift.gamma, G)))

HW = WSpace(lift).heisenberg_group()
at, bt = rand_n_element(rng, Gt, 3), rand_n_element(rng, Gt, 3)
lhs = alpha_T(lift, a @ b, at @ bt)
rhs = HW.mul(alpha_T(lift, a, at), alpha_T(lift, b, bt))
print("alpha_T is multiplicative:", lhs == rhs, " center value", lhs.center)

m1, m2 = rand_mtilde(rng, lift, 3), rand_mtilde(rng, lift, 3)
print("phi_T(m1 m2) == phi_T(m1) phi_T(m2):", phi_T(lift, m1 @ m2) == phi_T(lift, m1) @ phi_T(lift, m2))
