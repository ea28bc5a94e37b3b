"""Quaternionic lifts, and the stable range where every X has a preimage.

Run with ``python3 demos/beyond_the_field.py``.
"""

import random

from orbitlift import AlgebraSpec, DualPair, HermitianModule, YoungTableau, build_moment_lift, moment
from orbitlift.dualpair import isotropic_split, stable_range_lift
from orbitlift.sampling import rand_lie_element

ham = AlgebraSpec.quaternion(-1, -1)
i = ham.element(0, 1, 0, 0)
j = ham.element(0, 0, 1, 0)
print("i j =", i * j, " j i =", j * i)

# A Hermitian row of length one over H lifts to a skew-Hermitian space.
tab = YoungTableau.from_forms([(1, HermitianModule.diagonal([1, 2], 1, ham))])
lift = build_moment_lift(tab, 1, dim_Vtilde=5)
print(tab.exponent_notation(), "over H lifts to", lift.tableau_t.exponent_notation())
print("all checks pass:", all(lift.checks().values()))

# Stable range: sp(4) into an 8-dimensional split orthogonal space.
rng = random.Random(5)
V = HermitianModule.hyperbolic(4)
Vt = HermitianModule.diagonal([1, -1, 2, -2, 1, -1, 3, -3])
pair = DualPair(V, Vt)
split = isotropic_split(Vt, V.dim)
X = rand_lie_element(rng, V, bound=4)
T = stable_range_lift(X, pair, split)
print("random X, not necessarily nilpotent; T*T == X:", moment(T, pair)[0] == X)
