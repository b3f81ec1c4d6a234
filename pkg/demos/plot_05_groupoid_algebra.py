"""
Functions on a groupoid
=======================

Convolution sums over factorizations.  Characteristic functions of
bisections multiply like the bisections themselves, and a positive
definite function gives a state.
"""

import numpy as np

from symmetroids import c2_4, cyclic_group, enumerate_bisections, group_groupoid
from symmetroids.algebra import (
    GroupoidFunction, characteristic_of_bisection, convolve, delta, involution,
    invariance_under_substitution, is_positive_definite, state_functional, unit_element,
)
from symmetroids.symmetroid import canonical_little_symmetroid

g = c2_4()
prod = convolve(delta(g, "a1"), delta(g, "b1"))
print("delta_a1 * delta_b1 is supported on", [g.arrow_labels[a] for a in prod.support()])

bg = enumerate_bisections(g)
chi = [characteristic_of_bisection(b) for b in bg]
ok = all(convolve(chi[i], chi[j]) == chi[bg.mul(i, j)] for i in range(8) for j in range(8))
print("chi is a representation:", ok)
print("chi_b unitary:", all(convolve(involution(c), c) == unit_element(g) for c in chi))

# a positive definite function on Z2 and one that is not
z2 = group_groupoid(cyclic_group(2))
for vals in ([1, -1], [1, 2]):
    rep = is_positive_definite(GroupoidFunction(z2, vals))
    print(vals, "eigenvalues", np.round(rep.blocks[0].eigenvalues, 12), "PSD" if rep.ok else "not PSD")

phi = GroupoidFunction(z2, [1, -1])
rho = state_functional(phi)
print("rho(delta_e + delta_s) =", rho(delta(z2, "e") + delta(z2, "s")))

# a Hamiltonian that prefers a1 over a2 is not invariant under S0
h = GroupoidFunction.from_mapping(g, {"a1": 1})
print(invariance_under_substitution(h, canonical_little_symmetroid(g)).render())
