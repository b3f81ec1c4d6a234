"""
Substitutions on a groupoid
===========================

Cells of the canonical symmetroid replace an arrow b by lam o b o rho, or by
lam o b^-1 o rho when the parity is negative.  The little symmetroid only
uses isotropy arrows for lam and rho, plus the inversions.
"""

from symmetroids import (
    c2_4, canonical_little_symmetroid, canonical_symmetroid, reversibility_symmetroid,
    verify_two_groupoid, vertical_orbits,
)
from symmetroids.symmetroid import is_sub_two_groupoid
from symmetroids.symmetry import SymmetroidBisection, compute_cocycle, identity_symmetroid_bisection

g = c2_4()
T, S0, S = reversibility_symmetroid(g), canonical_little_symmetroid(g), canonical_symmetroid(g)
for s in (T, S0, S):
    rep = verify_two_groupoid(s)
    print(f"{s.kind:>13}: {s.n_cells:4d} cells, axioms {'hold' if rep.ok else 'FAIL'}")
print("T inside S0:", is_sub_two_groupoid(T, S0).ok, " S0 inside S:", is_sub_two_groupoid(S0, S).ok)

# which arrows can be substituted for which inside S0
for orbit in vertical_orbits(S0):
    print("orbit", [g.arrow_labels[a] for a in orbit])

# cells of S0 over a1
a1 = g.arrow("a1")
print([S0.labels[i] for i in S0.cells_over(a1)])

# a bisection of S that is not flat: replace s+ by <s+|s+|s+> and keep the rest
cells = list(identity_symmetroid_bisection(S).cells)
sp = g.arrow("s+")
cells[sp] = S.index[(sp, sp, sp, 1)]
b = SymmetroidBisection(S, cells)
gamma = compute_cocycle(b, g.arrow("a1"), g.arrow("b2"))
print("cocycle at (a1, b2):", S.labels[gamma])
