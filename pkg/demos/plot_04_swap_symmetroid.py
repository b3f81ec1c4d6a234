"""
Exchanging two subsystems
=========================

Two copies of G(Omega_2) side by side, with substitutions that swap the
factors.  Only two bisections are flat, and both come from natural
transformations, so they embed in the canonical symmetroid.
"""

from pathlib import Path

import symmetroids
from symmetroids import flat_bisection_group, inner_symmetry_group, wigner_embedding
from symmetroids.dsl import load_symmetroid

data = Path(symmetroids.__file__).parent / "data"
s = load_symmetroid(data / "swap.smd")
print(s.n_cells, "cells over", s.base.n_arrows, "arrows")

flat = flat_bisection_group(s)
print(flat.report.render())
for b in flat.elements:
    moved = [s.labels[c] for c in b.cells if not s.labels[c].startswith("1[")]
    print(len(moved), "non-trivial cells:", moved)

inner = inner_symmetry_group(s, flat)
for i, nt in inner.transformations.items():
    print("element", i, "Phi =", nt.describe())

# the non-trivial flat bisection as a product of a left and a right translation
i = next(i for i in inner.members if i != flat.identity)
w = wigner_embedding(s, flat[i], inner.transformations[i])
print(w.report.render())
for row in w.transcript()[:4]:
    print(row)
