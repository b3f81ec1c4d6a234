"""
Rebuilding a groupoid from its bisections
=========================================

A connected groupoid is a quotient of the action groupoid of its bisection
group on the objects.  The kernel collects the pairs (x, b) where b picks
the unit at x.
"""

from symmetroids import c2_4, pair_groupoid, reconstruct

r = reconstruct(c2_4())
print(r.report.render())

# arrows of the action groupoid are triples (y; b; x) with y = b.x
labels = r.bisections.labels
g = r.groupoid


def triple(a):
    y, b, x = r.triple(a)
    return f"({g.object_labels[y]};{labels[b]};{g.object_labels[x]})"


print("kernel:", [triple(a) for a in r.kernel.arrows])

# each class of the quotient is a fiber of A: the pairs picking the same arrow
for cls in r.quotient.classes:
    arrow = g.arrow_labels[r.functor(cls[0])]
    print(f"{arrow:>3} <- {', '.join(triple(a) for a in cls)}")

# the same works for any connected groupoid; for a pair groupoid the kernel is just units
small = reconstruct(pair_groupoid(3))
print("G(Omega_3):", len(small.bisections), "bisections, kernel size", len(small.kernel))
