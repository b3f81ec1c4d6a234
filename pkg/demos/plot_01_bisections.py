"""
The group of bisections of C2(4)
================================

C2(4) has two objects, + and -, and an internal two-state register that
flips on the a1/b1 transitions.  Its bisections form a group of order 8.
"""

from symmetroids import c2_4, enumerate_bisections, semidirect_structure
from symmetroids.catalog import C2_4_BISECTIONS
from symmetroids.cli import format_table

g = c2_4()
print("objects:", g.object_labels)
print("arrows: ", g.arrow_labels)

# every bisection picks one outgoing arrow at each object
bg = enumerate_bisections(g)
for b in bg:
    print(b.label(), "acts on objects as", [g.object_labels[y] for y in b.phi])

# the multiplication table, printed with the conventional names
print(format_table(bg, "paper"))

# bisections that fix every object form a normal Klein four-group; the
# quotient records how the objects are permuted
names = {bg.index((g.arrow(p), g.arrow(m))): k for k, (p, m) in C2_4_BISECTIONS.items()}
section = {0: bg.identity, 1: next(i for i, k in names.items() if k == "b_4")}
sd = semidirect_structure(bg, section)
print(sd.report.render())
for k in sd.kernel:
    print(f"W_sigma({names[k]}) = {names[sd.W(1, k)]}")
