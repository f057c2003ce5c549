"""
Vertex Gramians and the matrix classes they fall into
======================================================

"""

import numpy as np

from nonobtuse import (
    Simplex,
    all_vertex_gramians,
    classify,
    gramian_at_vertex,
    gramian_from_simplex,
    inverse,
)
from nonobtuse.lab import generate
from nonobtuse.scalar import fmt


def show(A):
    return np.vectorize(fmt)(np.asarray(A))


# an obtuse triangle, Gramian taken at the origin
S = Simplex.from_points([[0, 0], [1, 0], [2, 1]])
Gu = gramian_from_simplex(S)
print("G at (0,0):\n", show(Gu.G))
print("inverse:\n", show(inverse(Gu)))

# the same triangle seen from (1,0): the obtuse angle sits at the base
Gv = gramian_at_vertex(Gu, 1)
print("G at (1,0):\n", show(Gv.G))
print("inverse:\n", show(inverse(Gv)))

for name, G in (("origin", Gu), ("(1,0)", Gv)):
    r = classify(G)
    print(f"{name:7s} inverse M-matrix={r.in_M}  weakly dominant={r.in_Mdd}")

# a unit path simplex: one Gramian is a staircase, the others ultrametric
P = generate("path", 4, d=[1, 1, 1, 1])
for G in all_vertex_gramians(gramian_from_simplex(P)):
    r = classify(G)
    print(f"base {G.base}: type_d={r.type_d} ultrametric={r.ultrametric} in_Mdd={r.in_Mdd}")
