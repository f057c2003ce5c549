"""
One obtuse dihedral angle, and a nonnegative factor anyway
===========================================================

Two unit cubes glued along a face contain a tetrahedron whose four
triangles are nonobtuse but which has one obtuse dihedral angle.
"""

import numpy as np

from nonobtuse import (
    Simplex,
    classify,
    cp_factor_nonobtuse_facets,
    dihedral_angles,
    dihedral_report,
    gramian_at_vertex,
    gramian_from_simplex,
    inverse,
    sign_pattern_decomposition,
)
from nonobtuse.scalar import fmt

T = Simplex.from_points([[1, 0, 0], [0, 1, 0], [1, 2, 0], [1, 1, 1]])
G = gramian_at_vertex(gramian_from_simplex(T), 1)
print("Gramian at (0,1,0):\n", np.vectorize(fmt)(G.G))

rep = dihedral_report(G)
print("obtuse pairs:", rep.obtuse, "partners per facet:", rep.partners())
print("angles in degrees:\n", np.round(np.degrees(np.array(dihedral_angles(G), dtype=float)), 2))

# the inverse splits into a dominant block part minus a nonnegative coupling
sp = sign_pattern_decomposition(inverse(G))
print("paired indices:", sp.pairs)
print("D:\n", np.vectorize(fmt)(sp.D))
print("C:\n", np.vectorize(fmt)(sp.C))

# not nonobtuse, yet it still embeds in the nonnegative orthant
print("in M_dd:", classify(G).in_Mdd)
cp = cp_factor_nonobtuse_facets(G)
print("ordering", cp.ordering, "via", cp.method)
print(np.round(np.array(cp.U, dtype=float), 4))
