"""
Dual hulls and sub-orthocentric sets
====================================

"""

from nonobtuse import (
    Q,
    Simplex,
    classify_tetrahedron,
    dual_hull_cell,
    in_suborthocentric_set,
    is_suborthocentric_simplex,
    nu,
    suborthocentric_cells,
)
from nonobtuse.lab import generate
from nonobtuse.scalar import fmt

# an acute triangle: its three cells share the orthocenter as apex
tri = Simplex.from_points([[0, 0], [3, 0], [1, 3]])
cells = suborthocentric_cells(tri)
for l, apex in enumerate(cells.apexes):
    print(f"cell {l}: apex {[fmt(v) for v in tri.point(apex)]}")

# points beyond an edge that still project into every facet
x = [Q(7, 3), Q(16, 9)]
print("half-spaces containing x:", nu(tri, x), "->", dual_hull_cell(tri, x))

# the set left over is the three vertex-orthocenter segments
H = tri.point(cells.apexes[0])
for t in (Q(0), Q(1, 2), Q(1)):
    p = [a + t * (b - a) for a, b in zip(tri.vertices[1], H)]
    print("on segment", [fmt(v) for v in p], in_suborthocentric_set(tri, p))
print("centroid", in_suborthocentric_set(tri, tri.point([Q(1, 3)] * 3)))

# a path tetrahedron has only degenerate cells, so every point qualifies
P = generate("path", 3, d=[1, 1, 1])
print("path cells degenerate:", suborthocentric_cells(P).degenerate)
print("path flags:", sorted(classify_tetrahedron(P)))

for family in ("regular", "ultrametric", "nonobtuse-facets"):
    S = generate(family, 3, seed=4)
    print(f"{family:17s} sub-orthocentric={is_suborthocentric_simplex(S)}")
