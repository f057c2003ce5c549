"""Dual hulls, sub-orthocentric cells and sets, and triangle/tetrahedron taxonomy.

Everything below works on barycentric coordinates and the normal matrix N of
a vertex Gramian, so it runs in exact arithmetic even for simplices that are
only known through their Gramian.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .classes import blocking_columns, in_Mdd
from .scalar import Field, Q, fmt, scale_of
from .simplex import (
    FaceAccess,
    Simplex,
    VertexGramian,
    as_gramian,
    dihedral_report,
    foot_on_facet,
    gramian_from_simplex,
    normal_matrix,
    vertex_foot,
)


class NotNonobtuse(ValueError):
    pass


class DualHullUndefined(NotNonobtuse):
    pass


class PointOutsideS(ValueError):
    pass


def _signs(fld: Field, values, scale=1) -> list:
    return [fld.sign(v, scale) for v in values]


def nu(S: Simplex, x) -> int:
    """Number of closed facet half-spaces containing x."""
    lam = S.barycentric(x)
    return sum(1 for s in _signs(S.field, lam) if s >= 0)


INTERIOR, EXTERIOR, OUTSIDE, ON_PLANE = "interior+", "exterior-", "outside-cylinder", "on-facet-plane"


def _cylinder_side(fld: Field, N, lam, j: int) -> str:
    foot = foot_on_facet(N, lam, j)
    if any(s < 0 for i, s in enumerate(_signs(fld, foot)) if i != j):
        return OUTSIDE
    s = fld.sign(lam[j])
    return INTERIOR if s > 0 else EXTERIOR if s < 0 else ON_PLANE


def cylinder_side(S: Simplex, x, j: int) -> str:
    """Position of x relative to the cylinder over facet j.

    The cylinder holds the points whose projection onto facet j's hyperplane
    lands in the facet; the side is the sign of the distance to that
    hyperplane, positive towards the simplex.
    """
    N = normal_matrix(gramian_from_simplex(S))
    return _cylinder_side(S.field, N, S.barycentric(x), j)


@dataclass(frozen=True)
class DualHullCell:
    kind: str
    facet: int | None
    nu: int

    def to_json(self) -> dict:
        return {"kind": self.kind, "facet": self.facet, "nu": self.nu}


def _require_nonobtuse(VG: VertexGramian, exc=NotNonobtuse):
    if not in_Mdd(VG):
        raise exc("the simplex is not nonobtuse")


def dual_hull_cell(S: Simplex, x) -> DualHullCell:
    """Which piece of the dual hull S, S*_0, ..., S*_n contains x (or outside)."""
    VG = gramian_from_simplex(S)
    _require_nonobtuse(VG, DualHullUndefined)
    N = normal_matrix(VG)
    lam = S.barycentric(x)
    fld = S.field
    count = sum(1 for s in _signs(fld, lam) if s >= 0)
    if count == S.n + 1:
        return DualHullCell("inside-S", None, count)
    sides = [_cylinder_side(fld, N, lam, j) for j in range(S.n + 1)]
    for j, side in enumerate(sides):
        if side != EXTERIOR:
            continue
        if all(sides[i] in (INTERIOR, ON_PLANE) for i in range(S.n + 1) if i != j):
            return DualHullCell("S*", j, count)
    return DualHullCell("outside", None, count)


@dataclass(frozen=True)
class SubOrthoCells:
    """Cells S_l = intersection over j != l of conv{pi_j, F_l}.

    ``feet[j]`` are the barycentrics of pi_j.  For a nondegenerate cell,
    ``ratios[l][i]`` is the slope R_i with S_l = {lam_l >= 0, lam_i >= R_i lam_l}
    and ``apexes[l]`` the barycentrics of its apex; both are None when the
    cell is degenerate.
    """

    n: int
    feet: tuple
    ratios: tuple
    apexes: tuple

    @property
    def degenerate(self) -> tuple:
        return tuple(a is None for a in self.apexes)

    def apex_point(self, S: Simplex, l: int):
        a = self.apexes[l]
        return None if a is None else S.point(a)

    def cell_vertices(self, S: Simplex, l: int):
        """Vertices of S_l: the apex followed by the vertices of F_l."""
        a = self.apex_point(S, l)
        if a is None:
            return None
        return [a] + [S.vertices[i] for i in range(self.n + 1) if i != l]

    def to_json(self) -> dict:
        return {
            "feet": [[fmt(v) for v in f] for f in self.feet],
            "degenerate": list(self.degenerate),
            "apexes": [None if a is None else [fmt(v) for v in a] for a in self.apexes],
        }


def _cells_from_normals(fld: Field, N) -> SubOrthoCells:
    n = N.shape[0] - 1
    scale = scale_of(N)
    feet = tuple(vertex_foot(N, j) for j in range(n + 1))
    ratios, apexes = [], []
    for l in range(n + 1):
        if any(fld.sign(N[l, i], scale) == 0 for i in range(n + 1) if i != l):
            ratios.append(None)
            apexes.append(None)
            continue
        # Clip by conv{pi_j, F_l} one j at a time; each clip can only raise
        # the slopes of the constraints lam_i >= R_i lam_l.
        R = [N[0, 0] * 0] * (n + 1)
        for j in range(n + 1):
            if j == l:
                continue
            for i in range(n + 1):
                if i in (l, j):
                    continue
                r = N[i, j] / N[l, j]
                if r > R[i]:
                    R[i] = r
        R[l] = N[0, 0] * 0 + 1
        total = sum(R)
        ratios.append(tuple(R))
        apexes.append(np.array([r / total for r in R], dtype=N.dtype))
    return SubOrthoCells(n, feet, tuple(ratios), tuple(apexes))


def suborthocentric_cells(S) -> SubOrthoCells:
    """Explicit cells of a nonobtuse simplex (or of its vertex Gramian)."""
    VG = as_gramian(S)
    _require_nonobtuse(VG)
    return _cells_from_normals(VG.field, normal_matrix(VG))


def _in_cell_interior(fld: Field, cells: SubOrthoCells, lam, l: int) -> bool:
    R = cells.ratios[l]
    if fld.sign(lam[l]) <= 0:
        return False
    return all(fld.sign(lam[i] - R[i] * lam[l]) > 0 for i in range(cells.n + 1) if i != l)


def _in_facet_relint(fld: Field, lam, l: int) -> bool:
    return fld.sign(lam[l]) == 0 and all(fld.sign(lam[i]) > 0 for i in range(len(lam)) if i != l)


def subortho_member(VG: VertexGramian, lam, cells: SubOrthoCells | None = None) -> bool:
    """Membership of the point with barycentrics ``lam`` in the sub-orthocentric set.

    Points outside the simplex are not members.  A segment's set is its midpoint.
    """
    fld = VG.field
    if any(s < 0 for s in _signs(fld, lam)):
        return False
    n = VG.n
    if n == 0:
        return True
    if n == 1:
        return fld.cmp(lam[0], lam[1]) == 0
    if cells is None:
        cells = _cells_from_normals(fld, normal_matrix(VG))
    for l in range(n + 1):
        if cells.apexes[l] is None:
            continue
        if _in_facet_relint(fld, lam, l) or _in_cell_interior(fld, cells, lam, l):
            return False
    return True


def _point_bary_in_S(S: Simplex, x):
    x = S.field.array(x)
    lam = S.barycentric(x)
    if any(s < 0 for s in _signs(S.field, lam)):
        raise PointOutsideS("point is not in the simplex")
    if S.ambient_dim > S.n:
        diff = S.point(lam) - x
        if any(S.field.sign(v) != 0 for v in diff):
            raise PointOutsideS("point is not in the affine hull of the simplex")
    return lam


def in_suborthocentric_set(S: Simplex, x) -> bool:
    """x lies in S minus the open cells S_l and open facets F_l of nondegenerate cells."""
    VG = gramian_from_simplex(S)
    _require_nonobtuse(VG)
    lam = _point_bary_in_S(S, x)
    return subortho_member(VG, lam)


def in_open_cell_by_subsimplices(S: Simplex, x, l: int) -> bool | None:
    """Independent check of x in int(S_l) through every conv{pi_j, F_l}.

    Barycentrics with respect to each sub-simplex are computed from
    coordinates.  Returns None when the cell is degenerate.
    """
    VG = gramian_from_simplex(S)
    N = normal_matrix(VG)
    fld = S.field
    others = [i for i in range(S.n + 1) if i != l]
    inside = True
    for j in others:
        pi_j = S.point(vertex_foot(N, j))
        T = Simplex(np.stack([pi_j] + [S.vertices[i] for i in others]), fld)
        try:
            mu = T.barycentric(x)
        except Exception:
            return None
        inside = inside and all(s > 0 for s in _signs(fld, mu))
    return inside


def is_suborthocentric_simplex(S) -> bool:
    """All facets nonobtuse and every vertex projects into the sub-orthocentric
    set of its opposite facet."""
    VG = as_gramian(S)
    n = VG.n
    if n <= 1:
        return True
    faces = FaceAccess(VG)
    facets = []
    for j in range(n + 1):
        F = faces.gramian([i for i in range(n + 1) if i != j])
        if not in_Mdd(F):
            return False
        facets.append(F)
    N = normal_matrix(VG)
    for j in range(n + 1):
        foot = vertex_foot(N, j)
        lam = np.array([foot[i] for i in range(n + 1) if i != j], dtype=foot.dtype)
        if not subortho_member(facets[j], lam):
            return False
    return True


def _sq_lengths(VG: VertexGramian) -> dict:
    """Squared edge lengths keyed by local vertex pairs."""
    g = VG.G
    n = VG.n
    d = {}
    for k in range(1, n + 1):
        d[(0, k)] = g[k - 1, k - 1]
    for k, m in combinations(range(1, n + 1), 2):
        d[(k, m)] = g[k - 1, k - 1] + g[m - 1, m - 1] - 2 * g[k - 1, m - 1]
    return d


def _strongly_isosceles(fld: Field, sides) -> bool:
    a, b, c = sorted(sides)
    return fld.cmp(b, c, c) == 0


def classify_triangle_sides(a2, b2, c2, field: Field | None = None) -> set:
    """Flags of a triangle from its squared side lengths."""
    fld = field or Field()
    a2, b2, c2 = sorted(fld.coerce(v) for v in (a2, b2, c2))
    flags = set()
    s = fld.cmp(a2 + b2, c2, c2)
    if fld.cmp(a2, c2, c2) == 0:
        flags.add("equilateral")
    if fld.cmp(b2, c2, c2) == 0:
        flags.add("strongly-isosceles")
    if s == 0:
        flags.add("right")
    if s >= 0:
        flags.add("nonobtuse")
    else:
        flags.add("obtuse")
    return flags


def classify_triangle(T) -> set:
    """Flags {equilateral, right, strongly-isosceles, nonobtuse, obtuse}."""
    VG = as_gramian(T)
    if VG.n != 2:
        raise ValueError("a triangle has three vertices")
    d = _sq_lengths(VG)
    return classify_triangle_sides(*d.values(), field=VG.field)


def _edge_dot(VG: VertexGramian, e, f):
    """(v_b - v_a) . (v_d - v_c) for edges e=(a,b), f=(c,d) in local indices."""
    g = VG.G

    def ip(i, j):
        if i == 0 or j == 0:
            return g[0, 0] * 0
        return g[i - 1, j - 1]

    (a, b), (c, d) = e, f
    return ip(b, d) - ip(b, c) - ip(a, d) + ip(a, c)


def classify_tetrahedron(T) -> set:
    """Flags {path, cube-corner, orthogonal, orthocentric, semi-orthocentric,
    sub-orthocentric, type-I, type-II}."""
    VG = as_gramian(T)
    if VG.n != 3:
        raise ValueError("a tetrahedron has four vertices")
    fld = VG.field
    scale = scale_of(VG.G)
    flags = set()
    opposite = [((0, 1), (2, 3)), ((0, 2), (1, 3)), ((0, 3), (1, 2))]
    orth = [fld.sign(_edge_dot(VG, e, f), scale) == 0 for e, f in opposite]
    if any(orth):
        flags.add("semi-orthocentric")
    if all(orth):
        flags.add("orthocentric")
    edges = list(combinations(range(4), 2))
    for tree in combinations(edges, 3):
        verts = {v for e in tree for v in e}
        if len(verts) < 4 or _has_cycle(tree):
            continue
        if all(fld.sign(_edge_dot(VG, e, f), scale) == 0 for e, f in combinations(tree, 2)):
            flags.add("orthogonal")
            deg = [sum(v in e for e in tree) for v in range(4)]
            if max(deg) == 3:
                flags.add("cube-corner")
            else:
                flags.add("path")
    faces = FaceAccess(VG)
    if all(in_Mdd(faces.gramian([i for i in range(4) if i != j])) for j in range(4)):
        if not blocking_columns(VG):
            flags.add("sub-orthocentric")
    d = _sq_lengths(VG)
    L = max(d.values())
    for v in range(4):
        incident = [d[e] for e in edges if v in e]
        face = [d[e] for e in edges if v not in e]
        if all(fld.cmp(x, L, scale) == 0 for x in incident) and _strongly_isosceles(fld, face):
            flags.add("type-I")
    for e, f in opposite:
        rest = [d[x] for x in edges if x not in (e, f)]
        if all(fld.cmp(x, L, scale) == 0 for x in rest):
            flags.add("type-II")
    return flags


def _has_cycle(tree) -> bool:
    parent = {}

    def find(v):
        while parent.get(v, v) != v:
            v = parent[v]
        return v

    for a, b in tree:
        ra, rb = find(a), find(b)
        if ra == rb:
            return True
        parent[ra] = rb
    return False


def geometry_report(S) -> dict:
    """Projections of vertices, obtuse partners and sub-orthocentric cells."""
    VG = as_gramian(S)
    n = VG.n
    N = normal_matrix(VG)
    rep = dihedral_report(VG)
    fld = VG.field
    vertices = []
    for j in range(n + 1):
        foot = vertex_foot(N, j)
        lam = [foot[i] for i in range(n + 1) if i != j]
        vertices.append(
            {
                "vertex": VG.labels[j],
                "foot_barycentric": [fmt(v) for v in lam],
                "projects_onto_facet": all(fld.sign(v) >= 0 for v in lam),
            }
        )
    nonobtuse = in_Mdd(VG)
    out = {
        "n": n,
        "nonobtuse": nonobtuse,
        "vertices": vertices,
        "dihedral": rep.to_json(),
        "suborthocentric_simplex": is_suborthocentric_simplex(VG),
        "cells": _cells_from_normals(fld, N).to_json() if nonobtuse else None,
    }
    return out
