"""Simplices, vertex Gramians, inward normals, dihedral angles and radii.

Vertices of a simplex are numbered 0..n.  A vertex Gramian based at vertex
``base`` has columns for the vertices in ``order``; inside a Gramian we use
*local* indices: 0 is the base and k >= 1 is the vertex of column k.  Facet i
is the facet opposite local vertex i, so row/column i of the normal matrix N
belongs to that facet.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from itertools import combinations

import numpy as np

from .linalg import NotPositiveDefinite, cholesky_upper, det, inverse, is_spd, solve
from .scalar import EXACT, Field, Q, as_matrix, field_of, fmt, scale_of


class Degenerate(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class Simplex:
    """n+1 affinely independent points; the ambient dimension may exceed n."""

    vertices: np.ndarray
    field: Field = EXACT

    @classmethod
    def from_points(cls, points, field: Field | None = None) -> "Simplex":
        if field is None:
            field = (
                Field(1e-9)
                if isinstance(points, np.ndarray) and points.dtype.kind == "f"
                else EXACT
            )
        V = field.array(points)
        if V.ndim != 2 or V.shape[0] < 1:
            raise Degenerate("vertices must be a nonempty list of points")
        S = cls(V, field)
        if S.n > S.ambient_dim:
            raise Degenerate(f"{S.n + 1} points cannot be affinely independent in R^{S.ambient_dim}")
        return S

    @property
    def n(self) -> int:
        return self.vertices.shape[0] - 1

    @property
    def ambient_dim(self) -> int:
        return self.vertices.shape[1]

    def edges(self, base: int = 0, order=None) -> np.ndarray:
        """Matrix P whose columns are v_k - v_base for k in ``order``."""
        order = _default_order(self.n, base) if order is None else tuple(order)
        return np.stack([self.vertices[k] - self.vertices[base] for k in order], axis=1) if order else np.zeros((self.ambient_dim, 0), dtype=self.vertices.dtype)

    def face(self, idx) -> "Simplex":
        return Simplex(self.vertices[list(idx)], self.field)

    def facet(self, j: int) -> "Simplex":
        return self.face([i for i in range(self.n + 1) if i != j])

    def centroid(self) -> np.ndarray:
        return self.vertices.sum(axis=0) / (self.n + 1)

    def point(self, bary) -> np.ndarray:
        """Point with the given barycentric coordinates."""
        return sum(b * v for b, v in zip(bary, self.vertices))

    def barycentric(self, x) -> np.ndarray:
        """Barycentric coordinates of the projection of x onto aff(S)."""
        x = self.field.array(x)
        G = gramian_from_simplex(self).G
        P = self.edges()
        lam = solve(G, P.T.dot(x - self.vertices[0]), self.field) if self.n else self.field.array([])
        one = Q(1) if self.field.exact else 1.0
        return np.concatenate([self.field.array([one - sum(lam)]), lam]) if self.n else self.field.array([one])

    def to_json(self) -> dict:
        return {"n": self.n, "vertices": [[fmt(c) for c in v] for v in self.vertices]}

    @classmethod
    def from_json(cls, obj, field: Field | None = None) -> "Simplex":
        S = cls.from_points(obj["vertices"], field or EXACT)
        if "n" in obj and int(obj["n"]) != S.n:
            raise Degenerate(f"declared n={obj['n']} but {S.n + 1} vertices given")
        return S


def _default_order(n: int, base: int) -> tuple:
    return tuple(k for k in range(n + 1) if k != base)


@dataclass(frozen=True, eq=False)
class VertexGramian:
    """SPD matrix G = P^T P tagged with its base vertex and column order."""

    G: np.ndarray
    base: int = 0
    order: tuple = dc_field(default=None)
    field: Field = EXACT

    def __post_init__(self):
        if self.order is None:
            object.__setattr__(self, "order", tuple(range(1, self.G.shape[0] + 1)))

    @property
    def n(self) -> int:
        return self.G.shape[0]

    @property
    def labels(self) -> tuple:
        """Vertex label of each local index (0 = base)."""
        return (self.base,) + tuple(self.order)

    def to_json(self) -> dict:
        return {
            "base": self.base,
            "order": list(self.order),
            "G": [[fmt(v) for v in row] for row in self.G],
        }


def as_gramian(A, field: Field | None = None) -> VertexGramian:
    """Accept a VertexGramian, a Simplex (based at vertex 0) or a bare matrix."""
    if isinstance(A, VertexGramian):
        return A
    if isinstance(A, Simplex):
        return gramian_from_simplex(A)
    M = as_matrix(A, field)
    return VertexGramian(M, field=field_of(M, field))


def gramian_from_simplex(S: Simplex, base: int = 0, order=None) -> VertexGramian:
    """G_base = P^T P for the edge vectors from ``base`` to the vertices in ``order``."""
    order = _default_order(S.n, base) if order is None else tuple(order)
    if sorted(order + (base,)) != list(range(S.n + 1)):
        raise ValueError("order must list every vertex except the base exactly once")
    P = S.edges(base, order)
    G = P.T.dot(P)
    if not S.field.exact:
        G = G.astype(float)
    if S.n and not is_spd(G, S.field):
        raise Degenerate("vertices are affinely dependent")
    return VertexGramian(G, base, order, S.field)


def gramian_at_vertex(A, j: int) -> VertexGramian:
    """Change of base vertex on the matrix alone.

    ``j`` is a local index: 0 keeps the base, k >= 1 moves the base to the
    vertex of column k.  That column then holds the old base.
    """
    VG = as_gramian(A)
    n = VG.n
    if not 0 <= j <= n:
        raise IndexError(f"local vertex index {j} out of range 0..{n}")
    if j == 0:
        return VG
    g = VG.G
    c = j - 1
    out = np.empty_like(g)
    for k in range(n):
        for m in range(k, n):
            if k == c and m == c:
                v = g[c, c]
            elif k == c:
                v = g[c, c] - g[c, m]
            elif m == c:
                v = g[c, c] - g[c, k]
            else:
                v = g[k, m] - g[k, c] - g[c, m] + g[c, c]
            out[k, m] = out[m, k] = v
    order = list(VG.order)
    new_base = order[c]
    order[c] = VG.base
    return VertexGramian(out, new_base, tuple(order), VG.field)


def all_vertex_gramians(A) -> list:
    """The n+1 vertex Gramians, indexed by the local index of their base."""
    VG = as_gramian(A)
    return [gramian_at_vertex(VG, j) for j in range(VG.n + 1)]


class FaceAccess:
    """Gramians of faces given by local vertex indices, with the base changes cached."""

    def __init__(self, A):
        self.root = as_gramian(A)
        self._cache = {}

    def _based(self, b: int) -> VertexGramian:
        if b not in self._cache:
            self._cache[b] = gramian_at_vertex(self.root, b)
        return self._cache[b]

    def gramian(self, face) -> VertexGramian:
        face = sorted(face)
        b, rest = face[0], face[1:]
        VG = self._based(b)
        cols = [(b if k == 0 else k) - 1 for k in rest]
        sub = VG.G[np.ix_(cols, cols)]
        labels = self.root.labels
        return VertexGramian(sub, labels[b], tuple(labels[k] for k in rest), VG.field)


def face_gramian(A, face) -> VertexGramian:
    """Gramian of the face spanned by the given local vertex indices."""
    return FaceAccess(A).gramian(face)


def reconstruct_simplex(A) -> Simplex:
    """Underlying simplex with the base at the origin and vertex k in span{e_1..e_k}.

    Coordinates are exact when every Cholesky pivot is a rational square,
    float otherwise.
    """
    VG = as_gramian(A)
    try:
        factor = cholesky_upper(VG.G, VG.field)
    except NotPositiveDefinite:
        raise
    R = factor.R
    fld = VG.field if R.dtype == object else Field(VG.field.eps or 1e-9)
    zero = Q(0) if fld.exact else 0.0
    rows = [[zero] * VG.n] + [list(R[:, k]) for k in range(VG.n)]
    return Simplex(fld.array(rows), fld)


@dataclass(frozen=True, eq=False)
class NormalData:
    """Inner products N_ij = q_i^T q_j of the inward facet normals."""

    N: np.ndarray
    field: Field

    @property
    def heights(self) -> list:
        return [1.0 / math.sqrt(float(self.N[j, j])) for j in range(self.N.shape[0])]

    @property
    def squared_heights(self) -> list:
        return [1 / self.N[j, j] for j in range(self.N.shape[0])]


def normal_matrix(A) -> np.ndarray:
    VG = as_gramian(A)
    Ginv = inverse(VG.G, VG.field)
    n = VG.n
    N = np.empty((n + 1, n + 1), dtype=Ginv.dtype)
    N[1:, 1:] = Ginv
    col = -Ginv.sum(axis=0)
    N[0, 1:] = col
    N[1:, 0] = col
    N[0, 0] = Ginv.sum()
    return N


def normal_data(A) -> NormalData:
    VG = as_gramian(A)
    return NormalData(normal_matrix(VG), VG.field)


@dataclass(frozen=True)
class DihedralReport:
    obtuse: list
    right: list
    n: int
    labels: tuple

    @property
    def obtuse_count(self) -> int:
        return len(self.obtuse)

    def partners(self) -> list:
        """Obtuse partner count of each facet (local index)."""
        counts = [0] * (self.n + 1)
        for i, j in self.obtuse:
            counts[i] += 1
            counts[j] += 1
        return counts

    def to_json(self) -> dict:
        lab = self.labels
        return {
            "obtuse_pairs": [[i, j] for i, j in self.obtuse],
            "right_pairs": [[i, j] for i, j in self.right],
            "obtuse_pairs_by_vertex": [[lab[i], lab[j]] for i, j in self.obtuse],
            "right_pairs_by_vertex": [[lab[i], lab[j]] for i, j in self.right],
            "obtuse_count": self.obtuse_count,
            "partners": self.partners(),
        }


def dihedral_report(A) -> DihedralReport:
    """Facet pairs meeting at an obtuse (N_ij > 0) or right (N_ij = 0) angle."""
    VG = as_gramian(A)
    N = normal_matrix(VG)
    fld = VG.field
    scale = scale_of(N)
    obtuse, right = [], []
    for i, j in combinations(range(VG.n + 1), 2):
        s = fld.sign(N[i, j], scale)
        if s > 0:
            obtuse.append((i, j))
        elif s == 0:
            right.append((i, j))
    return DihedralReport(obtuse, right, VG.n, VG.labels)


def dihedral_angles(A) -> np.ndarray:
    """Interior dihedral angles (radians) between facets i and j; diagonal is 0."""
    N = normal_matrix(A).astype(float)
    d = np.sqrt(np.diag(N))
    C = np.clip(-N / np.outer(d, d), -1.0, 1.0)
    ang = np.arccos(C)
    np.fill_diagonal(ang, 0.0)
    return ang


def radii(A) -> tuple:
    """(inradius, circumradius) as floats.

    1/r_i is the sum of the normal lengths |q_j| = 1/h_j over all facets and
    r_c = sqrt(v^T G^{-1} v) / 2 with v the diagonal of G.
    """
    VG = as_gramian(A)
    N = normal_matrix(VG)
    inv_r = sum(math.sqrt(float(N[j, j])) for j in range(VG.n + 1))
    v = np.array([VG.G[i, i] for i in range(VG.n)], dtype=N.dtype)
    Ginv = N[1:, 1:]
    rc2 = v.dot(Ginv.dot(v))
    return 1.0 / inv_r, 0.5 * math.sqrt(float(rc2))


def project_onto_face(S: Simplex, x, face) -> tuple:
    """Orthogonal projection of x onto aff(face); returns (foot, barycentrics)."""
    face = list(face)
    if not face:
        raise ValueError("face needs at least one vertex")
    x = S.field.array(x)
    F = S.face(face)
    w0 = F.vertices[0]
    one = Q(1) if S.field.exact else 1.0
    if F.n == 0:
        return w0.copy(), S.field.array([one])
    E = F.edges()
    c = solve(E.T.dot(E), E.T.dot(x - w0), S.field)
    foot = w0 + E.dot(c)
    bary = np.concatenate([S.field.array([one - sum(c)]), c])
    return foot, bary


def barycentric(S: Simplex, x) -> np.ndarray:
    return S.barycentric(x)


# Intrinsic helpers: a point is given by barycentric coordinates and the
# geometry by the normal matrix N of the Gramian.

def vertex_foot(N, j: int) -> np.ndarray:
    """Barycentrics of the projection of vertex j onto the hyperplane of facet j."""
    lam = -N[:, j] / N[j, j]
    lam[j] = lam[j] * 0
    return lam


def foot_on_facet(N, lam, j: int) -> np.ndarray:
    """Barycentrics of the projection of the point ``lam`` onto facet j's hyperplane."""
    t = lam[j] / N[j, j]
    out = lam - t * N[:, j]
    out[j] = out[j] * 0
    return out


def simplex_volume(S: Simplex) -> float:
    """n-volume from the Gram determinant."""
    if S.n == 0:
        return 1.0
    G = gramian_from_simplex(S).G
    return math.sqrt(float(det(G, S.field))) / math.factorial(S.n)
