"""Nonnegative upper-triangular factors G = U^T U (complete positivity, rank n)."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations

import numpy as np

from .classes import in_Mdd
from .linalg import CholeskyFactor, cholesky_upper
from .scalar import fmt
from .simplex import FaceAccess, VertexGramian, as_gramian, foot_on_facet, normal_matrix, vertex_foot


class NotNonobtuse(ValueError):
    pass


class NegativeEntry(ArithmeticError):
    """A nonobtuse Gramian produced a negative Cholesky entry."""


class NotApplicable(ValueError):
    pass


class ExhaustedOrderings(ArithmeticError):
    pass


@dataclass(frozen=True)
class CpFactor:
    """U >= 0 upper triangular with U^T U = G[ordering, ordering].

    ``ordering`` lists 0-based columns of the input Gramian; ``method`` says
    how it was found.
    """

    factor: CholeskyFactor
    ordering: tuple
    method: str

    @property
    def U(self) -> np.ndarray:
        return self.factor.R

    def to_json(self) -> dict:
        return {
            "ordering": list(self.ordering),
            "method": self.method,
            "U": [[fmt(v) for v in row] for row in self.U],
            "exact": self.factor.exact_R() is not None,
        }


def _factor(VG: VertexGramian, ordering) -> CholeskyFactor:
    idx = list(ordering)
    return cholesky_upper(VG.G[np.ix_(idx, idx)], VG.field)


def nonneg_cholesky(A) -> CpFactor:
    """Cholesky factor of a nonobtuse Gramian, certified entrywise >= 0.

    The signs are read off the exact elimination quantities, so the
    certificate does not depend on square roots.
    """
    VG = as_gramian(A)
    order = tuple(range(VG.n))
    f = _factor(VG, order)
    if not f.is_nonnegative():
        if not in_Mdd(VG):
            raise NotNonobtuse("the underlying simplex is not nonobtuse")
        raise NegativeEntry("negative Cholesky entry for a nonobtuse Gramian")
    return CpFactor(f, order, "cholesky")


def constructive_ordering(A) -> tuple | None:
    """Column ordering (0-based) whose Cholesky factor is nonnegative.

    Keep the base v.  For a vertex w, the facet F opposite w is nonobtuse and
    the foot of w on F lies in the dual hull of F, so it sits on the inner side
    of the cylinder over some facet G of F through v.  Order the columns as
    G's vertices, then the vertex u of F opposite G, then w: G embeds in the
    nonnegative orthant, u projects into G and w projects into G within the
    cylinder, on u's side.
    """
    VG = as_gramian(A)
    n = VG.n
    N = normal_matrix(VG)
    faces = FaceAccess(VG)
    fld = VG.field
    for w in range(1, n + 1):
        F_verts = [i for i in range(n + 1) if i != w]
        NF = normal_matrix(faces.gramian(F_verts))
        foot = vertex_foot(N, w)
        lam = np.array([foot[i] for i in F_verts], dtype=foot.dtype)
        for pos_u in range(1, len(F_verts)):
            if fld.sign(lam[pos_u]) < 0:
                continue
            proj = foot_on_facet(NF, lam, pos_u)
            if any(fld.sign(v) < 0 for v in proj):
                continue
            u = F_verts[pos_u]
            G_cols = [k for k in F_verts if k not in (0, u)]
            ordering = tuple(k - 1 for k in G_cols + [u, w])
            if _factor(VG, ordering).is_nonnegative():
                return ordering
    return None


def bruteforce_ordering(A) -> tuple | None:
    """First column permutation (lexicographic) with a nonnegative factor."""
    VG = as_gramian(A)
    for perm in permutations(range(VG.n)):
        if _factor(VG, perm).is_nonnegative():
            return perm
    return None


def _facets_nonobtuse(VG: VertexGramian) -> bool:
    faces = FaceAccess(VG)
    n = VG.n
    return all(in_Mdd(faces.gramian([i for i in range(n + 1) if i != j])) for j in range(n + 1))


def cp_factor_nonobtuse_facets(A, fallback: str = "bruteforce") -> CpFactor:
    """Nonnegative triangular factor of a Gramian whose facets are nonobtuse (n >= 3)."""
    VG = as_gramian(A)
    if VG.n < 3:
        raise NotApplicable("needs n >= 3")
    if not _facets_nonobtuse(VG):
        raise NotApplicable("some facet is obtuse")
    if in_Mdd(VG):
        return nonneg_cholesky(VG)
    ordering = constructive_ordering(VG)
    method = "constructive"
    if ordering is None and fallback == "bruteforce":
        ordering, method = bruteforce_ordering(VG), "bruteforce"
    if ordering is None:
        raise ExhaustedOrderings("no ordering gives a nonnegative factor")
    return CpFactor(_factor(VG, ordering), ordering, method)
