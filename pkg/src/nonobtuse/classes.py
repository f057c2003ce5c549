"""Matrix-class predicates: Stieltjes, diagonal dominance, ultrametric, blocking."""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from itertools import combinations

import numpy as np

from .linalg import Singular, inverse, is_spd, solve
from .scalar import Field, Q, as_matrix, field_of, fmt, scale_of
from .simplex import FaceAccess, VertexGramian, as_gramian


class NoMatching(ValueError):
    """Positive off-diagonal entries do not form a partial matching."""


def _mat(A, field=None):
    if isinstance(A, VertexGramian):
        return A.G, A.field
    M = as_matrix(A, field)
    return M, field_of(M, field)


def is_symmetric(A, field: Field | None = None) -> bool:
    M, fld = _mat(A, field)
    s = scale_of(M)
    n = M.shape[0]
    return all(fld.cmp(M[i, j], M[j, i], s) == 0 for i in range(n) for j in range(i + 1, n))


def is_nonnegative(A, field: Field | None = None) -> bool:
    M, fld = _mat(A, field)
    s = scale_of(M)
    return all(fld.sign(v, s) >= 0 for v in M.flat)


def is_stieltjes(M, field: Field | None = None) -> bool:
    """SPD with nonpositive off-diagonal entries."""
    M, fld = _mat(M, field)
    if not is_spd(M, fld):
        return False
    s = scale_of(M)
    n = M.shape[0]
    return all(fld.sign(M[i, j], s) <= 0 for i in range(n) for j in range(n) if i != j)


def is_pointwise_wdd(A, field: Field | None = None) -> bool:
    """Every diagonal entry dominates the entries of its row."""
    M, fld = _mat(A, field)
    s = scale_of(M)
    n = M.shape[0]
    return all(fld.cmp(M[i, i], M[i, j], s) >= 0 for i in range(n) for j in range(n))


@dataclass(frozen=True)
class EquilibriumPotential:
    x: np.ndarray
    negative: int
    zero: int

    @property
    def nonnegative(self) -> bool:
        return self.negative == 0


def equilibrium_potential(A, field: Field | None = None) -> EquilibriumPotential:
    """Solution of A x = e with a count of its negative and zero entries."""
    M, fld = _mat(A, field)
    n = M.shape[0]
    one = Q(1) if fld.exact else 1.0
    x = solve(M, [one] * n, fld)
    s = scale_of(x)
    signs = [fld.sign(v, s) for v in x]
    return EquilibriumPotential(x, signs.count(-1), signs.count(0))


def in_M(A, field: Field | None = None) -> bool:
    """A is SPD and its inverse is a Stieltjes matrix."""
    M, fld = _mat(A, field)
    if not is_spd(M, fld):
        return False
    return is_stieltjes(inverse(M, fld), fld)


def in_Mdd(A, field: Field | None = None) -> bool:
    """Inverse is a weakly diagonally dominant Stieltjes matrix (nonobtuse simplex)."""
    M, fld = _mat(A, field)
    if not is_spd(M, fld):
        return False
    Minv = inverse(M, fld)
    if not is_stieltjes(Minv, fld):
        return False
    rows = Minv.sum(axis=1)
    s = scale_of(Minv)
    return all(fld.sign(r, s) >= 0 for r in rows)


def in_Ddd(A, field: Field | None = None) -> bool:
    """SPD, nonnegative and pointwise diagonally dominant (all triangles nonobtuse)."""
    M, fld = _mat(A, field)
    return is_spd(M, fld) and is_nonnegative(M, fld) and is_pointwise_wdd(M, fld)


def blocking_columns(A, field: Field | None = None) -> set:
    """Columns j such that no off-diagonal entry a_ij is minimal in row i.

    Minimality is read along the row over the off-diagonal entries, ties
    included.  Indices are 0-based.  A 1x1 matrix has no blocking column.
    """
    M, fld = _mat(A, field)
    n = M.shape[0]
    if n < 2:
        return set()
    s = scale_of(M)
    row_min = [min(M[i, k] for k in range(n) if k != i) for i in range(n)]
    out = set()
    for j in range(n):
        if all(fld.cmp(M[i, j], row_min[i], s) > 0 for i in range(n) if i != j):
            out.add(j)
    return out


def is_nonblocking(A, field: Field | None = None) -> bool:
    return not blocking_columns(A, field)


def minimal_blocking_submatrix(A, field: Field | None = None):
    """Sorted triple of indices whose principal submatrix has a blocking column.

    Starting from a blocking column c, the row i holding the smallest entry of
    c has some a_ij < a_ic; then column c stays blocking inside {i, j, c}.
    Returns None when A is nonblocking.
    """
    M, fld = _mat(A, field)
    n = M.shape[0]
    cols = sorted(blocking_columns(M, fld))
    s = scale_of(M)
    for c in cols:
        rows = sorted((i for i in range(n) if i != c), key=lambda i: M[i, c])
        for i in rows:
            cand = [j for j in range(n) if j not in (i, c) and fld.cmp(M[i, j], M[i, c], s) < 0]
            for j in sorted(cand, key=lambda j: M[i, j]):
                triple = sorted((i, j, c))
                if blocking_columns(M[np.ix_(triple, triple)], fld):
                    return tuple(triple)
    if cols:
        for triple in combinations(range(n), 3):
            if blocking_columns(M[np.ix_(triple, triple)], fld):
                return triple
    return None


def is_ultrametric(A, field: Field | None = None) -> bool:
    """Nonnegative, symmetric, diagonal dominates its row, and in every triple
    the smallest off-diagonal entry is attained at least twice."""
    M, fld = _mat(A, field)
    if not (is_symmetric(M, fld) and is_nonnegative(M, fld) and is_pointwise_wdd(M, fld)):
        return False
    s = scale_of(M)
    for i, j, k in combinations(range(M.shape[0]), 3):
        vals = sorted([M[i, j], M[i, k], M[j, k]])
        if fld.cmp(vals[0], vals[1], s) != 0:
            return False
    return True


def is_strictly_ultrametric(A, field: Field | None = None) -> bool:
    """a_ij >= min(a_ik, a_kj) for all i, j, k and a_ii > a_ij for j != i."""
    M, fld = _mat(A, field)
    if not (is_symmetric(M, fld) and is_nonnegative(M, fld)):
        return False
    s = scale_of(M)
    n = M.shape[0]
    for i in range(n):
        for j in range(n):
            if i != j and fld.cmp(M[i, i], M[i, j], s) <= 0:
                return False
            for k in range(n):
                if fld.cmp(M[i, j], min(M[i, k], M[k, j]), s) < 0:
                    return False
    return True


def is_type_d(A, field: Field | None = None) -> tuple:
    """Staircase pattern a_ij = alpha_min(i,j) with strictly increasing alpha.

    Returns (verdict, alpha) where alpha is the diagonal.
    """
    M, fld = _mat(A, field)
    n = M.shape[0]
    s = scale_of(M)
    alpha = [M[i, i] for i in range(n)]
    ok = all(fld.cmp(alpha[i + 1], alpha[i], s) > 0 for i in range(n - 1))
    ok = ok and all(
        fld.cmp(M[i, j], alpha[min(i, j)], s) == 0 for i in range(n) for j in range(n)
    )
    return ok, alpha


@dataclass(frozen=True)
class SignPattern:
    perm: tuple
    D: np.ndarray
    C: np.ndarray
    pairs: tuple


def sign_pattern_decomposition(Ainv, field: Field | None = None) -> SignPattern:
    """Permute so that Ainv = D - C with D >= 0 block diagonal (1x1 and 2x2
    blocks holding the nonnegative entries) and C >= 0.

    Raises NoMatching when some index has two positive off-diagonal partners.
    """
    M, fld = _mat(Ainv, field)
    n = M.shape[0]
    s = scale_of(M)
    partner = {}
    for i, j in combinations(range(n), 2):
        if fld.sign(M[i, j], s) > 0:
            if i in partner or j in partner:
                raise NoMatching(f"index {i if i in partner else j} has two positive partners")
            partner[i], partner[j] = j, i
    perm = []
    for i in range(n):
        if i in perm:
            continue
        perm.append(i)
        if i in partner:
            perm.append(partner[i])
    P = M[np.ix_(perm, perm)]
    zero = P[0, 0] * 0
    D = np.full_like(P, zero)
    C = np.full_like(P, zero)
    for a in range(n):
        for b in range(n):
            same_block = a == b or (perm[a] in partner and partner[perm[a]] == perm[b])
            if same_block:
                D[a, b] = P[a, b]
            else:
                C[a, b] = -P[a, b]
    pairs = tuple(sorted((min(i, j), max(i, j)) for i, j in partner.items() if i < j))
    return SignPattern(tuple(perm), D, C, pairs)


def facet_nonobtuse_flags(A, k: int) -> list:
    """(face, verdict) for every k-dimensional face (k+1 local vertices)."""
    faces = FaceAccess(A)
    n = faces.root.n
    return [(f, in_Mdd(faces.gramian(f))) for f in combinations(range(n + 1), k + 1)]


def all_k_facets_nonobtuse(A, k: int, faces: FaceAccess | None = None) -> bool:
    faces = faces or FaceAccess(A)
    n = faces.root.n
    if k <= 1:
        return True
    return all(in_Mdd(faces.gramian(f)) for f in combinations(range(n + 1), k + 1))


def chain_level(A, field: Field | None = None) -> int:
    """Largest k such that every k-facet of the underlying simplex is nonobtuse."""
    VG = as_gramian(A, field)
    if not is_spd(VG.G, VG.field):
        raise ValueError("chain_level needs an SPD matrix")
    faces = FaceAccess(VG)
    level = 1
    for k in range(2, VG.n + 1):
        if not all_k_facets_nonobtuse(VG, k, faces):
            break
        level = k
    return level


@dataclass(frozen=True)
class ClassReport:
    n: int
    spd: bool
    nonnegative: bool
    pointwise_wdd: bool
    inverse_stieltjes: bool
    inverse_wdd: bool
    in_M: bool
    in_Mdd: bool
    in_Ddd: bool
    chain_level: int | None
    ultrametric: bool
    strictly_ultrametric: bool
    type_d: bool
    blocking_columns: tuple
    equilibrium_potential: tuple | None = dc_field(default=None)

    def to_json(self) -> dict:
        out = {k: getattr(self, k) for k in self.__dataclass_fields__}
        out["blocking_columns"] = list(self.blocking_columns)
        out["equilibrium_potential"] = (
            None if self.equilibrium_potential is None else [fmt(v) for v in self.equilibrium_potential]
        )
        return out


def classify(A, field: Field | None = None) -> ClassReport:
    """Membership verdicts across the class chain with their witnesses."""
    M, fld = _mat(A, field)
    n = M.shape[0]
    spd = is_spd(M, fld)
    nonneg = is_nonnegative(M, fld)
    pwdd = is_pointwise_wdd(M, fld)
    inv_st = inv_wdd = False
    x = None
    if spd:
        Minv = inverse(M, fld)
        inv_st = is_stieltjes(Minv, fld)
        pot = equilibrium_potential(M, fld)
        inv_wdd = pot.nonnegative
        x = tuple(pot.x)
    else:
        try:
            x = tuple(equilibrium_potential(M, fld).x)
        except Singular:
            x = None
    return ClassReport(
        n=n,
        spd=spd,
        nonnegative=nonneg,
        pointwise_wdd=pwdd,
        inverse_stieltjes=inv_st,
        inverse_wdd=inv_wdd,
        in_M=spd and inv_st,
        in_Mdd=spd and inv_st and inv_wdd,
        in_Ddd=spd and nonneg and pwdd,
        chain_level=chain_level(VertexGramian(M, field=fld)) if spd else None,
        ultrametric=is_ultrametric(M, fld),
        strictly_ultrametric=is_strictly_ultrametric(M, fld),
        type_d=is_type_d(M, fld)[0],
        blocking_columns=tuple(sorted(blocking_columns(M, fld))) if nonneg else (),
        equilibrium_potential=x,
    )
