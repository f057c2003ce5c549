"""Seeded generators for simplex families, all with exact rational coordinates.

Every generator takes a ``numpy.random.Generator`` so a (seed, family, n,
params) tuple always reproduces the same simplex.  Families whose
definition is a predicate are produced by local rejection inside a
constructive sampler and certified before they are returned.
"""
from __future__ import annotations

import math
from itertools import combinations

import numpy as np

from ..classes import in_Mdd, is_ultrametric
from ..scalar import EXACT, Q
from ..simplex import FaceAccess, Simplex, foot_on_facet, gramian_from_simplex, normal_matrix

DENOM = 64
BOX = 4
BUDGET = 100_000


class BudgetExhausted(RuntimeError):
    pass


def rng_for(seed: int, index: int | None = None) -> np.random.Generator:
    """Generator for one trial; the stream depends only on (seed, index)."""
    entropy = [int(seed) & (2**64 - 1)] if index is None else [int(seed) & (2**64 - 1), int(index)]
    return np.random.default_rng(np.random.SeedSequence(entropy))


def trial_seed(seed: int, index: int) -> int:
    return int(np.random.SeedSequence([int(seed) & (2**64 - 1), int(index)]).generate_state(1, np.uint64)[0])


def rand_rational(rng, lo=-BOX, hi=BOX, denom=DENOM):
    return Q(int(rng.integers(lo * denom, hi * denom + 1)), denom)


def _simplex(rows) -> Simplex:
    return Simplex(EXACT.array(rows), EXACT)


def _affinely_independent(S: Simplex) -> bool:
    try:
        gramian_from_simplex(S)
    except ValueError:
        return False
    return True


# Coordinate families -------------------------------------------------------

def random_simplex(rng, n: int, denom=DENOM, box=BOX) -> Simplex:
    """Vertices uniform on the rational grid (1/denom) Z^n within [-box, box]^n."""
    for _ in range(BUDGET):
        S = _simplex([[rand_rational(rng, -box, box, denom) for _ in range(n)] for _ in range(n + 1)])
        if _affinely_independent(S):
            return S
    raise BudgetExhausted("random_simplex")


def regular(n: int, scale=1) -> Simplex:
    """Scaled standard basis of R^{n+1}; its Gramians are scale^2 (I + ee^T)."""
    rows = [[Q(scale) if i == j else Q(0) for j in range(n + 1)] for i in range(n + 1)]
    return _simplex(rows)


def path(d) -> Simplex:
    """v_0 = 0 and v_k = v_{k-1} + d_k e_k; the Gramian at v_0 is type-D."""
    d = [Q(x) for x in d]
    if any(x <= 0 for x in d):
        raise ValueError("path lengths must be positive")
    n = len(d)
    rows = [[Q(0)] * n]
    for k in range(n):
        row = list(rows[-1])
        row[k] = d[k]
        rows.append(row)
    return _simplex(rows)


def cube_corner(d) -> Simplex:
    d = [Q(x) for x in d]
    n = len(d)
    rows = [[Q(0)] * n] + [[d[k] if j == k else Q(0) for j in range(n)] for k in range(n)]
    return _simplex(rows)


def orthogonal(rng, n: int, tree=None) -> Simplex:
    """Spanning tree of mutually orthogonal edges, one axis per edge.

    ``tree`` is a list of parent indices (parent[k] < k for k >= 1); by default
    a random recursive tree.  Edge lengths are random positive rationals.
    """
    if tree is None:
        tree = [None] + [int(rng.integers(0, k)) for k in range(1, n + 1)]
    rows = [[Q(0)] * n]
    for k in range(1, n + 1):
        row = list(rows[tree[k]])
        row[k - 1] = Q(int(rng.integers(1, 4 * DENOM + 1)), DENOM)
        rows.append(row)
    return _simplex(rows)


def zero_one(rng, n: int) -> Simplex:
    """Origin plus n random linearly independent 0/1 vectors."""
    for _ in range(BUDGET):
        cols = rng.integers(0, 2, size=(n, n))
        S = _simplex([[0] * n] + cols.T.tolist())
        if _affinely_independent(S):
            return S
    raise BudgetExhausted("zero_one")


def _squares(w: int) -> list:
    """Greedy decomposition of a positive integer into integer squares."""
    out = []
    while w > 0:
        r = math.isqrt(w)
        out.append(r)
        w -= r * r
    return out


def random_laminar(rng, n: int) -> list:
    """Random hierarchy of nested blocks over range(n), singletons included."""
    blocks = []

    def split(items):
        blocks.append(tuple(items))
        if len(items) == 1:
            return
        k = int(rng.integers(2, min(3, len(items)) + 1))
        perm = list(rng.permutation(items))
        cuts = sorted(rng.choice(range(1, len(items)), size=k - 1, replace=False))
        parts = [perm[a:b] for a, b in zip([0] + list(cuts), list(cuts) + [len(items)])]
        for p in parts:
            split(sorted(int(x) for x in p))

    split(list(range(n)))
    return blocks


def ultrametric_matrix(rng, n: int, denom=8) -> np.ndarray:
    """Random SPD ultrametric matrix sum_B w_B 1_B 1_B^T over a nested hierarchy."""
    M = np.full((n, n), Q(0), dtype=object)
    for B in random_laminar(rng, n):
        w = Q(int(rng.integers(0 if len(B) > 1 else 1, 4 * denom + 1)), denom)
        for i in B:
            for j in B:
                M[i, j] += w
    return M


def ultrametric_simplex(rng, n: int) -> Simplex:
    """Integer simplex whose Gramian at vertex 0 is a random ultrametric matrix.

    Each block B of weight w = sum of squares r^2 contributes coordinate rows
    r 1_B^T, so P^T P = sum_B w 1_B 1_B^T.
    """
    rows = []
    for B in random_laminar(rng, n):
        w = int(rng.integers(1 if len(B) == 1 else 0, 6))
        for r in _squares(w):
            rows.append([r if i in B else 0 for i in range(n)])
    P = np.array(rows, dtype=int)
    verts = [[0] * P.shape[0]] + P.T.tolist()
    S = _simplex(verts)
    assert is_ultrametric(gramian_from_simplex(S))
    return S


def strongly_isosceles(rng, n: int) -> Simplex:
    """Vertex set forming an ultrametric space, built on a random dendrogram.

    A cluster of squared radius H places each child at squared offset
    H - H_child along fresh axes, so two leaves are at squared distance 2 H of
    their lowest common cluster.
    """
    coords = {}
    axis = [0]

    def build(items):
        if len(items) == 1:
            coords[items[0]] = {}
            return 0
        k = int(rng.integers(2, min(3, len(items)) + 1))
        perm = [int(x) for x in rng.permutation(items)]
        cuts = sorted(int(c) for c in rng.choice(range(1, len(items)), size=k - 1, replace=False))
        parts = [perm[a:b] for a, b in zip([0] + cuts, cuts + [len(items)])]
        heights = [build(p) for p in parts]
        H = max(heights) + int(rng.integers(1, 5))
        for p, h in zip(parts, heights):
            for r in _squares(H - h):
                for leaf in p:
                    coords[leaf][axis[0]] = r
                axis[0] += 1
        return H

    build(list(range(n + 1)))
    m = axis[0]
    rows = [[coords[v].get(a, 0) for a in range(m)] for v in range(n + 1)]
    return _simplex(rows)


# Incremental constructions ------------------------------------------------

def _lift(S: Simplex, y, h) -> Simplex:
    """Append a coordinate (0 for old vertices) and the apex (y, h)."""
    rows = [list(v) + [Q(0)] for v in S.vertices] + [list(y) + [Q(h)]]
    return _simplex(rows)


def _random_bary(rng, k: int, denom=DENOM) -> list:
    w = [int(rng.integers(1, denom + 1)) for _ in range(k)]
    t = sum(w)
    return [Q(x, t) for x in w]


def _diameter2(S: Simplex):
    V = S.vertices
    return max(
        (sum((V[a] - V[b]) ** 2) for a, b in combinations(range(S.n + 1), 2)),
        default=Q(1),
    )


def _new_faces_ok(S: Simplex, k: int) -> bool:
    """All faces of dimension k through the last vertex are nonobtuse."""
    n = S.n
    if k <= 1:
        return True
    kk = min(k, n)
    faces = FaceAccess(gramian_from_simplex(S))
    for rest in combinations(range(n), kk):
        if not in_Mdd(faces.gramian(list(rest) + [n])):
            return False
    return True


def _height(rng, scale2):
    """Random positive rational height, roughly on the scale sqrt(scale2)."""
    s = max(1, math.isqrt(int(scale2)) if scale2 >= 1 else 1)
    return Q(int(rng.integers(DENOM // 4, 3 * DENOM + 1)) * s, DENOM)


def _start_segment(rng) -> Simplex:
    return _simplex([[Q(0)], [Q(int(rng.integers(DENOM, 4 * DENOM + 1)), DENOM)]])


def grow(rng, n: int, k: int, outside_last: bool = False, attempts: int = 400) -> Simplex:
    """Add vertices one dimension at a time so that all k-faces stay nonobtuse.

    Each new apex sits at height h above a base point y.  With ``k >= dim``
    the base point is drawn inside the current simplex (the new vertex must
    project onto it); otherwise y is any point of a box around it.  With
    ``outside_last`` the final apex is placed over the dual hull of the last
    facet but outside the facet, which forces an obtuse dihedral angle.
    """
    for _ in range(BUDGET // attempts):
        S = _start_segment(rng)
        ok = True
        for m in range(1, n):
            last = m == n - 1
            placed = None
            diam2 = _diameter2(S)
            for t in range(attempts):
                if last and outside_last:
                    y = _dual_hull_point(rng, S)
                elif min(k, m + 1) >= m + 1:
                    y = S.point(_random_bary(rng, m + 1))
                else:
                    y = _box_point(rng, S)
                if y is None:
                    continue
                h = _height(rng, diam2) * (1 + t // 50)
                T = _lift(S, y, h)
                if _new_faces_ok(T, k):
                    placed = T
                    break
            if placed is None:
                ok = False
                break
            S = placed
        if ok:
            return S
    raise BudgetExhausted(f"grow(n={n}, k={k})")


def _box_point(rng, S: Simplex):
    lo = [min(v[i] for v in S.vertices) for i in range(S.ambient_dim)]
    hi = [max(v[i] for v in S.vertices) for i in range(S.ambient_dim)]
    return [
        lo[i] + (hi[i] - lo[i]) * Q(int(rng.integers(-DENOM // 4, DENOM + DENOM // 4 + 1)), DENOM)
        for i in range(S.ambient_dim)
    ]


def _dual_hull_point(rng, S: Simplex):
    """A point of the dual hull of the nonobtuse simplex S lying outside S."""
    N = normal_matrix(gramian_from_simplex(S))
    n = S.n
    j = int(rng.integers(0, n + 1))
    lam = _random_bary(rng, n + 1)
    lam[j] = Q(0)
    t = sum(lam)
    lam = [v / t for v in lam]
    lam[j] = -Q(int(rng.integers(1, DENOM + 1)), DENOM * int(rng.integers(1, 9)))
    others = [i for i in range(n + 1) if i != j]
    # lam_j < 0 keeps the point beyond facet j; renormalize the rest to sum 1 - lam_j.
    t = sum(lam[i] for i in others)
    for i in others:
        lam[i] = lam[i] * (1 - lam[j]) / t
    arr = np.array(lam, dtype=object)
    for i in others:
        foot = foot_on_facet(N, arr, i)
        if any(foot[a] < 0 for a in range(n + 1) if a != i) or arr[i] < 0:
            return None
    foot = foot_on_facet(N, arr, j)
    if any(foot[a] < 0 for a in range(n + 1) if a != j):
        return None
    return list(S.point(lam))


def nonobtuse(rng, n: int) -> Simplex:
    return grow(rng, n, n)


def nonobtuse_facets(rng, n: int, obtuse: bool = True) -> Simplex:
    """Simplex whose facets are nonobtuse; with ``obtuse`` it has an obtuse angle."""
    if n == 2 and obtuse:
        return grow(rng, 2, 1, outside_last=True)
    return grow(rng, n, n - 1, outside_last=obtuse)


def perturb(rng, S: Simplex, denom: int = 4 * DENOM, size: int = 1) -> Simplex:
    """Move every coordinate by a random multiple of 1/denom in [-size, size]/denom."""
    rows = [
        [c + Q(int(rng.integers(-size, size + 1)), denom) for c in v] for v in S.vertices
    ]
    return _simplex(rows)


FAMILIES = (
    "random",
    "regular",
    "path",
    "type-d",
    "cube-corner",
    "orthogonal",
    "0/1",
    "strongly-isosceles",
    "ultrametric",
    "nonobtuse",
    "nonobtuse-facets",
    "nonobtuse-k-facets",
    "suborthocentric-facets",
)


def generate(family: str, n: int, seed: int = 0, **params) -> Simplex:
    """Simplex of the named family; deterministic in (family, n, seed, params)."""
    rng = rng_for(seed)
    if family == "random":
        return random_simplex(rng, n)
    if family == "regular":
        return regular(n, params.get("scale", 1))
    if family in ("path", "type-d"):
        d = params.get("d") or [Q(int(rng.integers(1, 4 * DENOM + 1)), DENOM) for _ in range(n)]
        return path(d)
    if family == "cube-corner":
        d = params.get("d") or [Q(int(rng.integers(1, 4 * DENOM + 1)), DENOM) for _ in range(n)]
        return cube_corner(d)
    if family == "orthogonal":
        return orthogonal(rng, n, params.get("tree"))
    if family == "0/1":
        return zero_one(rng, n)
    if family == "strongly-isosceles":
        return strongly_isosceles(rng, n)
    if family == "ultrametric":
        return ultrametric_simplex(rng, n)
    if family == "nonobtuse":
        return nonobtuse(rng, n)
    if family == "nonobtuse-facets":
        return nonobtuse_facets(rng, n, params.get("obtuse", True))
    if family == "nonobtuse-k-facets":
        return grow(rng, n, params.get("k", n - 1))
    if family == "suborthocentric-facets":
        from .campaigns import suborthocentric_facets_sample

        S = suborthocentric_facets_sample(rng, n, params.get("walk", 4))
        if S is None:
            raise BudgetExhausted("no sample with sub-orthocentric facets")
        return S
    raise ValueError(f"unknown family {family!r}")
