"""Theorem suites, conjecture campaigns and extremal searches.

Trial i of a campaign with base seed s uses the generator seed
``trial_seed(s, i)`` and a family fixed by i alone, so every record can be
replayed with ``generate(record.family, record.n, record.seed, **params)``.
"""
from __future__ import annotations

import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field as dc_field
from functools import cached_property
from itertools import combinations

import numpy as np

from ..classes import (
    NoMatching,
    blocking_columns,
    classify,
    equilibrium_potential,
    in_Ddd,
    in_Mdd,
    is_nonnegative,
    is_pointwise_wdd,
    is_stieltjes,
    is_ultrametric,
    sign_pattern_decomposition,
)
from ..cp import ExhaustedOrderings, bruteforce_ordering, constructive_ordering, cp_factor_nonobtuse_facets
from ..dual import (
    _cells_from_normals,
    classify_triangle,
    dual_hull_cell,
    in_open_cell_by_subsimplices,
    in_suborthocentric_set,
    is_suborthocentric_simplex,
    nu,
)
from ..linalg import inverse
from ..scalar import EXACT, Q
from ..simplex import (
    FaceAccess,
    Simplex,
    all_vertex_gramians,
    as_gramian,
    dihedral_report,
    foot_on_facet,
    gramian_from_simplex,
    normal_matrix,
    project_onto_face,
    vertex_foot,
)
from . import generators as gen
from .generators import BudgetExhausted, generate, rng_for, trial_seed


class TheoremViolation(AssertionError):
    """A proven bound failed; the witness has been written to the log."""


class UnsupportedDimension(ValueError):
    pass


@dataclass
class TrialRecord:
    seed: int
    n: int
    k: int | None
    family: str
    verdict: str
    params: dict = dc_field(default_factory=dict)
    detail: str = ""
    witness: dict | None = None

    def to_json(self) -> dict:
        return asdict(self)


def witness(S) -> dict:
    VG = as_gramian(S)
    out = {"gramian": VG.to_json(), "class_report": classify(VG).to_json()}
    if isinstance(S, Simplex):
        out["simplex"] = S.to_json()
    return out


def append_jsonl(path, records) -> None:
    if path is None:
        return
    with open(path, "a") as fh:
        for r in records:
            fh.write(json.dumps(r.to_json() if isinstance(r, TrialRecord) else r, sort_keys=True) + "\n")


def _json_params(params: dict) -> dict:
    return {k: (str(v) if not isinstance(v, (int, float, str, bool, type(None))) else v) for k, v in params.items()}


class Facts:
    """Lazily computed data about one simplex, shared by all checks."""

    def __init__(self, S, family: str = "", rng=None):
        self.S = S if isinstance(S, Simplex) else None
        self.VG = as_gramian(S)
        self.n = self.VG.n
        self.family = family
        self.rng = rng if rng is not None else rng_for(0)
        self._kfaces = {}

    @cached_property
    def gramians(self):
        return all_vertex_gramians(self.VG)

    @cached_property
    def faces(self):
        return FaceAccess(self.VG)

    @cached_property
    def N(self):
        return normal_matrix(self.VG)

    @cached_property
    def report(self):
        return dihedral_report(self.VG)

    @cached_property
    def inverses(self):
        return [inverse(G.G) for G in self.gramians]

    @cached_property
    def nonobtuse(self) -> bool:
        return in_Mdd(self.VG)

    def k_faces_nonobtuse(self, k: int) -> bool:
        k = min(k, self.n)
        if k <= 1:
            return True
        if k not in self._kfaces:
            if k == self.n:
                self._kfaces[k] = self.nonobtuse
            else:
                self._kfaces[k] = all(
                    in_Mdd(self.faces.gramian(f)) for f in combinations(range(self.n + 1), k + 1)
                )
        return self._kfaces[k]

    @property
    def facets_nonobtuse(self) -> bool:
        return self.k_faces_nonobtuse(self.n - 1)

    @property
    def triangles_nonobtuse(self) -> bool:
        return self.k_faces_nonobtuse(2)

    @cached_property
    def blocking(self):
        return [blocking_columns(G) for G in self.gramians]

    @cached_property
    def tetra_faces_subortho(self) -> bool:
        return all(
            is_suborthocentric_simplex(self.faces.gramian(f)) for f in combinations(range(self.n + 1), 4)
        )

    def facet_gramian(self, j):
        return self.faces.gramian([i for i in range(self.n + 1) if i != j])


# Each check returns None when its hypothesis fails, else (ok, detail).

def check_nonobtuse_equivalence(f: Facts):
    a = f.report.obtuse_count == 0
    b = any(in_Mdd(G) for G in f.gramians)
    c = all(is_stieltjes(Ginv) for Ginv in f.inverses)
    d = all(all(r >= 0 for r in Ginv.sum(axis=1)) for Ginv in f.inverses)
    if f.S is not None:
        e = all(
            all(c_ >= 0 for c_ in project_onto_face(f.S, f.S.vertices[j], [i for i in range(f.n + 1) if i != j])[1])
            for j in range(f.n + 1)
        )
    else:
        e = all(all(v >= 0 for v in vertex_foot(f.N, j)) for j in range(f.n + 1))
    verdicts = (a, b, c, d, e)
    return len(set(verdicts)) == 1, f"verdicts={verdicts}"


def check_facet_heredity(f: Facts):
    if not f.nonobtuse:
        return None
    for j in range(f.n + 1):
        F = gramian_from_simplex(f.S.facet(j)) if f.S is not None else f.facet_gramian(j)
        if not in_Mdd(F):
            return False, f"facet {j} is obtuse"
    return True, ""


def check_triangle_dominance(f: Facts):
    """Nonobtuse triangles <=> all Gramians >= 0 <=> all pointwise wdd <=> every
    vertex projects into its opposite edges; a single D_dd Gramian is only necessary."""
    if f.n < 2:
        return None
    tri = all(
        "nonobtuse" in classify_triangle(f.faces.gramian(t)) for t in combinations(range(f.n + 1), 3)
    )
    all_nonneg = all(is_nonnegative(G) for G in f.gramians)
    all_pwdd = all(is_pointwise_wdd(G) for G in f.gramians)
    edges = True
    for t in combinations(range(f.n + 1), 3):
        Nt = normal_matrix(f.faces.gramian(t))
        edges = edges and all(v >= 0 for j in range(3) for v in vertex_foot(Nt, j))
    some_ddd = any(in_Ddd(G) for G in f.gramians)
    ok = tri == all_nonneg == all_pwdd == edges and (some_ddd or not tri)
    return ok, f"triangles={tri} all_nonneg={all_nonneg} all_pwdd={all_pwdd} edges={edges} some_Ddd={some_ddd}"


def _feet_in_facet_dual_hulls(f: Facts) -> bool:
    """Every vertex foot projects onto every facet of its opposite facet."""
    for j in range(f.n + 1):
        foot = vertex_foot(f.N, j)
        lam = np.array([foot[i] for i in range(f.n + 1) if i != j], dtype=object)
        NF = normal_matrix(f.facet_gramian(j))
        for i in range(f.n):
            p = foot_on_facet(NF, lam, i)
            if any(p[a] < 0 for a in range(f.n) if a != i):
                return False
    return True


def check_one_obtuse_partner(f: Facts):
    if f.n < 2:
        return None
    bridge = _feet_in_facet_dual_hulls(f)
    if bridge != f.facets_nonobtuse:
        return False, f"facets_nonobtuse={f.facets_nonobtuse} feet_in_dual_hulls={bridge}"
    if not f.facets_nonobtuse:
        return True, "bridge only"
    partners = f.report.partners()
    total = f.report.obtuse_count
    ok = max(partners) <= 1 and total <= (f.n + 1) // 2
    return ok, f"partners={partners} total={total}"


def check_sign_pattern(f: Facts):
    if not f.facets_nonobtuse:
        return None
    for b, Ginv in enumerate(f.inverses):
        try:
            sign_pattern_decomposition(Ginv)
        except NoMatching as exc:
            return False, f"base {b}: {exc}"
        x_neg = sum(1 for r in Ginv.sum(axis=1) if r < 0)
        y_pos = max(sum(1 for v in Ginv[:, j] if v > 0) for j in range(f.n))
        if x_neg > 1 or y_pos > 2:
            return False, f"base {b}: x negatives={x_neg} y positives={y_pos}"
    return True, ""


def check_triangle_obtuse_bound(f: Facts):
    if f.n < 2 or not f.triangles_nonobtuse:
        return None
    partners = f.report.partners()
    total = f.report.obtuse_count
    ok = max(partners) <= f.n - 2 and total <= (f.n + 1) * (f.n - 2) // 2
    return ok, f"partners={partners} total={total}"


def check_cp_rank(f: Facts):
    if f.n < 3 or not f.facets_nonobtuse:
        return None
    for b, G in enumerate(f.gramians):
        try:
            cp = cp_factor_nonobtuse_facets(G)
        except ExhaustedOrderings:
            return False, f"base {b}: no ordering"
        idx = list(cp.ordering)
        if not (cp.factor.is_nonnegative() and (cp.factor.gram() == G.G[np.ix_(idx, idx)]).all()):
            return False, f"base {b}: factor not certified"
        if cp.method != "cholesky":
            constructive = constructive_ordering(G)
            brute = bruteforce_ordering(G)
            if (constructive is None) != (brute is None):
                return False, f"base {b}: constructive={constructive} bruteforce={brute}"
    return True, ""


def check_blocking_witness(f: Facts):
    if f.n < 3 or not f.facets_nonobtuse or f.report.obtuse_count == 0:
        return None
    for i, j in f.report.obtuse:
        if not f.blocking[i] or not f.blocking[j]:
            return False, f"obtuse pair {(i, j)} without blocking Gramians at both vertices"
    return True, ""


def check_nonblocking_nonobtuse(f: Facts):
    if not f.facets_nonobtuse or f.n < 3:
        return None
    for b, G in enumerate(f.gramians):
        if not f.blocking[b] and not equilibrium_potential(G).nonnegative:
            return False, f"nonblocking Gramian {b} with x not >= 0"
    if all(not blk for blk in f.blocking) and f.report.obtuse_count:
        return False, "all Gramians nonblocking but obtuse"
    return True, ""


def check_triple_nonblocking(f: Facts):
    if f.n < 2 or not f.triangles_nonobtuse:
        return None
    all_triples = all(
        not blocking_columns(G.G[np.ix_(t, t)]) for G in f.gramians for t in combinations(range(f.n), 3)
    )
    if not all_triples:
        return None
    return f.nonobtuse, "all 3x3 submatrices nonblocking"


def check_ultrametric_nonobtuse(f: Facts):
    ultra = [b for b, G in enumerate(f.gramians) if is_ultrametric(G)]
    if not ultra:
        return None
    return all(in_Mdd(f.gramians[b]) for b in ultra), f"ultrametric bases {ultra}"


def check_dual_hull_count(f: Facts):
    if f.S is None or not f.nonobtuse or f.n < 1:
        return None
    rng = f.rng
    for _ in range(4):
        lam = [Q(int(rng.integers(-32, 65)), 64) for _ in range(f.n)]
        lam = [1 - sum(lam)] + lam
        x = f.S.point(lam)
        cell = dual_hull_cell(f.S, x)
        expect = {"inside-S": f.n + 1, "S*": f.n}.get(cell.kind)
        if expect is not None and nu(f.S, x) != expect:
            return False, f"cell {cell} with nu={nu(f.S, x)}"
    y = gen._dual_hull_point(rng, f.S)
    if y is not None:
        cell = dual_hull_cell(f.S, y)
        if cell.kind != "S*" or cell.nu != f.n:
            return False, f"dual hull sample classified {cell}"
    return True, ""


def check_even_wdd_vertex(f: Facts):
    if f.n % 2 or f.n < 2 or not f.facets_nonobtuse:
        return None
    free = [i for i, p in enumerate(f.report.partners()) if p == 0]
    if not free:
        return False, "no facet free of obtuse angles"
    return equilibrium_potential(f.gramians[free[0]]).nonnegative, f"free facets {free}"


def check_tetra_subortho_nonblocking(f: Facts):
    if f.n != 3 or not f.facets_nonobtuse:
        return None
    sub = is_suborthocentric_simplex(f.S if f.S is not None else f.VG)
    nonblock = [not blk for blk in f.blocking]
    return all(sub == v for v in nonblock), f"subortho={sub} nonblocking={nonblock}"


def check_cell_degeneracy(f: Facts):
    if f.S is None or not f.nonobtuse or f.n < 2:
        return None
    S = f.S
    cells = _cells_from_normals(S.field, f.N)
    for l in range(f.n + 1):
        touching = False
        for j in range(f.n + 1):
            if j == l:
                continue
            foot, _ = project_onto_face(S, S.vertices[j], [i for i in range(f.n + 1) if i != j])
            if S.barycentric(foot)[l] == 0:
                touching = True
        if touching != cells.degenerate[l]:
            return False, f"cell {l}: feet touch F_l={touching} right-angle test={cells.degenerate[l]}"
        if not cells.degenerate[l]:
            rng = f.rng
            for _ in range(3):
                lam = gen._random_bary(rng, f.n + 1)
                x = S.point(lam)
                R = cells.ratios[l]
                explicit = lam[l] > 0 and all(lam[i] > R[i] * lam[l] for i in range(f.n + 1) if i != l)
                if explicit != in_open_cell_by_subsimplices(S, x, l):
                    return False, f"cell {l}: explicit and sub-simplex membership disagree"
    return True, ""


def check_tetra_facets_ultrametric(f: Facts):
    if f.n < 3:
        return None
    a = f.tetra_faces_subortho
    b = is_ultrametric(f.VG)
    c = all(is_ultrametric(G) for G in f.gramians)
    return a == b == c, f"tetra_subortho={a} G0_ultrametric={b} all_ultrametric={c}"


def check_nonblocking_ultrametric_4(f: Facts):
    if f.n != 4 or not f.facets_nonobtuse:
        return None
    a = all(not blk for blk in f.blocking)
    b = all(is_ultrametric(G) for G in f.gramians)
    return a == b, f"all_nonblocking={a} all_ultrametric={b}"


def check_subortho_4_simplex(f: Facts):
    if f.n != 4 or not f.tetra_faces_subortho:
        return None
    return is_suborthocentric_simplex(f.VG), ""


def check_orthogonal_ultrametric(f: Facts):
    if f.family not in ("orthogonal", "path", "cube-corner"):
        return None
    ok = all(is_ultrametric(G) for G in f.gramians) and (f.n < 3 or f.tetra_faces_subortho)
    return ok, ""


THEOREMS = {
    "nonobtuse-equivalence": check_nonobtuse_equivalence,
    "facet-heredity": check_facet_heredity,
    "triangle-dominance": check_triangle_dominance,
    "one-obtuse-partner": check_one_obtuse_partner,
    "sign-pattern": check_sign_pattern,
    "triangle-obtuse-bound": check_triangle_obtuse_bound,
    "cp-rank-n": check_cp_rank,
    "blocking-witness": check_blocking_witness,
    "nonblocking-nonobtuse": check_nonblocking_nonobtuse,
    "triple-nonblocking": check_triple_nonblocking,
    "ultrametric-nonobtuse": check_ultrametric_nonobtuse,
    "dual-hull-count": check_dual_hull_count,
    "even-wdd-vertex": check_even_wdd_vertex,
    "tetra-subortho-nonblocking": check_tetra_subortho_nonblocking,
    "cell-degeneracy": check_cell_degeneracy,
    "tetra-facets-ultrametric": check_tetra_facets_ultrametric,
    "nonblocking-ultrametric-4": check_nonblocking_ultrametric_4,
    "subortho-4-simplex": check_subortho_4_simplex,
    "orthogonal-ultrametric": check_orthogonal_ultrametric,
}

BLOCKING_EXAMPLE_5 = [
    ["2", "1.2", "1.0", "1.2", "1.1"],
    ["1.2", "2", "1.2", "1.05", "1.1"],
    ["1.0", "1.2", "2", "1.2", "1.1"],
    ["1.2", "1.05", "1.2", "2", "1.1"],
    ["1.1", "1.1", "1.1", "1.1", "2"],
]


def blocking_example_regression() -> tuple:
    """A 5x5 matrix with a blocking column whose 4x4 principal submatrices are all nonblocking."""
    A = EXACT.array(BLOCKING_EXAMPLE_5)
    top = blocking_columns(A) == {4}
    subs = all(not blocking_columns(A[np.ix_(s, s)]) for s in combinations(range(5), 4))
    return top and subs and in_Mdd(A), f"blocking={sorted(blocking_columns(A))} subs_nonblocking={subs}"


def suite_mixture(n: int) -> list:
    """(family, params) cycle used by the theorem suite for dimension n."""
    mix = [
        ("random", {}),
        ("nonobtuse", {}),
        ("nonobtuse-facets", {"obtuse": True}),
        ("nonobtuse-facets", {"obtuse": False}),
        ("orthogonal", {}),
        ("ultrametric", {}),
        ("strongly-isosceles", {}),
        ("path", {}),
        ("0/1", {}),
    ]
    if n >= 4:
        mix.append(("nonobtuse-k-facets", {"k": 2}))
    if n <= 2:
        mix = [m for m in mix if not (m[0] == "nonobtuse-facets" and not m[1]["obtuse"])]
    return mix


def _suite_trial(args):
    n, seed, index, names = args
    mix = suite_mixture(n)
    family, params = mix[index % len(mix)]
    tseed = trial_seed(seed, index)
    try:
        S = generate(family, n, tseed, **params)
    except BudgetExhausted:
        return family, params, tseed, None
    facts = Facts(S, family, rng_for(tseed, 1))
    results = {}
    for name in names:
        out = THEOREMS[name](facts)
        results[name] = None if out is None else (bool(out[0]), out[1])
    return family, params, tseed, (S, results)


def _map(fn, items, workers: int):
    if workers and workers > 1:
        with ProcessPoolExecutor(workers) as ex:
            return list(ex.map(fn, items, chunksize=8))
    return [fn(it) for it in items]


def verify_theorem_suite(n: int, trials: int, seed: int = 0, log=None, workers: int = 0, names=None) -> dict:
    """Run every applicable theorem check on ``trials`` generated n-simplices."""
    names = list(names or THEOREMS)
    rows = {name: {"applicable": 0, "failures": 0} for name in names}
    failures = []
    for family, params, tseed, res in _map(
        _suite_trial, [(n, seed, i, names) for i in range(trials)], workers
    ):
        if res is None:
            continue
        S, results = res
        for name, out in results.items():
            if out is None:
                continue
            rows[name]["applicable"] += 1
            if not out[0]:
                rows[name]["failures"] += 1
                failures.append(
                    TrialRecord(tseed, n, None, family, "fail", _json_params(params), f"{name}: {out[1]}", witness(S))
                )
    if n == 5:
        ok, detail = blocking_example_regression()
        rows["blocking-example-5"] = {"applicable": 1, "failures": 0 if ok else 1}
        if not ok:
            failures.append(TrialRecord(0, 5, None, "fixed", "fail", {}, detail))
    append_jsonl(log, failures)
    for row in rows.values():
        row["pass"] = row["failures"] == 0
    return {
        "n": n,
        "trials": trials,
        "seed": seed,
        "rows": rows,
        "passed": all(r["pass"] for r in rows.values()),
        "failures": [r.to_json() for r in failures],
    }


# Conjecture on nonobtuse k-facets -----------------------------------------

def kfacet_mixture(n: int, k: int) -> list:
    mix = [("nonobtuse-k-facets", {"k": k})]
    if k <= 2 and n >= 2:
        mix.append(("0/1", {}))
    if k <= 1 or n <= 3:
        mix.append(("random", {}))
    if k == n - 1 and n >= 2:
        mix.append(("nonobtuse-facets", {"obtuse": True}))
    return mix


def _kfacet_trial(args):
    n, k, seed, index = args
    mix = kfacet_mixture(n, k)
    family, params = mix[index % len(mix)]
    tseed = trial_seed(seed, index)
    try:
        S = generate(family, n, tseed, **params)
    except BudgetExhausted:
        return None
    facts = Facts(S, family)
    if not facts.k_faces_nonobtuse(k):
        return None
    partners = facts.report.partners()
    total = facts.report.obtuse_count
    x_neg = max(sum(1 for r in Ginv.sum(axis=1) if r < 0) for Ginv in facts.inverses)
    y_pos = max(sum(1 for v in Ginv[:, j] if v > 0) for Ginv in facts.inverses for j in range(n))
    return family, params, tseed, S, max(partners), total, x_neg, y_pos


def test_conjecture_kfacets(n: int, k: int, trials: int, seed: int = 0, log=None, workers: int = 0) -> dict:
    """Check the four obtuse-count clauses on simplices whose k-facets are nonobtuse.

    The y_j clause is checked as "at most n - k + 1 positive entries", which
    matches the proven k = n - 1 case; the count of samples exceeding k + 1
    is reported separately.
    """
    if not 1 <= k <= n:
        raise ValueError("need 1 <= k <= n")
    bounds = {
        "per_facet": n - k,
        "total": (n + 1) * (n - k) // 2,
        "x_negative": n - k,
        "y_positive": n - k + 1,
    }
    stats = {"per_facet": 0, "total": 0, "x_negative": 0, "y_positive": 0}
    accepted = 0
    literal_y = 0
    records = []
    hard = []
    for res in _map(_kfacet_trial, [(n, k, seed, i) for i in range(trials)], workers):
        if res is None:
            continue
        family, params, tseed, S, per, total, x_neg, y_pos = res
        accepted += 1
        vals = {"per_facet": per, "total": total, "x_negative": x_neg, "y_positive": y_pos}
        if y_pos > k + 1:
            literal_y += 1
        for key, v in vals.items():
            stats[key] = max(stats[key], v)
        broken = [key for key, v in vals.items() if v > bounds[key]]
        if broken:
            rec = TrialRecord(tseed, n, k, family, "counterexample", _json_params(params), f"clauses {broken}: {vals}", witness(S))
            records.append(rec)
            proven = (k >= n - 1 and per > 1) or (k >= 2 and per > n - 2)
            if proven:
                hard.append(rec)
    append_jsonl(log, records)
    if hard:
        raise TheoremViolation(f"proven obtuse-count bound violated; witness seed {hard[0].seed}")
    return {
        "n": n,
        "k": k,
        "trials": trials,
        "accepted": accepted,
        "bounds": bounds,
        "any_simplex_max_total": n * (n - 1) // 2,
        "observed_max": stats,
        "literal_y_clause_exceedances": literal_y,
        "counterexamples": [r.to_json() for r in records],
    }


# Conjecture on sub-orthocentric facets -------------------------------------

def _facets_suborthocentric(S) -> bool:
    faces = FaceAccess(as_gramian(S))
    n = faces.root.n
    return all(is_suborthocentric_simplex(faces.gramian([i for i in range(n + 1) if i != j])) for j in range(n + 1))


def _move_vertex(rng, S: Simplex) -> Simplex:
    denom = int(rng.choice([64, 256, 1024]))
    V = S.vertices.copy()
    v = int(rng.integers(S.n + 1))
    for c in range(V.shape[1]):
        V[v, c] = V[v, c] + Q(int(rng.integers(-1, 2)), denom)
    return Simplex(V, S.field)


def suborthocentric_facets_sample(rng, n: int, walk: int = 4):
    """Simplex whose facets are all sub-orthocentric.

    Starts from an exact ultrametric Gramian (a boundary case with many
    right angles and ties) and tries ``walk`` single-vertex moves, each kept
    only if all facets stay sub-orthocentric.  Kept moves usually leave the
    ultrametric set.
    """
    S = gen.ultrametric_simplex(rng, n)
    if not _facets_suborthocentric(S):
        return None
    for _ in range(walk):
        T = _move_vertex(rng, S)
        try:
            if _facets_suborthocentric(T):
                S = T
        except ValueError:
            continue
    return S


LONG_WALK = 8


def subortho_walk(n: int, index: int, walk: int) -> int:
    """Odd trials in dimension >= 5 walk ``LONG_WALK`` times longer."""
    return walk * LONG_WALK if n >= 5 and index % 2 else walk


def _all_ultrametric(S) -> bool:
    return all(is_ultrametric(G) for G in all_vertex_gramians(as_gramian(S)))


def _subortho_trial(args):
    n, seed, index, walk = args
    tseed = trial_seed(seed, index)
    steps = subortho_walk(n, index, walk)
    S = suborthocentric_facets_sample(rng_for(tseed), n, steps)
    if S is None:
        return None
    return tseed, steps, S, _all_ultrametric(S), is_suborthocentric_simplex(S)


def test_conjecture_suborthocentric(n: int, trials: int, seed: int = 0, log=None, workers: int = 0, walk: int = 4) -> dict:
    """Test that simplices with sub-orthocentric facets are sub-orthocentric."""
    if n < 4:
        raise UnsupportedDimension(
            "needs n >= 4: below that the facets' sub-orthocentric sets are too thin to sample"
        )
    accepted = 0
    off_ultrametric = 0
    records = []
    for res in _map(_subortho_trial, [(n, seed, i, walk) for i in range(trials)], workers):
        if res is None:
            continue
        tseed, steps, S, ultra, ok = res
        accepted += 1
        off_ultrametric += not ultra
        if not ok:
            records.append(
                TrialRecord(tseed, n, None, "suborthocentric-facets", "counterexample", {"walk": steps}, "", witness(S))
            )
    append_jsonl(log, records)
    return {
        "n": n,
        "trials": trials,
        "accepted": accepted,
        "non_ultrametric": off_ultrametric,
        "counterexamples": [r.to_json() for r in records],
    }


# Extremal search ------------------------------------------------------------

def extremal_search(n: int, budget: int, seed: int = 0, restarts: int = 4) -> dict:
    """Hill-climb the number of obtuse dihedral angles over simplices with
    nonobtuse facets."""
    if n < 2:
        raise ValueError("needs n >= 2")
    bound = (n + 1) // 2
    best, best_S = -1, None
    steps = max(1, budget // max(restarts, 1))
    for r in range(restarts):
        rng = rng_for(seed, r)
        try:
            S = gen.nonobtuse_facets(rng, n, obtuse=True)
        except BudgetExhausted:
            continue
        cur = dihedral_report(S).obtuse_count
        for _ in range(steps):
            if cur > best:
                best, best_S = cur, S
            if best == bound:
                break
            T = gen.perturb(rng, S, denom=int(rng.choice([16, 64, 256])), size=1)
            try:
                facts = Facts(T)
            except ValueError:
                continue
            if n >= 3 and not facts.facets_nonobtuse:
                continue
            c = facts.report.obtuse_count
            if c >= cur:
                S, cur = T, c
        if cur > best:
            best, best_S = cur, S
        if best == bound:
            break
    if best > bound:
        raise TheoremViolation(f"{best} obtuse angles exceed the bound {bound}")
    return {
        "n": n,
        "budget": budget,
        "best": best,
        "bound": bound,
        "witness": None if best_S is None else best_S.to_json(),
    }
