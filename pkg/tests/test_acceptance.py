"""One test per acceptance criterion; each prints a PASS/FAIL line.

Run alone with ``pytest tests/test_acceptance.py -s``.  The lines are also
collected into an "acceptance criteria" section of the terminal summary.
"""
import json
import math
import time
from itertools import combinations
from pathlib import Path

import numpy as np

import nonobtuse.lab as lab
from nonobtuse import (
    Q,
    Simplex,
    all_vertex_gramians,
    blocking_columns,
    classify,
    cp_factor_nonobtuse_facets,
    dihedral_report,
    gramian_at_vertex,
    gramian_from_simplex,
    in_Mdd,
    in_suborthocentric_set,
    inverse,
    is_nonblocking,
    is_suborthocentric_simplex,
    is_type_d,
    is_ultrametric,
    minimal_blocking_submatrix,
    nonneg_cholesky,
    radii,
    sign_pattern_decomposition,
    suborthocentric_cells,
)
from nonobtuse.cp import bruteforce_ordering
from nonobtuse.lab.campaigns import Facts, check_nonobtuse_equivalence
from nonobtuse.lab.generators import path, ultrametric_matrix

from conftest import (
    ACCEPTANCE_LINES,
    FOUR_SIMPLEX_G0,
    FOUR_SIMPLEX_G2,
    FOUR_SIMPLEX_P,
    OBTUSE_TRIANGLE,
    HIDDEN_BLOCKING,
    PATH_G0,
    PATH_G1,
    PATH_G2,
    circumradius_oracle,
    inradius_oracle,
    mat,
    same_up_to_permutation,
    triangle_grid_mismatches,
)

SEED = 20240601
LOG_DIR = Path(__file__).resolve().parent.parent / "acceptance_logs"


def report(num, title, ok, detail=""):
    line = f"criterion {num:2d}: {'PASS' if ok else 'FAIL'}  {title}" + (f"  [{detail}]" if detail else "")
    print(line)
    ACCEPTANCE_LINES.append(line)
    assert ok, line


def seeds(count, salt):
    return [lab.trial_seed(SEED + salt, i) for i in range(count)]


def test_criterion_01_triangle_gramians():
    t0 = time.perf_counter()
    S = Simplex.from_points(OBTUSE_TRIANGLE)
    Gu = gramian_from_simplex(S)
    Gv = gramian_at_vertex(Gu, 1)
    checks = [
        (Gu.G == mat([[1, 2], [2, 5]])).all(),
        (Gv.G == mat([[1, -1], [-1, 2]])).all(),
        (inverse(Gu) == mat([[5, -2], [-2, 1]])).all(),
        (inverse(Gv) == mat([[2, 1], [1, 1]])).all(),
        classify(Gu).in_M and not classify(Gu).in_Mdd,
        not classify(Gv).in_M,
    ]
    dt = time.perf_counter() - t0
    report(1, "obtuse triangle Gramians, inverses and classes", all(checks) and dt < 1, f"{dt:.3f} s")


def test_criterion_02_path_simplex():
    G0 = gramian_from_simplex(path([1, 1, 1, 1]))
    Gs = all_vertex_gramians(G0)
    checks = [
        (G0.G == mat(PATH_G0)).all(),
        any(same_up_to_permutation(G.G, mat(PATH_G1)) for G in Gs),
        any(same_up_to_permutation(G.G, mat(PATH_G2)) for G in Gs),
        is_type_d(G0)[0],
        is_ultrametric(PATH_G1) and is_ultrametric(PATH_G2),
    ]
    report(2, "unit path 4-simplex Gramians", all(checks))


def test_criterion_03_blocking_regression():
    P = mat(FOUR_SIMPLEX_P)
    G0 = P.T.dot(P)
    S = Simplex.from_points([[0] * 4] + np.array(FOUR_SIMPLEX_P).T.tolist())
    Gs = all_vertex_gramians(gramian_from_simplex(S))
    checks = [
        (G0 == mat(FOUR_SIMPLEX_G0)).all(),
        blocking_columns(G0) == set(),
        any(same_up_to_permutation(G.G, mat(FOUR_SIMPLEX_G2)) for G in Gs),
        blocking_columns(FOUR_SIMPLEX_G2) == {2},
        len(blocking_columns(G0[1:, 1:])) > 0,
    ]
    report(3, "nonblocking Gramian with blocking vertex change and submatrix", all(checks))


def test_criterion_04_five_by_five_blocking():
    A = mat(HIDDEN_BLOCKING)
    t = minimal_blocking_submatrix(A)
    checks = [
        blocking_columns(A) == {4},
        all(not blocking_columns(A[np.ix_(s, s)]) for s in combinations(range(5), 4)),
        t is not None and len(t) == 3 and len(blocking_columns(A[np.ix_(t, t)])) > 0,
        in_Mdd(A),
    ]
    report(4, "blocking column invisible in 4x4 submatrices", all(checks), f"triple={t}")


def test_criterion_05_nonobtuse_characterizations():
    t0 = time.perf_counter()
    bad, counts = 0, {}
    for n in range(2, 7):
        mix = lab.campaigns.suite_mixture(n)
        yes = 0
        for i, s in enumerate(seeds(500, n)):
            family, params = mix[i % len(mix)]
            f = Facts(lab.generate(family, n, s, **params), family)
            ok, _ = check_nonobtuse_equivalence(f)
            bad += not ok
            yes += f.nonobtuse
        counts[n] = yes
    dt = time.perf_counter() - t0
    report(5, "five nonobtusity characterizations agree (2500 simplices)", bad == 0, f"disagreements={bad} nonobtuse/n={counts} {dt:.0f} s")


def test_criterion_06_obtuse_partners_and_sign_pattern():
    bad = 0
    obtuse_seen = 0
    for n in range(3, 7):
        bound = (n + 1) // 2
        for i, s in enumerate(seeds(500, 10 + n)):
            S = lab.generate("nonobtuse-facets", n, s, obtuse=i % 4 != 0)
            rep = dihedral_report(S)
            obtuse_seen += rep.obtuse_count > 0
            if max(rep.partners()) > 1 or rep.obtuse_count > bound:
                bad += 1
                continue
            try:
                for G in all_vertex_gramians(gramian_from_simplex(S)):
                    sign_pattern_decomposition(inverse(G))
            except Exception:
                bad += 1
    report(6, "nonobtuse facets: one obtuse partner, bounded total, sign pattern", bad == 0, f"violations={bad} with_obtuse={obtuse_seen}/2000")


def test_criterion_07_nonnegative_factors():
    bad = 0
    for i, s in enumerate(seeds(1000, 20)):
        n = 1 + i % 6
        G = gramian_from_simplex(lab.generate("nonobtuse", n, s))
        cp = nonneg_cholesky(G)
        if not (cp.factor.is_nonnegative() and (cp.factor.gram() == G.G).all()):
            bad += 1
    disagree = 0
    methods = {}
    for i, s in enumerate(seeds(200, 21)):
        n = 3 + i % 3
        G = gramian_from_simplex(lab.generate("nonobtuse-facets", n, s, obtuse=True))
        assert not in_Mdd(G)
        cp = cp_factor_nonobtuse_facets(G, fallback="off")
        idx = list(cp.ordering)
        ok = cp.factor.is_nonnegative() and (cp.factor.gram() == G.G[np.ix_(idx, idx)]).all()
        if not ok or bruteforce_ordering(G) is None:
            disagree += 1
        methods[cp.method] = methods.get(cp.method, 0) + 1
    report(7, "nonnegative triangular factors", bad == 0 and disagree == 0, f"cholesky_failures={bad} cp_disagreements={disagree} methods={methods}")


def test_criterion_08_ultrametric_pipeline():
    bad_mdd = 0
    for i, s in enumerate(seeds(500, 30)):
        A = ultrametric_matrix(lab.rng_for(s), 1 + i % 6)
        assert is_ultrametric(A)
        bad_mdd += not in_Mdd(A)
    tetra_mix = [("nonobtuse-facets", {"obtuse": True}), ("nonobtuse-facets", {"obtuse": False}), ("ultrametric", {}), ("orthogonal", {}), ("strongly-isosceles", {})]
    bad_tet, truth = 0, [0, 0]
    for i, s in enumerate(seeds(500, 31)):
        family, params = tetra_mix[i % len(tetra_mix)]
        S = lab.generate(family, 3, s, **params)
        G = gramian_from_simplex(S)
        sub = is_suborthocentric_simplex(S)
        truth[sub] += 1
        bad_tet += not all(sub == is_nonblocking(B) for B in all_vertex_gramians(G))
    four_mix = [("nonobtuse-facets", {"obtuse": True}), ("nonobtuse-facets", {"obtuse": False}), ("ultrametric", {}), ("suborthocentric-facets", {"walk": 8}), ("strongly-isosceles", {})]
    bad_four, truth4 = 0, [0, 0]
    for i, s in enumerate(seeds(200, 32)):
        family, params = four_mix[i % len(four_mix)]
        S = lab.generate(family, 4, s, **params)
        Gs = all_vertex_gramians(gramian_from_simplex(S))
        nb = all(is_nonblocking(G) for G in Gs)
        um = all(is_ultrametric(G) for G in Gs)
        truth4[nb] += 1
        bad_four += nb != um
    ok = bad_mdd == bad_tet == bad_four == 0
    report(8, "ultrametric pipeline", ok, f"mdd={bad_mdd} tetra={bad_tet} (sub false/true {truth}) four={bad_four} (nonblocking false/true {truth4})")


def test_criterion_09_radii():
    worst = 0.0
    for i, s in enumerate(seeds(200, 40)):
        n = 1 + i % 5
        family = ("random", "nonobtuse", "nonobtuse-facets")[i % 3] if n >= 3 else ("random", "nonobtuse")[i % 2]
        S = lab.generate(family, n, s)
        r_i, r_c = radii(S)
        errs = [
            abs(r_c - circumradius_oracle(S)) / r_c,
            abs(r_i - inradius_oracle(S)) / r_i,
        ]
        for G in all_vertex_gramians(gramian_from_simplex(S)):
            a, b = radii(G)
            errs += [abs(a - r_i) / r_i, abs(b - r_c) / r_c]
        worst = max(worst, *errs)
    report(9, "in- and circumradius against oracles", worst <= 1e-9, f"max relative error {worst:.2e}")


def test_criterion_10_suborthocentric_geometry():
    t0 = time.perf_counter()
    tri_bad = 0
    for s in seeds(100, 50):
        tri_bad += bool(triangle_grid_mismatches(lab.generate("nonobtuse", 2, s), m=7))
    P = path([1, 1, 1])
    cells = suborthocentric_cells(P)
    rng = lab.rng_for(SEED)
    path_ok = all(cells.degenerate)
    for _ in range(50):
        w = [int(rng.integers(0, 9)) + 1 for _ in range(4)]
        path_ok &= in_suborthocentric_set(P, P.point([Q(a, sum(w)) for a in w]))
    four_bad = 0
    for s in seeds(200, 51):
        S = lab.generate("suborthocentric-facets", 4, s, walk=8)
        four_bad += not is_suborthocentric_simplex(S)
    LOG_DIR.mkdir(exist_ok=True)
    log = LOG_DIR / "suborthocentric_n5.jsonl"
    log.write_text("")
    rep = lab.test_conjecture_suborthocentric(5, 10_000, seed=SEED, log=str(log))
    summary = {k: v for k, v in rep.items() if k != "counterexamples"}
    summary["counterexample_count"] = len(rep["counterexamples"])
    (LOG_DIR / "suborthocentric_n5_summary.json").write_text(json.dumps(summary, indent=1) + "\n")
    ok = tri_bad == 0 and path_ok and four_bad == 0 and not rep["counterexamples"]
    dt = time.perf_counter() - t0
    detail = (
        f"triangles={tri_bad} path={path_ok} four={four_bad} n5 accepted={rep['accepted']} "
        f"non_ultrametric={rep['non_ultrametric']} counterexamples={len(rep['counterexamples'])} {dt:.0f} s"
    )
    report(10, "sub-orthocentric geometry and n=5 campaign", ok, detail)
