import math
from itertools import combinations

import numpy as np
import pytest
from hypothesis import given

from nonobtuse import (
    EXACT,
    Q,
    Simplex,
    all_vertex_gramians,
    dihedral_report,
    gramian_at_vertex,
    gramian_from_simplex,
    normal_data,
    normal_matrix,
    project_onto_face,
    radii,
    reconstruct_simplex,
)
from nonobtuse.linalg import det, identity
from nonobtuse.simplex import Degenerate, FaceAccess, VertexGramian, simplex_volume

from conftest import (
    circumradius_oracle,
    inradius_oracle,
    volume_oracle,
    OBTUSE_TRIANGLE,
    PATH_G0,
    PATH_G1,
    PATH_G2,
    T_GLUED,
    T_GLUED_GB,
    mat,
    rational_simplices,
    regular_gramian,
    same_up_to_permutation,
)


def sq_dists(S):
    V = S.vertices
    return sorted(sum((V[a] - V[b]) ** 2) for a, b in combinations(range(S.n + 1), 2))


def test_obtuse_triangle_gramians():
    S = Simplex.from_points(OBTUSE_TRIANGLE)
    assert (gramian_from_simplex(S).G == mat([[1, 2], [2, 5]])).all()
    assert (gramian_from_simplex(S, base=1).G == mat([[1, -1], [-1, 2]])).all()
    Gv = gramian_at_vertex(gramian_from_simplex(S), 1)
    assert (Gv.G == mat([[1, -1], [-1, 2]])).all()


def test_segment_gramian():
    assert (gramian_from_simplex(Simplex.from_points([[0], [1]])).G == mat([[1]])).all()


def test_base_change_identity_and_path_example():
    G0 = VertexGramian(mat(PATH_G0))
    assert (gramian_at_vertex(G0, 0).G == G0.G).all()
    assert same_up_to_permutation(gramian_at_vertex(G0, 1).G, mat(PATH_G1))
    assert same_up_to_permutation(gramian_at_vertex(G0, 2).G, mat(PATH_G2))


def test_degenerate_simplex_rejected():
    with pytest.raises(Degenerate):
        gramian_from_simplex(Simplex.from_points([[0, 0], [1, 1], [2, 2]]))
    with pytest.raises(Degenerate):
        Simplex.from_points([[0], [1], [2]])


@given(rational_simplices(max_n=4))
def test_base_change_closure(S):
    G = gramian_from_simplex(S)
    for j in range(S.n + 1):
        B = gramian_at_vertex(G, j)
        direct = gramian_from_simplex(S, base=B.base, order=B.order)
        assert (B.G == direct.G).all()
        back = gramian_at_vertex(B, B.labels.index(0))
        assert same_up_to_permutation(back.G, G.G)


@given(rational_simplices(max_n=4))
def test_determinants_agree_across_vertices(S):
    dets = {det(g.G) for g in all_vertex_gramians(gramian_from_simplex(S))}
    assert len(dets) == 1


def test_reconstruct_examples():
    S = reconstruct_simplex(identity(3))
    assert (S.vertices == mat([[0, 0, 0], [1, 0, 0], [0, 1, 0], [0, 0, 1]])).all()
    T = reconstruct_simplex([[1, 2], [2, 5]])
    assert sq_dists(T) == sq_dists(Simplex.from_points(OBTUSE_TRIANGLE))
    R = reconstruct_simplex(regular_gramian(3))
    V = np.array(R.vertices, dtype=float)
    for a, b in combinations(range(4), 2):
        assert math.isclose(np.sum((V[a] - V[b]) ** 2), 2.0)


@given(rational_simplices(max_n=4))
def test_reconstruct_round_trip(S):
    G = gramian_from_simplex(S)
    R = reconstruct_simplex(G)
    back = gramian_from_simplex(R).G
    if R.field.exact:
        assert (back == G.G).all()
    else:
        assert np.allclose(np.array(back, dtype=float), np.array(G.G, dtype=float))


def test_normal_data_examples():
    N = normal_matrix(identity(2))
    assert (N == mat([[2, -1, -1], [-1, 1, 0], [-1, 0, 1]])).all()
    assert all(r == 0 for r in normal_matrix([[1, 2], [2, 5]]).sum(axis=1))
    N = normal_matrix(regular_gramian(3))
    assert all(N[i, j] < 0 for i in range(4) for j in range(4) if i != j)


@given(rational_simplices(max_n=4))
def test_normal_invariants(S):
    G = gramian_from_simplex(S)
    nd = normal_data(G)
    assert all(r == 0 for r in nd.N.sum(axis=1))
    assert all(h > 0 for h in nd.heights)


def _coordinate_normals(S):
    """Inward facet normals q_j with q_j . (v_i - v_j) = 1 for i != j, by least squares."""
    V = np.array(S.vertices, dtype=float)
    n = S.n
    P = (V[1:] - V[0]).T
    Q_ = np.linalg.pinv(P).T  # columns q_1..q_n with q_k . p_m = delta_km
    qs = [-Q_.sum(axis=1)] + [Q_[:, k] for k in range(n)]
    return qs


@given(rational_simplices(min_n=2, max_n=4))
def test_dihedral_report_matches_coordinate_normals(S):
    rep = dihedral_report(S)
    qs = _coordinate_normals(S)
    scale = max(np.dot(q, q) for q in qs)
    for i, j in combinations(range(S.n + 1), 2):
        d = float(np.dot(qs[i], qs[j]))
        if (i, j) in rep.obtuse:
            assert d > -1e-9 * scale
        elif (i, j) not in rep.right:
            assert d < 1e-9 * scale


def test_dihedral_examples():
    for n in (2, 3, 5):
        rep = dihedral_report(regular_gramian(n))
        assert rep.obtuse == [] and rep.right == []
    assert dihedral_report([[1, 2], [2, 5]]).obtuse == [(0, 2)]
    T = Simplex.from_points(T_GLUED)
    rep = dihedral_report(T)
    assert rep.obtuse_count == 1
    (i, j), = rep.obtuse
    # the two facets through B and D with all edges sqrt 2
    for f in (i, j):
        face = [k for k in range(4) if k != f]
        assert len(set(sq_dists(T.face(face)))) == 1


def test_radii_examples():
    r_i, r_c = radii(identity(2))
    assert math.isclose(r_c, math.sqrt(2) / 2)
    assert math.isclose(r_i, 1 / (2 + math.sqrt(2)))
    assert math.isclose(radii(regular_gramian(3))[1], math.sqrt(3) / 2)
    assert math.isclose(radii([[1]])[1], 0.5)


@given(rational_simplices(min_n=1, max_n=4))
def test_radii_match_oracles_and_are_vertex_invariant(S):
    r_i, r_c = radii(S)
    assert math.isclose(r_c, circumradius_oracle(S), rel_tol=1e-9)
    assert math.isclose(r_i, inradius_oracle(S), rel_tol=1e-9)
    for G in all_vertex_gramians(gramian_from_simplex(S)):
        a, b = radii(G)
        assert math.isclose(a, r_i, rel_tol=1e-9) and math.isclose(b, r_c, rel_tol=1e-9)


def test_project_onto_face_examples():
    T = Simplex.from_points(T_GLUED)
    foot, lam = project_onto_face(T, T.vertices[0], [1, 2, 3])
    # over (B, C, D) the coordinate at C is the negative one
    assert list(lam) == [Q(2, 3), Q(-1, 3), Q(2, 3)]
    assert list(foot) == [Q(1, 3), Q(2, 3), Q(2, 3)]
    assert -foot[0] + foot[1] + foot[2] == 1
    foot, lam = project_onto_face(T, T.vertices[2], [1, 2, 3])
    assert list(lam) == [0, 1, 0] and (foot == T.vertices[2]).all()
    R = Simplex.from_points([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]])
    _, lam = project_onto_face(R, R.vertices[0], [1, 2, 3])
    assert list(lam) == [Q(1, 3)] * 3


@given(rational_simplices(min_n=2, max_n=4))
def test_projection_matches_least_squares(S):
    face = list(range(1, S.n + 1))
    foot, lam = project_onto_face(S, S.vertices[0], face)
    assert sum(lam) == 1
    V = np.array(S.vertices, dtype=float)
    B = (V[face[1:]] - V[face[0]]).T
    t, *_ = np.linalg.lstsq(B, V[0] - V[face[0]], rcond=None)
    assert np.allclose(np.array(foot, dtype=float), V[face[0]] + B.dot(t))


def test_tglued_gramian_at_b():
    T = Simplex.from_points(T_GLUED)
    G = gramian_from_simplex(T, base=1, order=(0, 2, 3))
    assert (G.G == mat(T_GLUED_GB)).all()


def test_face_gramians_are_principal_submatrices():
    T = Simplex.from_points(T_GLUED)
    fa = FaceAccess(gramian_from_simplex(T))
    for face in combinations(range(4), 3):
        assert (fa.gramian(face).G == gramian_from_simplex(T.face(face)).G).all()


def test_json_round_trip():
    S = Simplex.from_points([["1/2", 0], [1, "3/4"], [0, 2]])
    assert (Simplex.from_json(S.to_json()).vertices == S.vertices).all()


@given(rational_simplices(min_n=1, max_n=4))
def test_volume_matches_oracle(S):
    assert math.isclose(float(simplex_volume(S)), volume_oracle(S.vertices), rel_tol=1e-9)
