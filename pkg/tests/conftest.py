from fractions import Fraction
from math import factorial

import numpy as np
import pytest
from hypothesis import HealthCheck, settings, strategies as st

from nonobtuse import EXACT, Q, Simplex, is_spd
from nonobtuse.simplex import Degenerate

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

OBTUSE_TRIANGLE = [[0, 0], [1, 0], [2, 1]]
PATH_G0 = [[1, 1, 1, 1], [1, 2, 2, 2], [1, 2, 3, 3], [1, 2, 3, 4]]
PATH_G1 = [[1, 0, 0, 0], [0, 1, 1, 1], [0, 1, 2, 2], [0, 1, 2, 3]]
PATH_G2 = [[2, 1, 0, 0], [1, 1, 0, 0], [0, 0, 1, 1], [0, 0, 1, 2]]
FOUR_SIMPLEX_P = [[0, 4, 4, 3], [4, 0, 4, 2], [4, 4, 0, 2], [0, 0, 0, 4]]
FOUR_SIMPLEX_G0 = [[32, 16, 16, 16], [16, 32, 16, 20], [16, 16, 32, 20], [16, 20, 20, 33]]
FOUR_SIMPLEX_G2 = [[32, 16, 16, 12], [16, 32, 16, 12], [16, 16, 32, 16], [12, 12, 16, 25]]
HIDDEN_BLOCKING = [
    ["2", "1.2", "1.0", "1.2", "1.1"],
    ["1.2", "2", "1.2", "1.05", "1.1"],
    ["1.0", "1.2", "2", "1.2", "1.1"],
    ["1.2", "1.05", "1.2", "2", "1.1"],
    ["1.1", "1.1", "1.1", "1.1", "2"],
]
T_GLUED = [[1, 0, 0], [0, 1, 0], [1, 2, 0], [1, 1, 1]]
T_GLUED_GB = [[2, 0, 1], [0, 2, 1], [1, 1, 2]]


def mat(rows):
    return EXACT.array(rows)


def four_simplex():
    P = np.array(FOUR_SIMPLEX_P)
    return Simplex.from_points([[0] * 4] + P.T.tolist())


def regular_gramian(n):
    return mat((np.eye(n, dtype=int) + np.ones((n, n), dtype=int)).tolist())


def same_up_to_permutation(A, B):
    from itertools import permutations

    n = A.shape[0]
    return any((A[np.ix_(p, p)] == B).all() for p in permutations(range(n)))


@st.composite
def rational_simplices(draw, n=None, min_n=1, max_n=4, denom=4, box=8):
    """Affinely independent simplices with coordinates in (1/denom) Z."""
    if n is None:
        n = draw(st.integers(min_n, max_n))
    coords = st.integers(-box, box)
    pts = draw(st.lists(st.lists(coords, min_size=n, max_size=n), min_size=n + 1, max_size=n + 1))
    rows = [[Q(c, denom) for c in p] for p in pts]
    S = Simplex.from_points(rows)
    P = S.edges()
    if not is_spd(P.T.dot(P)):
        from hypothesis import assume

        assume(False)
    return S


@st.composite
def spd_matrices(draw, min_n=1, max_n=4):
    S = draw(rational_simplices(min_n=min_n, max_n=max_n))
    P = S.edges()
    return P.T.dot(P)


def circumradius_oracle(S):
    """Circumcenter c (relative to v_0) in the row space of the edge matrix."""
    V = np.array(S.vertices, dtype=float)
    P = V[1:] - V[0]
    rhs = 0.5 * np.sum(P ** 2, axis=1)
    c = P.T.dot(np.linalg.solve(P.dot(P.T), rhs))
    return float(np.linalg.norm(c))


def volume_oracle(points):
    V = np.array(points, dtype=float)
    P = V[1:] - V[0]
    k = P.shape[0]
    return float(np.sqrt(abs(np.linalg.det(P.dot(P.T))))) / factorial(k)


def inradius_oracle(S):
    V = list(S.vertices)
    facets = sum(volume_oracle(V[:j] + V[j + 1 :]) for j in range(S.n + 1))
    return S.n * volume_oracle(V) / facets


def _frac(p):
    return [Fraction(int(v.numerator), int(v.denominator)) for v in p]


def orthocenter(A, B, C):
    """Solve (H - A).(C - B) = 0 and (H - B).(C - A) = 0 by Cramer's rule."""
    A, B, C = _frac(A), _frac(B), _frac(C)
    r1 = [C[0] - B[0], C[1] - B[1]]
    r2 = [C[0] - A[0], C[1] - A[1]]
    b1 = A[0] * r1[0] + A[1] * r1[1]
    b2 = B[0] * r2[0] + B[1] * r2[1]
    d = r1[0] * r2[1] - r1[1] * r2[0]
    return [(b1 * r2[1] - b2 * r1[1]) / d, (r1[0] * b2 - r2[0] * b1) / d]


def _on_segment(P, X, Y):
    cross = (Y[0] - X[0]) * (P[1] - X[1]) - (Y[1] - X[1]) * (P[0] - X[0])
    if cross != 0:
        return False
    return all(min(X[i], Y[i]) <= P[i] <= max(X[i], Y[i]) for i in range(2))


def triangle_grid_mismatches(S, m=9):
    """Grid points where sub-orthocentric membership differs from lying on a
    vertex-orthocenter segment, plus segment points reported as non-members."""
    from nonobtuse import in_suborthocentric_set

    V = [_frac(v) for v in S.vertices]
    H = orthocenter(*S.vertices)
    Hq = [Q(h.numerator, h.denominator) for h in H]
    bad = []
    for i in range(m + 1):
        for j in range(m + 1 - i):
            x = S.point([Q(i, m), Q(j, m), Q(m - i - j, m)])
            want = any(_on_segment(_frac(x), V[v], H) for v in range(3))
            if in_suborthocentric_set(S, x) != want:
                bad.append((i, j))
    for v in range(3):
        for t in (0, Q(1, 3), Q(1, 2), Q(2, 3), 1):
            x = [S.vertices[v][i] + Q(t) * (Hq[i] - S.vertices[v][i]) for i in range(2)]
            if not in_suborthocentric_set(S, x):
                bad.append(("segment", v, t))
    return bad


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
