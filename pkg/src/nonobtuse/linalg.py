"""Dense symmetric-matrix kernel shared by both scalar backends."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .scalar import EXACT, Field, Q, as_matrix, field_of, rational_sqrt, scale_of


class NotPositiveDefinite(ValueError):
    pass


class Singular(ValueError):
    pass


@dataclass(frozen=True)
class CholeskyFactor:
    """Square-root-free Cholesky data.

    ``rows[i][j]`` (j >= i) are the entries left in row i after eliminating the
    first i pivots; ``rows[i][i]`` is the pivot d_i.  The usual factor is
    R[i, j] = rows[i][j] / sqrt(d_i), so every sign of R is the sign of an
    exact rational and R^T R = sum_i rows_i rows_i^T / d_i holds exactly.
    """

    rows: tuple
    field: Field

    @property
    def n(self) -> int:
        return len(self.rows)

    @property
    def pivots(self) -> list:
        return [self.rows[i][i] for i in range(self.n)]

    def sign_pattern(self) -> np.ndarray:
        n = self.n
        out = np.zeros((n, n), dtype=int)
        for i in range(n):
            d = self.rows[i][i]
            for j in range(i, n):
                out[i, j] = self.field.sign(self.rows[i][j], d)
        return out

    def is_nonnegative(self) -> bool:
        return bool((self.sign_pattern() >= 0).all())

    def gram(self) -> np.ndarray:
        """R^T R, exact in exact mode."""
        n = self.n
        zero = Q(0) if self.field.exact else 0.0
        out = [[zero] * n for _ in range(n)]
        for i, row in enumerate(self.rows):
            d = row[i]
            for a in range(i, n):
                if row[a] == 0:
                    continue
                t = row[a] / d
                for b in range(i, n):
                    out[a][b] += t * row[b]
        return _to_array(out, self.field)

    def exact_R(self) -> np.ndarray | None:
        """R with rational entries when every pivot is a rational square."""
        if not self.field.exact:
            return None
        roots = [rational_sqrt(d) for d in self.pivots]
        if any(r is None for r in roots):
            return None
        n = self.n
        R = np.full((n, n), Q(0), dtype=object)
        for i, row in enumerate(self.rows):
            for j in range(i, n):
                R[i, j] = row[j] / roots[i]
        return R

    def float_R(self) -> np.ndarray:
        n = self.n
        R = np.zeros((n, n))
        for i, row in enumerate(self.rows):
            s = math.sqrt(float(row[i]))
            for j in range(i, n):
                R[i, j] = float(row[j]) / s
        return R

    @property
    def R(self) -> np.ndarray:
        """Upper factor: exact when possible, float otherwise."""
        exact = self.exact_R()
        return exact if exact is not None else self.float_R()


def _to_array(rows, field: Field) -> np.ndarray:
    if field.exact:
        out = np.empty((len(rows), len(rows[0]) if rows else 0), dtype=object)
        for i, row in enumerate(rows):
            out[i, :] = row
        return out
    return np.array(rows, dtype=float)


def cholesky_upper(A, field: Field | None = None) -> CholeskyFactor:
    """Cholesky factorization A = R^T R of a symmetric matrix.

    Raises NotPositiveDefinite when a pivot is not strictly positive.
    """
    A = as_matrix(A, field)
    fld = field_of(A, field)
    n = A.shape[0]
    scale = scale_of(A)
    a = A.tolist()
    rows = []
    for i in range(n):
        d = a[i][i]
        if fld.sign(d, scale) <= 0:
            raise NotPositiveDefinite(f"pivot {i} is not positive")
        row = a[i][i:]
        for j in range(i + 1, n):
            f = a[i][j] / d
            if f == 0:
                continue
            aj = a[j]
            for k in range(j, n):
                aj[k] -= f * a[i][k]
        rows.append(tuple([0] * i + row))
    return CholeskyFactor(tuple(rows), fld)


def is_spd(A, field: Field | None = None) -> bool:
    """True iff A is symmetric and the Cholesky recursion succeeds."""
    A = as_matrix(A, field)
    fld = field_of(A, field)
    scale = scale_of(A)
    n = A.shape[0]
    for i in range(n):
        for j in range(i + 1, n):
            if fld.cmp(A[i, j], A[j, i], scale) != 0:
                return False
    try:
        cholesky_upper(A, fld)
    except NotPositiveDefinite:
        return False
    return True


def _eliminate(A, B, fld: Field):
    """Gauss-Jordan on [A | B]; returns A^{-1} B as nested lists."""
    n = len(A)
    scale = max((abs(v) for row in A for v in row), default=1) or 1
    M = [list(A[i]) + list(B[i]) for i in range(n)]
    width = len(M[0]) if M else 0
    for c in range(n):
        if fld.exact:
            p = next((r for r in range(c, n) if M[r][c] != 0), None)
        else:
            p = max(range(c, n), key=lambda r: abs(M[r][c]))
            if fld.sign(M[p][c], scale) == 0:
                p = None
        if p is None:
            raise Singular(f"no pivot in column {c}")
        M[c], M[p] = M[p], M[c]
        piv = M[c][c]
        rowc = [v / piv for v in M[c]]
        M[c] = rowc
        for r in range(n):
            if r == c:
                continue
            f = M[r][c]
            if f == 0:
                continue
            Mr = M[r]
            for k in range(c, width):
                Mr[k] -= f * rowc[k]
    return [row[n:] for row in M]


def solve(A, b, field: Field | None = None) -> np.ndarray:
    """Solve A x = b (b a vector or a matrix of right-hand sides)."""
    A = as_matrix(A, field)
    fld = field_of(A, field)
    b = fld.array(b)
    vec = b.ndim == 1
    B = [[v] for v in b.tolist()] if vec else b.tolist()
    X = _eliminate(A.tolist(), B, fld)
    out = _to_array(X, fld)
    return out[:, 0] if vec else out


def inverse(A, field: Field | None = None) -> np.ndarray:
    """Inverse of a symmetric matrix (the result is symmetrized in float mode)."""
    A = as_matrix(A, field)
    fld = field_of(A, field)
    n = A.shape[0]
    one, zero = (Q(1), Q(0)) if fld.exact else (1.0, 0.0)
    I = [[one if i == j else zero for j in range(n)] for i in range(n)]
    X = _to_array(_eliminate(A.tolist(), I, fld), fld)
    if not fld.exact:
        X = (X + X.T) / 2
    return X


def det(A, field: Field | None = None):
    """Determinant by elimination (exact in exact mode)."""
    A = as_matrix(A, field)
    fld = field_of(A, field)
    M = [list(r) for r in A.tolist()]
    n = len(M)
    result = Q(1) if fld.exact else 1.0
    for c in range(n):
        p = next((r for r in range(c, n) if M[r][c] != 0), None)
        if p is None:
            return result * 0
        if p != c:
            M[c], M[p] = M[p], M[c]
            result = -result
        piv = M[c][c]
        result *= piv
        for r in range(c + 1, n):
            f = M[r][c] / piv
            if f == 0:
                continue
            for k in range(c, n):
                M[r][k] -= f * M[c][k]
    return result


def identity(n: int, field: Field = EXACT) -> np.ndarray:
    return field.array(np.eye(n, dtype=int).tolist())
