"""Exact rationals and tolerance-guarded floats behind one comparison interface.

Matrices are numpy arrays.  ``dtype=object`` arrays hold exact rationals
(``gmpy2.mpq`` when available, ``fractions.Fraction`` otherwise); ``float64``
arrays are compared through a relative tolerance.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

import numpy as np

try:
    from gmpy2 import mpq as Q
except ImportError:  # pragma: no cover
    Q = Fraction

DEFAULT_EPS = 1e-9


class ParseError(ValueError):
    pass


class DimensionMismatch(ParseError):
    """Ragged input or shapes that do not fit together."""


@dataclass(frozen=True)
class Field:
    """Scalar backend.  ``eps is None`` means exact rational arithmetic."""

    eps: float | None = None

    @property
    def exact(self) -> bool:
        return self.eps is None

    def coerce(self, value):
        if self.exact:
            return to_rational(value)
        return float(to_rational(value)) if isinstance(value, str) else float(value)

    def sign(self, x, scale=1) -> int:
        """Sign of ``x``; in float mode values within ``eps * scale`` count as zero."""
        if self.exact:
            return (x > 0) - (x < 0)
        if abs(x) <= self.eps * max(abs(float(scale)), 1e-300):
            return 0
        return 1 if x > 0 else -1

    def cmp(self, a, b, scale=1) -> int:
        return self.sign(a - b, scale)

    def array(self, values) -> np.ndarray:
        """Array of coerced scalars (object dtype when exact, float64 otherwise)."""
        raw = np.asarray(values.tolist() if isinstance(values, np.ndarray) else values, dtype=object)
        out = np.empty(raw.shape, dtype=object)
        for idx, v in np.ndenumerate(raw):
            if isinstance(v, (list, tuple, np.ndarray)):
                raise DimensionMismatch("ragged nested input")
            out[idx] = self.coerce(v)
        return out if self.exact else out.astype(float)


EXACT = Field()
FLOAT = Field(DEFAULT_EPS)


def to_rational(value):
    """Convert ints, Fractions, mpq, decimal/fraction strings to an exact rational.

    Floats are converted exactly from their binary value.
    """
    if isinstance(value, str):
        text = value.strip()
        try:
            return Q(Fraction(text))
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"not a rational literal: {value!r}") from exc
    if isinstance(value, (bool, np.bool_)):
        raise ParseError("booleans are not scalars")
    if isinstance(value, (int, np.integer)):
        return Q(int(value))
    if isinstance(value, (float, np.floating)):
        if not math.isfinite(value):
            raise ParseError(f"non-finite value {value!r}")
        return Q(Fraction(float(value)))
    if isinstance(value, Rational) or type(value).__name__ == "mpq":
        return Q(value)
    raise ParseError(f"cannot interpret {value!r} as a scalar")


def field_of(arr, field: Field | None = None) -> Field:
    """Pick the backend: explicit ``field`` wins, else object arrays are exact."""
    if field is not None:
        return field
    if isinstance(arr, np.ndarray) and arr.dtype != object:
        return FLOAT
    return EXACT


def as_matrix(A, field: Field | None = None) -> np.ndarray:
    """Square matrix in the representation of ``field``.

    Without an explicit field, float arrays select float mode and everything
    else (ints, rationals, strings) is read exactly.
    """
    if isinstance(getattr(A, "G", None), np.ndarray) and isinstance(getattr(A, "field", None), Field):
        # vertex Gramians carry their matrix and field
        field = field or A.field
        A = A.G
    if field is None:
        field = FLOAT if isinstance(A, np.ndarray) and A.dtype.kind == "f" else EXACT
    if (
        field.exact
        and isinstance(A, np.ndarray)
        and A.dtype == object
        and all(type(v) is Q for v in A.flat)
    ):
        arr = A
    else:
        arr = field.array(A)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise DimensionMismatch(f"expected a square matrix, got shape {arr.shape}")
    return arr


def as_vector(x, field: Field) -> np.ndarray:
    return field.array(x)


def scale_of(A) -> float:
    """Magnitude reference used for float-mode sign tests."""
    if A.size == 0:
        return 1.0
    return max(float(abs(v)) for v in A.flat) or 1.0


def fmt(value) -> str:
    """Render a scalar as a JSON string: ``"3/4"`` for rationals, repr for floats."""
    if isinstance(value, (float, np.floating)):
        return repr(float(value))
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    q = Q(value)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def rational_sqrt(q):
    """Exact square root of a nonnegative rational, or None when irrational."""
    q = Q(q)
    if q < 0:
        return None
    num, den = int(q.numerator), int(q.denominator)
    rn, rd = math.isqrt(num), math.isqrt(den)
    if rn * rn == num and rd * rd == den:
        return Q(rn, rd)
    return None
