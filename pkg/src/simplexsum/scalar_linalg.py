"""Scalar realizations and determinant kernels.

Two scalar realizations are supported:

* exact rationals, carried as :class:`fractions.Fraction` (always reduced,
  positive denominator, zero is ``0/1``);
* binary floats, carried as Python ``float``.

Matrices are stored by column because every matrix built elsewhere in the
package is a list of difference vectors laid side by side.
"""

from __future__ import annotations

import math
import sys
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Sequence, Union

Scalar = Union[Fraction, float]

EXACT = "exact"
FLOAT = "float"
BACKENDS = (EXACT, FLOAT)

UNIT_ROUNDOFF = sys.float_info.epsilon / 2

# Orders at or below this go through cofactor expansion on the exact path.
COFACTOR_MAX_ORDER = 3


class NonFiniteInput(ValueError):
    """A float matrix or point carries an inf or nan entry."""


def to_rational(value) -> Fraction:
    """Convert ``value`` to an exact rational without passing through a float.

    Strings may be integers, ``"p/q"`` or decimals (``"0.25"``, ``"-1e-3"``).
    Python floats are converted by their exact binary value.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not coordinates")
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, float):
        if not math.isfinite(value):
            raise NonFiniteInput(f"non-finite value {value!r}")
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        try:
            return Fraction(text)
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"cannot parse {value!r} as a rational") from exc
    raise TypeError(f"unsupported scalar type {type(value).__name__}")


def to_float(value) -> float:
    if isinstance(value, str):
        value = to_rational(value)
    out = float(value)
    if not math.isfinite(out):
        raise NonFiniteInput(f"non-finite value {value!r}")
    return out


def convert(value, backend: str) -> Scalar:
    if backend == EXACT:
        return to_rational(value)
    if backend == FLOAT:
        return to_float(value)
    raise ValueError(f"unknown backend {backend!r}")


def format_rational(q: Fraction) -> str:
    """Canonical text form: ``"p"`` when the denominator is 1, else ``"p/q"``."""
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


@dataclass(frozen=True)
class SquareMatrix:
    """An ``order x order`` matrix stored as a tuple of columns."""

    columns: tuple

    def __post_init__(self):
        cols = tuple(tuple(c) for c in self.columns)
        if not cols:
            raise ValueError("matrix order must be at least 1")
        n = len(cols)
        for c in cols:
            if len(c) != n:
                raise ValueError(f"column of length {len(c)} in a matrix of order {n}")
        object.__setattr__(self, "columns", cols)

    @classmethod
    def from_columns(cls, columns: Iterable[Sequence], backend: str = EXACT) -> "SquareMatrix":
        return cls(tuple(tuple(convert(x, backend) for x in col) for col in columns))

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence], backend: str = EXACT) -> "SquareMatrix":
        rows = [list(r) for r in rows]
        return cls.from_columns(zip(*rows), backend)

    @property
    def order(self) -> int:
        return len(self.columns)

    def rows(self) -> list[list]:
        return [list(r) for r in zip(*self.columns)]

    @property
    def is_exact(self) -> bool:
        return not any(isinstance(x, float) for c in self.columns for x in c)

    def with_column(self, j: int, column: Sequence) -> "SquareMatrix":
        cols = list(self.columns)
        cols[j] = tuple(column)
        return SquareMatrix(tuple(cols))

    def swap_columns(self, a: int, b: int) -> "SquareMatrix":
        cols = list(self.columns)
        cols[a], cols[b] = cols[b], cols[a]
        return SquareMatrix(tuple(cols))


def det_cofactor(m: SquareMatrix) -> Scalar:
    """Determinant by Laplace expansion along successive columns.

    Minors are shared between branches (keyed by the set of rows still in
    play), so the cost is ``O(n 2^n)`` rather than ``O(n!)``; the arithmetic
    is still the plain cofactor sum and is exact for rational entries.
    """
    cols = m.columns
    n = len(cols)
    memo: dict[int, Scalar] = {}

    def expand(col: int, rows_left: int) -> Scalar:
        # rows_left is a bitmask of rows not yet used; exactly n - col bits set.
        if col == n:
            return 1
        hit = memo.get(rows_left)
        if hit is not None:
            return hit
        total = 0
        position = 0
        for r in range(n):
            bit = 1 << r
            if rows_left & bit:
                entry = cols[col][r]
                if entry:
                    term = entry * expand(col + 1, rows_left & ~bit)
                    total = total - term if position % 2 else total + term
                position += 1
        memo[rows_left] = total
        return total

    result = expand(0, (1 << n) - 1)
    if m.is_exact:
        return Fraction(result)
    return float(result)


def _bareiss(rows: list[list[int]]) -> tuple[int, list[int]]:
    """Fraction-free elimination on an integer matrix, in place.

    Returns the determinant and the sequence of pivots used. Every division
    is exact (Sylvester's identity), so all intermediates stay integers.
    """
    n = len(rows)
    sign = 1
    prev = 1
    pivots: list[int] = []
    for k in range(n - 1):
        if rows[k][k] == 0:
            for r in range(k + 1, n):
                if rows[r][k] != 0:
                    rows[k], rows[r] = rows[r], rows[k]
                    sign = -sign
                    break
            else:
                return 0, pivots
        pivot = rows[k][k]
        pivots.append(pivot)
        row_k = rows[k]
        for i in range(k + 1, n):
            row_i = rows[i]
            lead = row_i[k]
            for j in range(k + 1, n):
                row_i[j] = (pivot * row_i[j] - lead * row_k[j]) // prev
            row_i[k] = 0
        prev = pivot
    pivots.append(rows[n - 1][n - 1])
    return sign * rows[n - 1][n - 1], pivots


def _integer_rows(m: SquareMatrix) -> tuple[list[list[int]], int]:
    """Clear denominators column by column; returns rows and the total scale."""
    scaled_cols = []
    scale = 1
    for col in m.columns:
        qs = [to_rational(x) for x in col]
        lcm = 1
        for q in qs:
            lcm = lcm * q.denominator // math.gcd(lcm, q.denominator)
        scaled_cols.append([q.numerator * (lcm // q.denominator) for q in qs])
        scale *= lcm
    return [list(r) for r in zip(*scaled_cols)], scale


def det_bareiss(m: SquareMatrix) -> Fraction:
    """Exact determinant by two-step fraction-free (Bareiss) elimination.

    Rational columns are first multiplied through by the lcm of their
    denominators, so elimination runs on integers only.
    """
    if m.order == 1:
        return to_rational(m.columns[0][0])
    rows, scale = _integer_rows(m)
    det, _ = _bareiss(rows)
    return Fraction(det, scale)


def bareiss_pivots(m: SquareMatrix) -> list[int]:
    """Pivots met during Bareiss elimination of the integer-scaled matrix."""
    rows, _ = _integer_rows(m)
    return _bareiss(rows)[1]


@dataclass(frozen=True)
class FloatDet:
    value: float
    error_scale: float


def det_float(m: SquareMatrix) -> FloatDet:
    """Float determinant by Gaussian elimination with partial pivoting.

    ``error_scale`` is ``u * n**3 * g**n`` where ``g`` is the largest entry
    magnitude seen at any stage of the elimination; it bounds the rounding
    error of ``value`` heuristically and is never used to alter it.
    """
    a = [[float(x) for x in row] for row in m.rows()]
    n = len(a)
    growth = 0.0
    for row in a:
        for x in row:
            if not math.isfinite(x):
                raise NonFiniteInput("matrix has a non-finite entry")
            growth = max(growth, abs(x))

    det = 1.0
    for k in range(n):
        p = max(range(k, n), key=lambda r: abs(a[r][k]))
        if a[p][k] == 0.0:
            det = 0.0
            break
        if p != k:
            a[k], a[p] = a[p], a[k]
            det = -det
        pivot = a[k][k]
        det *= pivot
        for i in range(k + 1, n):
            f = a[i][k] / pivot
            if f == 0.0:
                continue
            row_i, row_k = a[i], a[k]
            for j in range(k + 1, n):
                row_i[j] -= f * row_k[j]
                growth = max(growth, abs(row_i[j]))
    return FloatDet(det, UNIT_ROUNDOFF * n ** 3 * growth ** n)


def det(m: SquareMatrix) -> Scalar:
    """Backend dispatch: cofactor for small exact matrices, Bareiss above."""
    if m.is_exact:
        if m.order <= COFACTOR_MAX_ORDER:
            return det_cofactor(m)
        return det_bareiss(m)
    return det_float(m).value
