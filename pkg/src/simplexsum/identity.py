"""Signed-volume coefficients of n+2 points in R^n and the vector identity.

For points ``A_0 .. A_{n+1}`` (indices taken mod ``n+2``) let

    M_i = [A_{i+2} - A_{i+1} | A_{i+3} - A_{i+1} | ... | A_{i+n+1} - A_{i+1}]

and ``delta_i = det M_i``. Then

    sum_i (-1)**(i*(n+1)) * delta_i * A_i = 0     and
    sum_i (-1)**(i*(n+1)) * delta_i       = 0.

``delta_i`` is ``n!`` times the signed volume of the simplex on the points
other than ``A_i``; :func:`signed_volume` divides the factorial out.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .scalar_linalg import (
    EXACT,
    FLOAT,
    NonFiniteInput,
    Scalar,
    SquareMatrix,
    convert,
    det,
    det_float,
)

DEFAULT_TOLERANCE = 1e-9


class DimensionMismatch(ValueError):
    """Wrong number of points, or a point of the wrong length."""


@dataclass(frozen=True)
class Configuration:
    """An ordered list of ``dimension + 2`` points in ``R^dimension``.

    All coordinates share one scalar realization, named by ``backend``.
    """

    dimension: int
    points: tuple
    backend: str = EXACT

    def __post_init__(self):
        if self.dimension < 1:
            raise DimensionMismatch("dimension must be at least 1")
        pts = tuple(tuple(convert(x, self.backend) for x in p) for p in self.points)
        if len(pts) != self.dimension + 2:
            raise DimensionMismatch(
                f"expected {self.dimension + 2} points in dimension {self.dimension}, got {len(pts)}"
            )
        for k, p in enumerate(pts):
            if len(p) != self.dimension:
                raise DimensionMismatch(f"point {k} has {len(p)} coordinates, expected {self.dimension}")
        object.__setattr__(self, "points", pts)

    @classmethod
    def from_points(cls, points: Iterable[Sequence], backend: str = EXACT) -> "Configuration":
        pts = [list(p) for p in points]
        if not pts:
            raise DimensionMismatch("no points given")
        return cls(len(pts[0]), tuple(pts), backend)

    @property
    def size(self) -> int:
        return self.dimension + 2

    def as_backend(self, backend: str) -> "Configuration":
        return Configuration(self.dimension, self.points, backend)

    def translate(self, offset: Sequence) -> "Configuration":
        t = [convert(x, self.backend) for x in offset]
        return Configuration(
            self.dimension, tuple(tuple(a + b for a, b in zip(p, t)) for p in self.points), self.backend
        )

    def scale(self, factor) -> "Configuration":
        c = convert(factor, self.backend)
        return Configuration(self.dimension, tuple(tuple(c * a for a in p) for p in self.points), self.backend)

    def rotate(self, shift: int = 1) -> "Configuration":
        """Relabel so that the new ``A_k`` is the old ``A_{k+shift}``."""
        k = shift % self.size
        pts = self.points[k:] + self.points[:k]
        return Configuration(self.dimension, pts, self.backend)

    def replace_point(self, index: int, point: Sequence) -> "Configuration":
        pts = list(self.points)
        pts[index] = tuple(point)
        return Configuration(self.dimension, tuple(pts), self.backend)


def sign(i: int, n: int) -> int:
    """``(-1)**(i*(n+1))``: always +1 in odd dimension, alternating in even."""
    return -1 if (i * (n + 1)) % 2 else 1


def _check_index(cfg: Configuration, i: int) -> None:
    if not 0 <= i < cfg.size:
        raise IndexError(f"index {i} outside 0..{cfg.size - 1}")


def build_m_matrix(cfg: Configuration, i: int) -> SquareMatrix:
    _check_index(cfg, i)
    n, size, pts = cfg.dimension, cfg.size, cfg.points
    base = pts[(i + 1) % size]
    cols = []
    for j in range(1, n + 1):
        p = pts[(i + j + 1) % size]
        cols.append(tuple(a - b for a, b in zip(p, base)))
    return SquareMatrix(tuple(cols))


def delta(cfg: Configuration, i: int) -> Scalar:
    return det(build_m_matrix(cfg, i))


def signed_volume(cfg: Configuration, i: int) -> Scalar:
    """Signed volume of the simplex omitting ``A_i``: ``delta_i / n!``."""
    return delta(cfg, i) / math.factorial(cfg.dimension)


def delta_expanded(cfg: Configuration, i: int) -> Scalar:
    """``delta_i`` from undifferenced point columns.

    Sums ``(-1)**(j-1) * det[A_{i+1} | ... | (A_{i+j} omitted) | ... | A_{i+n+1}]``
    over ``j = 1 .. n+1``.
    """
    _check_index(cfg, i)
    n, size, pts = cfg.dimension, cfg.size, cfg.points
    used = [pts[(i + k) % size] for k in range(1, n + 2)]
    total = 0
    for j in range(1, n + 2):
        cols = used[: j - 1] + used[j:]
        term = det(SquareMatrix(tuple(cols)))
        total = total + term if j % 2 == 1 else total - term
    if cfg.backend == EXACT:
        return Fraction(total)
    return float(total)


@dataclass(frozen=True)
class CoefficientVector:
    deltas: tuple
    signs: tuple
    signed: tuple

    def __len__(self):
        return len(self.deltas)

    @property
    def is_zero(self) -> bool:
        return all(d == 0 for d in self.deltas)


def coefficients(cfg: Configuration) -> CoefficientVector:
    n = cfg.dimension
    deltas = tuple(delta(cfg, i) for i in range(cfg.size))
    signs = tuple(sign(i, n) for i in range(cfg.size))
    signed = tuple(s * d for s, d in zip(signs, deltas))
    return CoefficientVector(deltas, signs, signed)


@dataclass(frozen=True)
class Residual:
    """Both sides of the identity evaluated on one configuration.

    ``tolerance`` is ``None`` on the exact backend, where only exact zero
    passes.
    """

    vector: tuple
    scalar: Scalar
    passed: bool
    tolerance: Optional[float]
    coefficients: CoefficientVector
    vector_scale: Scalar = 0
    scalar_scale: Scalar = 0

    @property
    def relative_error(self) -> float:
        """Largest of the two residuals measured against their scales."""
        worst = 0.0
        vmax = max(abs(x) for x in self.vector)
        for value, scale in ((vmax, self.vector_scale), (abs(self.scalar), self.scalar_scale)):
            if value == 0:
                continue
            if scale == 0:
                return math.inf
            worst = max(worst, float(value / scale))
        return worst


def residual(cfg: Configuration, tolerance: Optional[float] = None) -> Residual:
    """Evaluate both identities; exact configurations pass only on exact zero.

    On the float backend the verdict is
    ``max|vector| <= tol * sum|delta_i| * max_i max|A_i|`` and
    ``|scalar| <= tol * sum|delta_i|``.
    """
    coeffs = coefficients(cfg)
    n = cfg.dimension
    zero = Fraction(0) if cfg.backend == EXACT else 0.0
    vector = [zero] * n
    for c, p in zip(coeffs.signed, cfg.points):
        for k in range(n):
            vector[k] = vector[k] + c * p[k]
    scalar = sum(coeffs.signed, zero)
    mass = sum((abs(d) for d in coeffs.deltas), zero)
    reach = max(abs(x) for p in cfg.points for x in p)
    vector_scale = mass * reach

    if cfg.backend == EXACT:
        passed = scalar == 0 and all(x == 0 for x in vector)
        return Residual(tuple(vector), scalar, passed, None, coeffs, vector_scale, mass)

    if not all(math.isfinite(x) for x in vector) or not math.isfinite(scalar):
        raise NonFiniteInput("residual overflowed")
    tol = DEFAULT_TOLERANCE if tolerance is None else float(tolerance)
    vmax = max(abs(x) for x in vector)
    passed = vmax <= tol * vector_scale and abs(scalar) <= tol * mass
    return Residual(tuple(vector), scalar, passed, tol, coeffs, vector_scale, mass)


def delta_error_scale(cfg: Configuration, i: int) -> float:
    """Rounding-error scale of the float ``delta_i``."""
    return det_float(build_m_matrix(cfg.as_backend(FLOAT), i)).error_scale
