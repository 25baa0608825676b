"""Predicates derived from the identity: barycentric coordinates, affine
dependence certificates and simplex degeneracy."""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Sequence

from .identity import Configuration, DimensionMismatch, coefficients, delta_error_scale
from .scalar_linalg import EXACT, FLOAT, Scalar, SquareMatrix, convert, det, det_float


class DegenerateSimplex(ValueError):
    def __init__(self, witness, message: str = "simplex is degenerate"):
        super().__init__(f"{message} (witness determinant {witness})")
        self.witness = witness


class AllDegenerate(ValueError):
    """Every coefficient vanishes, so the identity certifies nothing."""


@dataclass(frozen=True)
class BarycentricCoords:
    lambdas: tuple

    def reconstruct(self, simplex: Sequence[Sequence]) -> tuple:
        n = len(simplex[0])
        out = []
        for k in range(n):
            acc = 0
            for lam, p in zip(self.lambdas, simplex):
                acc = acc + lam * p[k]
            out.append(acc)
        return tuple(out)


@dataclass(frozen=True)
class DependenceCertificate:
    coeffs: tuple


class DegeneracyCheck(NamedTuple):
    degenerate: bool
    witness: Scalar


def _points(points: Sequence[Sequence], backend: str) -> list[tuple]:
    return [tuple(convert(x, backend) for x in p) for p in points]


def barycentric(simplex: Sequence[Sequence], p: Sequence, backend: str = EXACT) -> BarycentricCoords:
    """Barycentric coordinates of ``p`` in ``simplex`` as ratios of coefficients.

    With ``A_0..A_n`` the simplex and ``A_{n+1} = p``, the identity gives
    ``lambda_k = -c_k / c_{n+1}`` where ``c_i`` are the signed coefficients.
    """
    pts = _points(simplex, backend)
    n = len(pts) - 1
    if n < 1 or any(len(a) != n for a in pts) or len(p) != n:
        raise DimensionMismatch(f"need n+1 points of length n and a query of length n; got {len(pts)} points")
    cfg = Configuration(n, tuple(pts) + (tuple(p),), backend)
    coeffs = coefficients(cfg)
    c = coeffs.signed
    last = c[n + 1]
    # delta_{n+1} is det[A_1 - A_0 | ... | A_n - A_0], the simplex orientation.
    witness = coeffs.deltas[n + 1]
    if backend == EXACT:
        if last == 0:
            raise DegenerateSimplex(witness)
    elif abs(last) <= delta_error_scale(cfg, n + 1):
        raise DegenerateSimplex(witness)
    return BarycentricCoords(tuple(-c[k] / last for k in range(n + 1)))


def dependence_certificate(cfg: Configuration, normalize: bool = False) -> DependenceCertificate:
    """The signed coefficients as an affine dependence among the points.

    With ``normalize`` the vector is negated if needed so that its first
    nonzero entry is positive.
    """
    signed = coefficients(cfg).signed
    if all(c == 0 for c in signed):
        raise AllDegenerate("all coefficients vanish; no certificate from the identity")
    if normalize:
        first = next(c for c in signed if c != 0)
        if first < 0:
            signed = tuple(-c for c in signed)
    return DependenceCertificate(tuple(signed))


def is_degenerate_simplex(simplex: Sequence[Sequence], backend: str = EXACT) -> DegeneracyCheck:
    pts = _points(simplex, backend)
    n = len(pts) - 1
    if n < 1 or any(len(a) != n for a in pts):
        raise DimensionMismatch("need n+1 points of length n")
    base = pts[0]
    m = SquareMatrix(tuple(tuple(a - b for a, b in zip(q, base)) for q in pts[1:]))
    if backend == FLOAT:
        fd = det_float(m)
        return DegeneracyCheck(abs(fd.value) <= fd.error_scale, fd.value)
    w = det(m)
    return DegeneracyCheck(w == 0, w)
