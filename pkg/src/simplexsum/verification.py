"""Independent oracles and a seeded property harness.

Every trial draws its configuration and check parameters from its own
generator, keyed on ``(seed, dimension, trial)``, so trials can run in any
order or in parallel without changing the report.
"""

from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Optional, Sequence

from .applications import DegenerateSimplex, barycentric, is_degenerate_simplex
from .identity import (
    DEFAULT_TOLERANCE,
    Configuration,
    build_m_matrix,
    coefficients,
    delta,
    delta_expanded,
    residual,
    sign,
)
from .io import config_from_dict, config_to_dict, format_scalar
from .scalar_linalg import EXACT, FLOAT, det_bareiss, det_cofactor

NEAR_DEGENERATE_OFFSET = Fraction(1, 2 ** 40)
DISTRIBUTIONS = ("integer", "rational", "near_degenerate")


class RankDeficient(ValueError):
    """The lifted point matrix has rank below n+1."""


def nullspace_oracle(cfg: Configuration) -> tuple:
    """A spanning vector of the affine dependences among the points.

    Row-reduces the ``(n+1) x (n+2)`` matrix whose columns are ``(A_i; 1)``
    over the rationals.
    """
    n, size = cfg.dimension, cfg.size
    rows = [[Fraction(p[r]) for p in cfg.points] for r in range(n)]
    rows.append([Fraction(1)] * size)

    pivot_cols = []
    r = 0
    for c in range(size):
        pr = next((k for k in range(r, len(rows)) if rows[k][c] != 0), None)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for k in range(len(rows)):
            if k != r and rows[k][c] != 0:
                f = rows[k][c]
                rows[k] = [a - f * b for a, b in zip(rows[k], rows[r])]
        pivot_cols.append(c)
        r += 1
        if r == len(rows):
            break
    if len(pivot_cols) < n + 1:
        raise RankDeficient(f"lifted rank {len(pivot_cols)} < {n + 1}")

    free = next(c for c in range(size) if c not in pivot_cols)
    out = [Fraction(0)] * size
    out[free] = Fraction(1)
    for row_idx, c in enumerate(pivot_cols):
        out[c] = -rows[row_idx][free]
    return tuple(out)


def is_parallel(c: Sequence, d: Sequence) -> bool:
    """``c`` and ``d`` are scalar multiples: every ``c_i d_j == c_j d_i``."""
    if len(c) != len(d):
        return False
    return all(c[i] * d[j] == c[j] * d[i] for i in range(len(c)) for j in range(i + 1, len(c)))


def _coordinate(rng: random.Random, distribution: str) -> Fraction:
    if distribution == "rational":
        return Fraction(rng.randint(-100, 100), rng.randint(1, 100))
    return Fraction(rng.randint(-10, 10))


def generate_configuration(
    dimension: int,
    distribution: str = "integer",
    seed=0,
    perturbation: Fraction = NEAR_DEGENERATE_OFFSET,
) -> Configuration:
    """Reproducible random configuration of ``dimension + 2`` points.

    ``integer`` draws coordinates in [-10, 10]; ``rational`` draws
    ``p/q`` with ``|p| <= 100`` and ``1 <= q <= 100``. ``near_degenerate``
    starts from an integer configuration and moves the last point to a
    dyadic affine combination of ``A_0 .. A_{n-1}``, displaced by
    ``perturbation`` along one axis, so the simplex omitting ``A_n`` is
    nearly flat (exactly flat when ``perturbation`` is 0) while the simplex
    ``A_0 .. A_n`` is kept non-degenerate.
    """
    if dimension < 1:
        raise ValueError("dimension must be at least 1")
    if distribution not in DISTRIBUTIONS:
        raise ValueError(f"unknown distribution {distribution!r}")
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    base = "rational" if distribution == "rational" else "integer"
    points = [[_coordinate(rng, base) for _ in range(dimension)] for _ in range(dimension + 2)]
    if distribution == "near_degenerate":
        # Only the chosen simplex may be flat: redraw until A_0..A_n spans R^n.
        while is_degenerate_simplex(points[: dimension + 1]).degenerate:
            points = [[_coordinate(rng, base) for _ in range(dimension)] for _ in range(dimension + 2)]
        weights = [Fraction(rng.randint(-8, 8), 8) for _ in range(dimension - 1)]
        weights.append(1 - sum(weights, Fraction(0)))
        target = [sum((w * points[k][r] for k, w in enumerate(weights)), Fraction(0)) for r in range(dimension)]
        axis = rng.randrange(dimension)
        target[axis] += perturbation * rng.choice((-1, 1))
        points[dimension + 1] = target
    return Configuration(dimension, tuple(points), EXACT)


def near_degenerate_simplex(cfg: Configuration) -> list:
    """The vertex subset made nearly flat by the ``near_degenerate`` generator."""
    n = cfg.dimension
    return list(cfg.points[:n]) + [cfg.points[n + 1]]


# -- checks ----------------------------------------------------------------
#
# Each check takes a configuration plus keyword parameters and returns None
# on success or a dict with "expected" and "actual". Parameters are plain
# JSON values so a failure replays from its record.


def check_exact_residual(cfg: Configuration) -> Optional[dict]:
    res = residual(cfg)
    if res.passed:
        return None
    return {
        "expected": {"vector": [0] * cfg.dimension, "scalar": 0},
        "actual": {"vector": [format_scalar(x) for x in res.vector], "scalar": format_scalar(res.scalar)},
    }


def check_expansion(cfg: Configuration) -> Optional[dict]:
    for i in range(cfg.size):
        a, b = delta(cfg, i), delta_expanded(cfg, i)
        if a != b:
            return {"index": i, "expected": format_scalar(a), "actual": format_scalar(b)}
    return None


def check_translation(cfg: Configuration, offset: Sequence) -> Optional[dict]:
    moved = cfg.translate([Fraction(x) for x in offset])
    for i in range(cfg.size):
        a, b = delta(cfg, i), delta(moved, i)
        if a != b:
            return {"index": i, "expected": format_scalar(a), "actual": format_scalar(b)}
    return None


def check_cyclic_relabel(cfg: Configuration) -> Optional[dict]:
    shifted = cfg.rotate(1)
    for i in range(cfg.size):
        a, b = delta(cfg, (i + 1) % cfg.size), delta(shifted, i)
        if a != b:
            return {"index": i, "expected": format_scalar(a), "actual": format_scalar(b)}
    return None


def check_duplicate_vanishing(cfg: Configuration, source: int, target: int) -> Optional[dict]:
    dup = cfg.replace_point(target, cfg.points[source])
    for i in range(cfg.size):
        if i in (source, target):
            continue
        d = delta(dup, i)
        if d != 0:
            return {"index": i, "expected": 0, "actual": format_scalar(d)}
    if not residual(dup).passed:
        return {"expected": "zero residual", "actual": "nonzero residual"}
    return None


def check_sign_pattern(cfg: Configuration) -> Optional[dict]:
    n = cfg.dimension
    signs = list(coefficients(cfg).signs)
    expected = [1] * cfg.size if n % 2 else [(-1) ** i for i in range(cfg.size)]
    if signs != expected or signs != [sign(i, n) for i in range(cfg.size)]:
        return {"expected": expected, "actual": signs}
    return None


def check_barycentric(cfg: Configuration, weights: Sequence) -> Optional[dict]:
    """Reconstruction of the last point and of an interior point."""
    n = cfg.dimension
    simplex = cfg.points[: n + 1]
    try:
        lam = barycentric(simplex, cfg.points[n + 1])
    except DegenerateSimplex:
        return None
    if sum(lam.lambdas) != 1 or lam.reconstruct(simplex) != cfg.points[n + 1]:
        return {"expected": [format_scalar(x) for x in cfg.points[n + 1]],
                "actual": [format_scalar(x) for x in lam.reconstruct(simplex)]}

    w = [Fraction(x) for x in weights]
    w = [x / sum(w) for x in w]
    inside = tuple(sum((w[k] * simplex[k][r] for k in range(n + 1)), Fraction(0)) for r in range(n))
    lam = barycentric(simplex, inside)
    if list(lam.lambdas) != w or lam.reconstruct(simplex) != inside:
        return {"expected": [format_scalar(x) for x in w], "actual": [format_scalar(x) for x in lam.lambdas]}
    if not all(0 < x < 1 for x in lam.lambdas):
        return {"expected": "all lambdas in (0, 1)", "actual": [format_scalar(x) for x in lam.lambdas]}
    return None


def check_det_agreement(cfg: Configuration) -> Optional[dict]:
    for i in range(cfg.size):
        m = build_m_matrix(cfg, i)
        a, b = det_cofactor(m), det_bareiss(m)
        if a != b:
            return {"index": i, "expected": format_scalar(a), "actual": format_scalar(b)}
    return None


def check_float_residual(cfg: Configuration, tolerance: float = DEFAULT_TOLERANCE) -> Optional[dict]:
    fcfg = cfg.as_backend(FLOAT)
    res = residual(fcfg, tolerance)
    if res.passed:
        return None
    rationalized = fcfg.as_backend(EXACT)
    return {
        "expected": f"relative residual <= {tolerance}",
        "actual": res.relative_error,
        "exact_on_rationalized": residual(rationalized).passed,
    }


CHECKS: dict[str, Callable[..., Optional[dict]]] = {
    "exact_residual": check_exact_residual,
    "expansion": check_expansion,
    "translation": check_translation,
    "cyclic_relabel": check_cyclic_relabel,
    "duplicate_vanishing": check_duplicate_vanishing,
    "sign_pattern": check_sign_pattern,
    "barycentric": check_barycentric,
    "det_agreement": check_det_agreement,
    "float_residual": check_float_residual,
}

# Exact checks first; the float check runs last so its failures can be read
# against exact checks that already passed on the same configuration.
EXACT_CHECKS = [name for name in CHECKS if name != "float_residual"]


@dataclass
class TrialReport:
    seed: object
    dimensions: list
    trial_count: int = 0
    failures: list = field(default_factory=list)
    max_float_residual: float = 0.0
    float_residuals: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict:
        return {
            "seed": self.seed,
            "dimensions": list(self.dimensions),
            "trial_count": self.trial_count,
            "failure_count": len(self.failures),
            "max_float_residual": self.max_float_residual,
            "max_float_residual_by_dimension": {
                str(n): max(v, default=0.0) for n, v in sorted(self.float_residuals.items())
            },
            "failures": self.failures,
        }


def trial_rng(seed, dimension: int, trial: int) -> random.Random:
    return random.Random(f"{seed}/{dimension}/{trial}")


def _draw_params(rng: random.Random, cfg: Configuration, tolerance: float) -> dict:
    n, size = cfg.dimension, cfg.size
    source, target = rng.sample(range(size), 2)
    return {
        "translation": {"offset": [format_scalar(_coordinate(rng, "rational")) for _ in range(n)]},
        "duplicate_vanishing": {"source": source, "target": target},
        "barycentric": {"weights": [rng.randint(1, 20) for _ in range(n + 1)]},
        "float_residual": {"tolerance": tolerance},
    }


def run_trial(cfg: Configuration, params: dict, where: dict) -> tuple[list, float]:
    """Run every check on one configuration; returns failures and the float residual."""
    failures = []
    for name in EXACT_CHECKS + ["float_residual"]:
        kwargs = params.get(name, {})
        outcome = CHECKS[name](cfg, **kwargs)
        if outcome is not None:
            failures.append({**where, "check": name, "config": config_to_dict(cfg), "params": kwargs, **outcome})
    tol = params.get("float_residual", {}).get("tolerance", DEFAULT_TOLERANCE)
    rel = residual(cfg.as_backend(FLOAT), tol).relative_error
    return failures, rel


def _trial_task(args) -> tuple[int, list, float]:
    seed, n, t, distribution, tolerance = args
    rng = trial_rng(seed, n, t)
    dist = DISTRIBUTIONS[t % len(DISTRIBUTIONS)] if distribution == "mixed" else distribution
    cfg = generate_configuration(n, dist, rng)
    params = _draw_params(rng, cfg, tolerance)
    failures, rel = run_trial(cfg, params, {"dimension": n, "trial": t, "distribution": dist})
    return n, failures, rel


def run_property_suite(
    dimensions: Iterable[int] = range(1, 7),
    trials: int = 100,
    seed=42,
    distribution: str = "mixed",
    tolerance: float = DEFAULT_TOLERANCE,
    extra_configs: Sequence[Configuration] = (),
    workers: int = 1,
) -> TrialReport:
    """Run every check over ``trials`` seeded configurations per dimension.

    ``distribution`` is one of the generator distributions or ``"mixed"``,
    which cycles through all three. ``extra_configs`` are checked as well,
    after the generated ones, under trial labels ``"extra-<k>"``.
    """
    if trials < 1:
        raise ValueError("trials must be at least 1")
    dims = list(dimensions)
    report = TrialReport(seed=seed, dimensions=dims)
    tasks = [(seed, n, t, distribution, tolerance) for n in dims for t in range(trials)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_trial_task, tasks, chunksize=16))
    else:
        results = [_trial_task(task) for task in tasks]

    for k, cfg in enumerate(extra_configs):
        rng = trial_rng(seed, cfg.dimension, f"extra-{k}")
        params = _draw_params(rng, cfg, tolerance)
        failures, rel = run_trial(cfg, params, {"dimension": cfg.dimension, "trial": f"extra-{k}"})
        results.append((cfg.dimension, failures, rel))

    for n, failures, rel in results:
        report.trial_count += 1
        report.failures.extend(failures)
        report.float_residuals.setdefault(n, []).append(rel)
        report.max_float_residual = max(report.max_float_residual, rel)
    return report


def replay_failure(record: dict) -> Optional[dict]:
    """Re-run the check named in a failure record on its stored configuration."""
    cfg = config_from_dict(record["config"])
    return CHECKS[record["check"]](cfg, **record.get("params", {}))
