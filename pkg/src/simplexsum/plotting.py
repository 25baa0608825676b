"""Figures written next to CLI reports."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402


def _save(fig, path):
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def plot_coefficients(points, signed, path, title=None):
    """Bar chart of the signed coefficients; planar inputs also get a
    panel with the points labelled by their coefficient."""
    values = [float(c) for c in signed]
    planar = len(points[0]) == 2
    fig, axes = plt.subplots(1, 2 if planar else 1, figsize=(9 if planar else 5, 4))
    ax = axes[0] if planar else axes
    colors = ["tab:blue" if v >= 0 else "tab:red" for v in values]
    ax.bar(range(len(values)), values, color=colors)
    ax.axhline(0, color="k", lw=0.8)
    ax.set_xticks(range(len(values)))
    ax.set_xticklabels([f"A{i}" for i in range(len(values))])
    ax.set_ylabel("signed coefficient")
    ax.set_title(title or f"n = {len(points[0])}")

    if planar:
        ax = axes[1]
        xs = [float(p[0]) for p in points]
        ys = [float(p[1]) for p in points]
        ax.plot(xs + xs[:1], ys + ys[:1], "-o", color="0.4")
        for i, (x, y) in enumerate(zip(xs, ys)):
            ax.annotate(f"A{i}: {values[i]:g}", (x, y), textcoords="offset points", xytext=(5, 5))
        ax.set_aspect("equal", adjustable="datalim")
        ax.set_title("points in cyclic order")
    _save(fig, path)


def plot_suite(report: dict, path, tolerance=None):
    """Largest float relative residual per dimension, on a log axis."""
    by_dim = report["max_float_residual_by_dimension"]
    dims = [int(d) for d in by_dim]
    vals = [max(float(v), 1e-18) for v in by_dim.values()]
    fig, ax = plt.subplots(figsize=(5, 3.5))
    ax.semilogy(dims, vals, "o-", label="max relative residual")
    if tolerance is not None:
        ax.axhline(tolerance, color="tab:red", ls="--", label=f"tolerance {tolerance:g}")
    ax.set_xlabel("dimension n")
    ax.set_ylabel("float residual / scale")
    ax.set_xticks(dims)
    ax.set_title(f"{report['trial_count']} trials, {report['failure_count']} failures")
    ax.legend(fontsize=8)
    _save(fig, path)
