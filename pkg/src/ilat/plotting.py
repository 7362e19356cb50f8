"""Static figures for reports: the lattice-class graph and Newton polygons."""

from __future__ import annotations

import math
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
from matplotlib.ticker import MaxNLocator  # noqa: E402

from .lattice_classes import LatticeGraph  # noqa: E402
from .padic import vp  # noqa: E402
from .poly import newton_polygon  # noqa: E402


def _layout(graph: LatticeGraph) -> list[tuple[float, float]]:
    # each coordinate gets its own direction in the plane, spread over a half turn
    coords = [v.coords(graph.with_p) for v in graph.vertices]
    r = len(coords[0]) if coords else 0
    if r == 0:
        return [(0.0, 0.0) for _ in coords]
    if r == 1:
        return [(float(c[0]), 0.0) for c in coords]
    dirs = [(math.cos(math.pi * s / r), math.sin(math.pi * s / r) + 0.35 * s) for s in range(r)]
    return [(sum(x * d[0] for x, d in zip(c, dirs)), sum(x * d[1] for x, d in zip(c, dirs))) for c in coords]


def plot_lattice_graph(graph: LatticeGraph, path: str | Path, title: str | None = None) -> Path:
    pos = _layout(graph)
    fig, ax = plt.subplots(figsize=(5, 4))
    for a, b in graph.edges:
        ax.plot([pos[a][0], pos[b][0]], [pos[a][1], pos[b][1]], color="0.5", lw=1, zorder=1)
    for v, (x, y) in zip(graph.vertices, pos):
        marked = v in graph.labels
        ax.scatter([x], [y], s=120 if marked else 60, color="C3" if marked else "C0", zorder=2)
        text = v.label(graph.with_p)
        if marked:
            text += "\n" + graph.labels[v]
        ax.annotate(text, (x, y), textcoords="offset points", xytext=(6, 6), fontsize=8)
    ax.set_axis_off()
    ax.set_title(title or f"stable lattice classes ({len(graph.vertices)})", pad=16)
    path = Path(path)
    fig.savefig(path, bbox_inches="tight", dpi=120)
    plt.close(fig)
    return path


def plot_newton_polygon(coeffs, p: int, n: int, path: str | Path, title: str | None = None) -> Path:
    """Points (i, v_p(a_i)) and their lower convex hull."""
    m = p**n
    pts = [(i, vp(c % m, p)) for i, c in enumerate(coeffs) if c % m]
    hull = newton_polygon(coeffs, p, n)
    fig, ax = plt.subplots(figsize=(5, 3.5))
    ax.scatter([x for x, _ in pts], [y for _, y in pts], color="C0", zorder=2)
    ax.plot([x for x, _ in hull], [y for _, y in hull], color="C3", zorder=1)
    ax.set_xlabel("degree")
    ax.set_ylabel(f"{p}-adic valuation")
    ax.set_title(title or "Newton polygon")
    ax.xaxis.set_major_locator(MaxNLocator(integer=True))
    ax.yaxis.set_major_locator(MaxNLocator(integer=True))
    ax.grid(alpha=0.3)
    path = Path(path)
    fig.savefig(path, bbox_inches="tight", dpi=120)
    plt.close(fig)
    return path
