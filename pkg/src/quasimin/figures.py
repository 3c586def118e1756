"""Optional matplotlib renderings written next to the delimited outputs.

Everything here is best-effort visualization: figures never influence the
numerical payloads, and the CLI only calls in when a figures directory is
requested.  The Agg backend keeps rendering headless.
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from .immersion import Immersion, induced_metric  # noqa: E402

__all__ = ["surface_figure", "report_figure", "convergence_figure"]


def _mesh(imm: Immersion, n: int = 80):
    ss = np.linspace(imm.s_range[0], imm.s_range[1], n)
    ts = np.linspace(imm.t_range[0], imm.t_range[1], n)
    return np.meshgrid(ss, ts, indexing="ij")


def surface_figure(imm: Immersion, path, grid: int = 80) -> Path:
    """Two panels: a 3-axis projection of the chart image, and the absolute
    metric coefficient |g_tt| over the parameter rectangle (its zero set
    traces the singular loci)."""
    S, T = _mesh(imm, grid)
    vals = imm.chart(S, T)
    dim = vals.shape[-1]
    ax_idx = (dim - 3, dim - 2, dim - 1)

    fig = plt.figure(figsize=(11, 4.5))
    ax3 = fig.add_subplot(1, 2, 1, projection="3d")
    ax3.plot_surface(
        vals[..., ax_idx[0]],
        vals[..., ax_idx[1]],
        vals[..., ax_idx[2]],
        cmap="viridis",
        linewidth=0,
        antialiased=True,
        alpha=0.9,
    )
    ax3.set_title(f"{imm.name}: coordinates {ax_idx}")
    ax3.set_xlabel(f"x{ax_idx[0]}")
    ax3.set_ylabel(f"x{ax_idx[1]}")
    ax3.set_zlabel(f"x{ax_idx[2]}")

    ax2 = fig.add_subplot(1, 2, 2)
    g = induced_metric(imm, S, T)
    pc = ax2.pcolormesh(S, T, np.abs(g[..., 1, 1]), shading="auto", cmap="magma")
    fig.colorbar(pc, ax=ax2, label="|g_tt|")
    ax2.set_title("induced metric coefficient")
    ax2.set_xlabel("s")
    ax2.set_ylabel("t")

    fig.tight_layout()
    path = Path(path)
    fig.savefig(path, dpi=130)
    plt.close(fig)
    return path


def report_figure(reports: dict, path) -> Path:
    """Log-scale bars of the worst residual per certification, with the
    tolerance of each drawn as a marker line."""
    names, worst, tols = [], [], []
    for name, rep in reports.items():
        residual_keys = [k for k in rep.summary if k.startswith("max_")]
        vals = [rep.summary[k] for k in residual_keys]
        names.append(name)
        worst.append(max(vals) if vals else 0.0)
        tols.append(rep.tolerance)

    x = np.arange(len(names))
    fig, ax = plt.subplots(figsize=(8, 4.2))
    floor = 1e-18
    ax.bar(x, np.maximum(worst, floor), width=0.55, color="#3b7ea1", label="worst residual")
    for xi, tol in zip(x, tols):
        ax.hlines(tol, xi - 0.35, xi + 0.35, colors="#c23b22", linestyles="--")
    ax.hlines([], [], [], colors="#c23b22", linestyles="--", label="tolerance")
    ax.set_yscale("log")
    ax.set_xticks(x)
    ax.set_xticklabels([n.replace("_", "\n") for n in names], fontsize=9)
    ax.set_ylabel("residual (log scale)")
    ax.set_title("certification residuals")
    ax.legend(loc="upper right", fontsize=8)
    fig.tight_layout()
    path = Path(path)
    fig.savefig(path, dpi=130)
    plt.close(fig)
    return path


def convergence_figure(conv: dict, path) -> Path:
    """Residual vs step on log-log axes with a fourth-order guide line."""
    fig, ax = plt.subplots(figsize=(6, 4.2))
    steps = np.array([conv["step_coarse"], conv["step_fine"]])
    for key, marker in (("frame", "o"), ("curvature", "s")):
        vals = np.array([conv[key]["coarse"], conv[key]["fine"]])
        ax.loglog(steps, np.maximum(vals, 1e-18), marker=marker, label=f"{key} residual")
    guide = conv["frame"]["coarse"] * (steps / steps[0]) ** 4
    ax.loglog(steps, guide, ":", color="gray", label="h^4 guide")
    ax.invert_xaxis()
    ax.set_xlabel("finite-difference step")
    ax.set_ylabel("max residual")
    ax.set_title("residual convergence under step halving")
    ax.legend(fontsize=8)
    fig.tight_layout()
    path = Path(path)
    fig.savefig(path, dpi=130)
    plt.close(fig)
    return path
