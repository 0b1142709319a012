"""Figure rendering for the report paths.

Every CLI command that writes a delimited table can also render a figure
next to it; these helpers hold the actual matplotlib calls.  The Agg
backend keeps everything file-only.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

__all__ = ["plot_profile", "plot_cusp_path", "plot_verify_summary"]


def plot_profile(t: np.ndarray, e: np.ndarray, second: np.ndarray, path: str) -> None:
    """Energy profile with its second differences on a twin axis."""
    fig, ax = plt.subplots(figsize=(6.0, 3.6))
    ax.plot(t, e, color="tab:blue", lw=1.5, label="E")
    ax.set_xlabel("t")
    ax.set_ylabel("E", color="tab:blue")
    ax2 = ax.twinx()
    ax2.plot(t, second, color="tab:red", lw=1.0, ls="--", label="E''")
    ax2.set_ylabel("E''", color="tab:red")
    ax.set_title("energy along the geodesic")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def plot_cusp_path(u: np.ndarray, theta: np.ndarray, path: str, hit: bool = False) -> None:
    """Geodesic trace in the (u, theta) strip; the stratum is u = 0."""
    fig, ax = plt.subplots(figsize=(6.0, 3.6))
    ax.plot(theta, u, lw=1.2)
    ax.axhline(0.0, color="k", lw=0.8)
    ax.set_xlabel("theta")
    ax.set_ylabel("u")
    title = "cusp-model geodesic"
    if hit:
        title += " (terminated at the stratum)"
    ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def plot_verify_summary(results, path: str) -> None:
    """Horizontal bar chart of measured values against tolerances."""
    names = [r.name for r in results]
    vals = [max(abs(r.measured), 1e-18) for r in results]
    tols = [r.tol if np.isfinite(r.tol) and r.tol > 0 else np.nan for r in results]
    colors = ["tab:green" if r.passed else "tab:red" for r in results]
    fig, ax = plt.subplots(figsize=(7.0, 0.42 * len(names) + 1.2))
    y = np.arange(len(names))
    ax.barh(y, vals, color=colors, height=0.6)
    for yi, tol in zip(y, tols):
        if np.isfinite(tol):
            ax.plot([tol, tol], [yi - 0.35, yi + 0.35], color="k", lw=1.0)
    ax.set_yticks(y, names)
    ax.set_xscale("log")
    ax.set_xlabel("measured (bars) vs tolerance (ticks)")
    ax.invert_yaxis()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
