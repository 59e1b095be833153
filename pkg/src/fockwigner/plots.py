"""Figure rendering for sampled fields; matplotlib stays an output-only dependency."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import numpy as np

from .wigner import WignerField


def save_field_heatmap(path, field: WignerField, title: str | None = None) -> None:
    """Symmetric diverging heatmap of one field; negativity shows in blue."""
    import matplotlib.pyplot as plt

    vmax = max(float(np.max(np.abs(field.values))), 1e-12)
    fig, ax = plt.subplots(figsize=(5.0, 4.2))
    mesh = ax.pcolormesh(field.grid.xs(), field.grid.ys(), field.values,
                         cmap="RdBu_r", vmin=-vmax, vmax=vmax, shading="nearest")
    fig.colorbar(mesh, ax=ax, label="W")
    ax.set_xlabel("x")
    ax.set_ylabel("y")
    ax.set_aspect("equal")
    if title:
        ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def save_panel_report(path, labeled_fields: list[tuple[str, WignerField]]) -> None:
    """One heatmap panel per field plus an overlay of their y = 0 sections."""
    import matplotlib.pyplot as plt

    n = len(labeled_fields)
    if n == 0:
        raise ValueError("nothing to plot")
    fig, axes = plt.subplots(1, n + 1, figsize=(4.0 * (n + 1), 3.6))
    axes = np.atleast_1d(axes)
    for ax, (label, field) in zip(axes[:n], labeled_fields):
        vmax = max(float(np.max(np.abs(field.values))), 1e-12)
        mesh = ax.pcolormesh(field.grid.xs(), field.grid.ys(), field.values,
                             cmap="RdBu_r", vmin=-vmax, vmax=vmax, shading="nearest")
        fig.colorbar(mesh, ax=ax)
        ax.set_title(label)
        ax.set_xlabel("x")
        ax.set_ylabel("y")
        ax.set_aspect("equal")
    cut_ax = axes[n]
    for label, field in labeled_fields:
        ys = field.grid.ys()
        iy = int(np.argmin(np.abs(ys)))
        cut_ax.plot(field.grid.xs(), field.values[iy], label=label)
    cut_ax.axhline(0.0, color="k", lw=0.6, alpha=0.5)
    cut_ax.set_xlabel("x")
    cut_ax.set_ylabel("W(x, y~0)")
    cut_ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
