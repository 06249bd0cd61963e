"""Matplotlib rendering of the report figures next to the delimited output."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")  # headless rendering; figures only ever go to files

import matplotlib.pyplot as plt
import numpy as np
from matplotlib.colors import BoundaryNorm, ListedColormap
from matplotlib.patches import Patch

from otto_lgi.sweep import Phase, PhaseDiagram

_PHASE_ORDER = (Phase.QUANTUM, Phase.CLASSICAL, Phase.INFEASIBLE)
_PHASE_COLORS = {
    Phase.QUANTUM: "#33658a",
    Phase.CLASSICAL: "#f2a65a",
    Phase.INFEASIBLE: "#c7c7c7",
}

_AXIS_LABELS = {
    "T_h": r"$T_h$",
    "T_c": r"$T_c$",
    "sigma_bar": r"$\bar\sigma$",
}


def save_k3_figure(
    t: np.ndarray, values: np.ndarray, omega: float, gamma: float, path: str | Path
) -> Path:
    """K3(t) curve with the classically forbidden band K3 > 1 shaded."""
    path = Path(path)
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    ax.axhspan(1.0, 1.55, color="#f0d6d6", zorder=0)
    ax.axhline(1.0, color="#888888", lw=0.8)
    ax.plot(t, values, color="#33658a", lw=1.2)
    ax.set_xlim(t[0], t[-1])
    ax.set_ylim(min(-3.05, float(np.min(values)) - 0.05), 1.55)
    ax.set_xlabel("t")
    ax.set_ylabel(r"$K_3(t)$")
    ax.set_title(rf"$\omega = {omega:g}$, $\gamma = {gamma:g}$")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def save_phase_figure(diagram: PhaseDiagram, path: str | Path) -> Path:
    """Quantum/classical/infeasible map over the swept plane."""
    path = Path(path)
    code = {phase: k for k, phase in enumerate(_PHASE_ORDER)}
    grid = np.array(
        [[code[cell.phase] for cell in row] for row in diagram.cells], dtype=float
    )
    xs = diagram.axis_x.values()
    ys = diagram.axis_y.values()

    cmap = ListedColormap([_PHASE_COLORS[p] for p in _PHASE_ORDER])
    norm = BoundaryNorm([-0.5, 0.5, 1.5, 2.5], cmap.N)

    fig, ax = plt.subplots(figsize=(6.4, 4.8))
    ax.pcolormesh(xs, ys, grid, cmap=cmap, norm=norm, shading="nearest", rasterized=True)
    ax.set_xlabel(_AXIS_LABELS.get(diagram.axis_x.name, diagram.axis_x.name))
    ax.set_ylabel(_AXIS_LABELS.get(diagram.axis_y.name, diagram.axis_y.name))
    ax.set_title(
        rf"$\omega_1={diagram.base.omega1:g}$, $\omega_2={diagram.base.omega2:g}$, "
        rf"$\gamma_0={diagram.base.gamma0:g}$"
    )
    handles = [
        Patch(color=_PHASE_COLORS[p], label=p.value) for p in _PHASE_ORDER
    ]
    ax.legend(handles=handles, loc="upper right", framealpha=0.9, fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path
