"""Static SVG figures for the experiment reports.

Figures are drawn on bare ``matplotlib.figure.Figure`` objects, so no GUI
backend or global pyplot state is involved. SVG ids are salted with a
fixed string and the date metadata is omitted, making the files byte
identical across runs.
"""

from __future__ import annotations

import logging
from pathlib import Path

import matplotlib
import pandas as pd
from matplotlib.figure import Figure
from matplotlib.patches import Circle

log = logging.getLogger(__name__)

_SVG_RC = {"svg.hashsalt": "dilatia", "svg.fonttype": "path"}


def _save(fig: Figure, path: Path) -> Path:
    with matplotlib.rc_context(_SVG_RC):
        fig.savefig(path, format="svg", metadata={"Date": None})
    log.info("Wrote %s", path)
    return path


def plot_coherence(frame: pd.DataFrame, path: Path) -> Path:
    """Real and imaginary part of ``rho01`` against time, simulated and exact."""
    fig = Figure(figsize=(6, 4), layout="constrained")
    ax = fig.add_subplot()
    ax.plot(frame["t"], frame["re01_exact"], color="C0", label="Re ρ01 exact")
    ax.plot(frame["t"], frame["im01_exact"], color="C1", label="Im ρ01 exact")
    ax.plot(frame["t"], frame["re01"], "o", color="C0", markersize=4, label="Re ρ01 circuit")
    ax.plot(frame["t"], frame["im01"], "s", color="C1", markersize=4, label="Im ρ01 circuit")
    ax.set_xlabel("t (ps)")
    ax.set_ylabel("ρ01")
    ax.legend(loc="best", fontsize="small")
    return _save(fig, path)


def plot_bloch_plane(frame: pd.DataFrame, path: Path) -> Path:
    """Equatorial Bloch-plane trajectory ``(x, y)`` with the unit circle."""
    fig = Figure(figsize=(5, 5), layout="constrained")
    ax = fig.add_subplot()
    circle = Circle((0, 0), 1.0, fill=False, color="0.6", linestyle="--")
    ax.add_patch(circle)
    ax.plot(frame["x_exact"], frame["y_exact"], color="C0", label="exact")
    ax.plot(frame["x"], frame["y"], "o", color="C3", markersize=4, label="circuit")
    ax.set_xlim(-1.05, 1.05)
    ax.set_ylim(-1.05, 1.05)
    ax.set_aspect("equal")
    ax.set_xlabel("x")
    ax.set_ylabel("y")
    ax.legend(loc="upper right", fontsize="small")
    return _save(fig, path)


def plot_damping(frame: pd.DataFrame, path: Path) -> Path:
    """Excited population and coherence under amplitude damping."""
    fig = Figure(figsize=(6, 4), layout="constrained")
    ax = fig.add_subplot()
    ax.plot(frame["t"], frame["rho11_exact"], color="C0", label="ρ11 exact")
    ax.plot(frame["t"], frame["re01_exact"], color="C1", label="Re ρ01 exact")
    ax.plot(frame["t"], frame["rho11"], "o", color="C0", markersize=4, label="ρ11 circuit")
    ax.plot(frame["t"], frame["re01"], "s", color="C1", markersize=4, label="Re ρ01 circuit")
    ax.set_xlabel("t (ps)")
    ax.set_ylabel("matrix element")
    ax.legend(loc="best", fontsize="small")
    return _save(fig, path)


__all__ = ["plot_bloch_plane", "plot_coherence", "plot_damping"]
