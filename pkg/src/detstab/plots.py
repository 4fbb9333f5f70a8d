"""Matplotlib renderings for the CLI report path.

These complement the deterministic SVG emitter: the CLI writes the delimited
report (CSV/JSON) and, on request, renders a raster figure next to it for
quick inspection.  Imported lazily so library use never pulls in a GUI
backend.
"""

from __future__ import annotations

import math
from typing import Sequence

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402

from .profile import ProfileTable  # noqa: E402
from .sweep import SweepReport  # noqa: E402

__all__ = ["render_sweep", "render_curve", "render_profile"]


def render_sweep(report: SweepReport, path: str,
                 curve: Sequence[tuple[float, float]] = ()) -> None:
    """Stability map: stable points as dots, unvalidated as crosses, plus curve."""
    fig, ax = plt.subplots(figsize=(6.4, 4.8), dpi=150)
    ok_r = [p.r for p in report.points if p.satisfied]
    ok_e = [p.E for p in report.points if p.satisfied]
    bad_r = [p.r for p in report.points if not p.satisfied]
    bad_e = [p.E for p in report.points if not p.satisfied]
    if ok_r:
        ax.plot(ok_r, ok_e, ".", color="tab:blue", markersize=2.5,
                label=f"criterion holds ({len(ok_r)})")
    if bad_r:
        ax.plot(bad_r, bad_e, "x", color="tab:red", markersize=6,
                label=f"not validated ({len(bad_r)})")
    cr = [(r, e) for r, e in curve if math.isfinite(e)]
    if cr:
        e_max = max([p.E for p in report.points], default=10.0) * 1.05
        ax.plot([r for r, _ in cr], [min(e, e_max) for _, e in cr],
                "-", color="black", linewidth=1.2, label="critical E")
    ax.set_xlabel("q/omega")
    ax.set_ylabel("activation energy E")
    ax.set_title(f"{report.grid} criterion sweep ({report.temperature})")
    ax.legend(loc="upper left", fontsize=8)
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)


def render_curve(curve: Sequence[tuple[float, float]], path: str,
                 temperature: str = "") -> None:
    fig, ax = plt.subplots(figsize=(6.4, 4.8), dpi=150)
    finite = [(r, e) for r, e in curve if math.isfinite(e)]
    if finite:
        ax.plot([r for r, _ in finite], [e for _, e in finite], "-",
                color="black")
    ax.set_xlabel("q/omega")
    ax.set_ylabel("critical activation energy")
    if temperature:
        ax.set_title(f"criterion boundary ({temperature})")
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)


def render_profile(table: ProfileTable, path: str) -> None:
    fig, axes = plt.subplots(2, 1, figsize=(6.4, 6.0), dpi=150, sharex=True)
    axes[0].plot(table.xi, table.ubar, color="tab:blue")
    axes[0].set_ylabel("ubar")
    axes[1].plot(table.xi, table.zbar, color="tab:orange")
    axes[1].set_ylabel("zbar")
    axes[1].set_xlabel("xi")
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
