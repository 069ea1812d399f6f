"""Figures rendered next to the report CSV.

Two views of the same table: infidelity against base per compiled
primitive, and the analytic bound against the measured distance.  Files
land beside the CSV, named after its stem.
"""

from __future__ import annotations

import os

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .report import ReportRow

FIGSIZE = (7.0, 5.0)
DPI = 150
FLOOR = 1e-16

_GATE_COLORS = {"H": "tab:blue", "T": "tab:orange", "ZZ": "tab:green", "CNOT": "tab:red"}


def _series(rows: list[ReportRow]) -> dict[tuple[str, str], list[ReportRow]]:
    out: dict[tuple[str, str], list[ReportRow]] = {}
    for row in rows:
        out.setdefault((row.gate, row.qubits), []).append(row)
    for group in out.values():
        group.sort(key=lambda r: r.base)
    return out


def _infidelity_figure(rows: list[ReportRow], path: str) -> None:
    fig, ax = plt.subplots(figsize=FIGSIZE)
    seen_kinds = set()
    for (kind, qubits), group in sorted(_series(rows).items()):
        bases = [r.base for r in group]
        infid = [max(1.0 - r.fidelity, FLOOR) for r in group]
        label = kind if kind not in seen_kinds else None
        seen_kinds.add(kind)
        ax.plot(bases, infid, "o-", color=_GATE_COLORS[kind], alpha=0.7, label=label)
    ax.set_xscale("log", base=2)
    ax.set_yscale("log")
    ax.set_xlabel("base B")
    ax.set_ylabel("infidelity 1 - F")
    ax.set_title("Compiled-gate infidelity vs base")
    ax.grid(True, which="both", alpha=0.3)
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=DPI)
    plt.close(fig)


def _bound_figure(rows: list[ReportRow], path: str) -> None:
    fig, ax = plt.subplots(figsize=FIGSIZE)
    for kind in _GATE_COLORS:
        xs = [max(r.bound, FLOOR) for r in rows if r.gate == kind]
        ys = [max(r.distance, FLOOR) for r in rows if r.gate == kind]
        if xs:
            ax.scatter(xs, ys, color=_GATE_COLORS[kind], alpha=0.7, label=kind)
    finite = [max(r.bound, FLOOR) for r in rows] or [FLOOR]
    lo, hi = min(finite), max(finite)
    ax.plot([lo, hi], [lo, hi], "k--", alpha=0.5, label="bound = distance")
    ax.set_xscale("log")
    ax.set_yscale("log")
    ax.set_xlabel("analytic bound")
    ax.set_ylabel("measured spectral distance")
    ax.set_title("Bound soundness: every point sits on or below the line")
    ax.grid(True, which="both", alpha=0.3)
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=DPI)
    plt.close(fig)


def render_report_figures(rows: list[ReportRow], csv_path) -> list[str]:
    """Write the two report figures next to the CSV; returns their paths."""
    stem, _ = os.path.splitext(os.fspath(csv_path))
    paths = [stem + "_infidelity.png", stem + "_bound_vs_distance.png"]
    _infidelity_figure(rows, paths[0])
    _bound_figure(rows, paths[1])
    return paths
