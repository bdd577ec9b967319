"""Figure rendering for CLI reports; every function writes one PNG."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .electre import OutrankingRelationTable
from .ga import GAReport
from .promethee import FlowTable
from .screening import ScreeningReport

__all__ = [
    "save_flow_figure",
    "save_history_figure",
    "save_relations_figure",
    "save_screening_figure",
]


def save_flow_figure(flow: FlowTable, path: str | Path) -> None:
    """Grouped bars of outgoing/incoming flow with the net flow overlaid."""
    ids = [e.alternative for e in flow.entries]
    x = np.arange(len(ids))
    fig, ax = plt.subplots(figsize=(max(6.0, 0.9 * len(ids)), 4.0))
    ax.bar(x - 0.2, [e.phi_plus for e in flow.entries], width=0.4, label="phi+")
    ax.bar(x + 0.2, [e.phi_minus for e in flow.entries], width=0.4, label="phi-")
    ax.plot(x, [e.phi_net for e in flow.entries], "ko-", label="net")
    ax.axhline(0.0, color="grey", linewidth=0.8)
    ax.set_xticks(x)
    ax.set_xticklabels(ids, rotation=45, ha="right")
    ax.set_ylabel("flow")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def save_history_figure(report: GAReport, path: str | Path) -> None:
    """Best and mean fitness per generation."""
    gens = np.arange(len(report.history))
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    ax.plot(gens, [b for b, _ in report.history], label="best")
    ax.plot(gens, [m for _, m in report.history], label="mean", linestyle="--")
    ax.set_xlabel("generation")
    ax.set_ylabel("net-flow fitness")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def save_relations_figure(table: OutrankingRelationTable, path: str | Path) -> None:
    """Pairwise relation grid (P+/P-/I/R)."""
    ids = table.ids
    n = len(ids)
    codes = {"P+": 2, "I": 1, "R": 0, "P-": -1}
    grid = np.zeros((n, n))
    fig, ax = plt.subplots(figsize=(max(5.0, 0.7 * n),) * 2)
    for i, a in enumerate(ids):
        for k, b in enumerate(ids):
            if i == k:
                continue
            rel = table.relation(a, b).value
            grid[i, k] = codes[rel]
            ax.text(k, i, rel, ha="center", va="center", fontsize=8)
    ax.imshow(grid, cmap="RdYlGn", vmin=-1.5, vmax=2.5)
    ax.set_xticks(range(n))
    ax.set_yticks(range(n))
    ax.set_xticklabels(ids, rotation=45, ha="right")
    ax.set_yticklabels(ids)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def save_screening_figure(report: ScreeningReport, path: str | Path) -> None:
    """Violation counts per alternative."""
    ids = [e.alternative for e in report.entries]
    counts = [len(e.violations) for e in report.entries]
    fig, ax = plt.subplots(figsize=(max(6.0, 0.9 * len(ids)), 4.0))
    bars = ax.bar(range(len(ids)), counts)
    for bar, entry in zip(bars, report.entries):
        bar.set_color("tab:green" if entry.feasible else "tab:red")
    ax.set_xticks(range(len(ids)))
    ax.set_xticklabels(ids, rotation=45, ha="right")
    ax.set_ylabel("violated conditions")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
