"""Matplotlib figures for the report commands.

Each function renders one report type to a PNG next to the delimited
output and returns the path.  The Agg backend is forced so rendering
works headless; nothing here opens a window.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .gate import BALANCED_REFLECTIVITY, ErrorBudget, GateReport, ScanRow

DPI = 150


def plot_scan(rows: list[ScanRow], path: str) -> str:
    """Amplitude curves over the reflectivity grid with the imbalance
    and its zero crossing at the balanced point."""
    r = np.array([row.reflectivity for row in rows])
    fig, (top, bottom) = plt.subplots(
        2, 1, figsize=(7, 6), sharex=True, height_ratios=[2, 1]
    )
    top.plot(r, [row.amp_00 for row in rows], label="vacuum (amp 1)")
    top.plot(r, [row.amp_01 for row in rows], label="one photon ($\\sqrt{R}$)")
    top.plot(r, [row.amp_11 for row in rows], label="two photons ($2R-1$)")
    top.axhline(0.0, color="black", lw=0.6)
    top.set_ylabel("stay-put amplitude")
    top.legend(loc="best", fontsize=9)
    top.grid(alpha=0.3)

    imbalance = np.array([row.imbalance for row in rows])
    bottom.plot(r, imbalance, color="tab:red", label="$|2R-1| - R$")
    bottom.axhline(0.0, color="black", lw=0.6)
    if r.min() <= BALANCED_REFLECTIVITY <= r.max():
        bottom.axvline(
            BALANCED_REFLECTIVITY,
            color="tab:green",
            ls="--",
            lw=1.0,
            label="balanced $R=1/3$",
        )
    bottom.set_xlabel("reflectivity $R$")
    bottom.set_ylabel("imbalance")
    bottom.legend(loc="best", fontsize=9)
    bottom.grid(alpha=0.3)

    fig.tight_layout()
    fig.savefig(path, dpi=DPI)
    plt.close(fig)
    return path


def plot_budget(budgets: dict[str, ErrorBudget], path: str, reflectivity: float) -> str:
    """Stacked success/loss/bunching bars, one per input state."""
    labels = list(budgets)
    success = np.array([budgets[k].success for k in labels])
    loss = np.array([budgets[k].loss for k in labels])
    bunching = np.array([budgets[k].bunching for k in labels])

    fig, ax = plt.subplots(figsize=(6.5, 4.2))
    x = np.arange(len(labels))
    ax.bar(x, success, label="success", color="tab:green")
    ax.bar(x, loss, bottom=success, label="loss", color="tab:orange")
    ax.bar(x, bunching, bottom=success + loss, label="bunching", color="tab:red")
    ax.set_xticks(x, labels)
    ax.set_ylim(0, 1.05)
    ax.set_ylabel("probability")
    ax.set_title(f"outcome budget at R = {reflectivity:.6g}")
    ax.legend(loc="upper right", fontsize=9)
    ax.grid(axis="y", alpha=0.3)

    fig.tight_layout()
    fig.savefig(path, dpi=DPI)
    plt.close(fig)
    return path


def plot_truth_table(report: GateReport, path: str) -> str:
    """Heatmap of truth-table magnitudes with the complex amplitude
    printed in each cell."""
    magnitudes = np.abs(report.truth_table)
    fig, ax = plt.subplots(figsize=(5.6, 5.0))
    image = ax.imshow(magnitudes, cmap="viridis", vmin=0.0)
    ax.set_xticks(range(4), [f"in {l}" for l in report.labels])
    ax.set_yticks(range(4), [f"out {l}" for l in report.labels])
    for j in range(4):
        for i in range(4):
            z = report.truth_table[j, i]
            if abs(z) < 1e-9:
                text = "0"
            elif abs(z.imag) < 1e-9:
                text = f"{z.real:+.4g}"
            else:
                text = f"{z.real:+.3g}{z.imag:+.3g}i"
            bright = magnitudes[j, i] > 0.6 * max(magnitudes.max(), 1e-12)
            ax.text(
                i,
                j,
                text,
                ha="center",
                va="center",
                fontsize=9,
                color="black" if bright else "white",
            )
    ax.set_title(
        f"{report.encoding} encoding, R = {report.reflectivity:.6g}, "
        f"fidelity {report.fidelity:.6g}"
    )
    fig.colorbar(image, ax=ax, label="|amplitude|", shrink=0.8)

    fig.tight_layout()
    fig.savefig(path, dpi=DPI)
    plt.close(fig)
    return path
