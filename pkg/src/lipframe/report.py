"""Deterministic JSON/CSV report writers plus the figures rendered alongside."""

from __future__ import annotations

import csv
import json
from pathlib import Path

SWEEP_COLUMNS = ("N", "max_error", "mean_error", "samples")


def report_to_json(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True)


def write_report(report: dict, path) -> Path:
    path = Path(path)
    path.write_text(report_to_json(report) + "\n")
    return path


def write_sweep_csv(rows: list[dict], path) -> Path:
    path = Path(path)
    with path.open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(SWEEP_COLUMNS)
        for row in rows:
            writer.writerow(
                [row["N"], repr(row["max_error"]), repr(row["mean_error"]), row["samples"]]
            )
    return path


def _pyplot():
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    return plt


def render_sweep_figure(rows: list[dict], path, title: str = "") -> Path:
    """Semilog convergence plot of the sweep table, next to its CSV."""
    plt = _pyplot()
    ns = [row["N"] for row in rows]
    fig, ax = plt.subplots(figsize=(5.4, 3.4))
    ax.semilogy(ns, [row["max_error"] for row in rows], "o-", label="max error")
    ax.semilogy(ns, [row["mean_error"] for row in rows], "s--", label="mean error")
    if all("bound" in row for row in rows):
        ax.semilogy(ns, [row["bound"] for row in rows], ":", color="gray", label="tail bound")
    ax.set_xlabel("truncation length N")
    ax.set_ylabel("reconstruction error")
    if title:
        ax.set_title(title)
    ax.grid(True, which="both", alpha=0.3)
    ax.legend()
    path = Path(path)
    fig.savefig(path, dpi=150, bbox_inches="tight")
    plt.close(fig)
    return path


def render_certify_figure(cert: dict, path, title: str = "") -> Path:
    """Bar chart of the four estimated frame constants."""
    plt = _pyplot()
    names = ["a_hat", "b_hat", "c_hat", "d_hat"]
    values = [cert[name] for name in names]
    fig, ax = plt.subplots(figsize=(4.6, 3.2))
    bars = ax.bar(names, values, color=["#4477aa", "#66ccee", "#228833", "#ccbb44"])
    for bar, value in zip(bars, values):
        ax.annotate(
            f"{value:.4g}",
            xy=(bar.get_x() + bar.get_width() / 2, bar.get_height()),
            xytext=(0, 2),
            textcoords="offset points",
            ha="center",
            fontsize=8,
        )
    ax.set_ylabel("estimated constant")
    if title:
        ax.set_title(title)
    fig.savefig(path, dpi=150, bbox_inches="tight")
    plt.close(fig)
    return path
