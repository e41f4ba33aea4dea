"""Figure rendering for evaluation reports."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt


def save_mean_iou_figure(rows, path) -> None:
    """Render (label, count, mean_iou) rows as a bar chart PNG."""
    labels = [row[0] for row in rows]
    means = [row[2] for row in rows]
    fig, ax = plt.subplots(figsize=(4.2, 3.0))
    bars = ax.bar(labels, means, color="#4878cf", width=0.6)
    ax.set_ylim(0.0, 1.05)
    ax.set_ylabel("mean IoU")
    ax.set_xlabel("adjustment")
    for bar, mean in zip(bars, means):
        ax.annotate(f"{mean:.3f}", (bar.get_x() + bar.get_width() / 2, mean),
                    ha="center", va="bottom", fontsize=9)
    fig.tight_layout()
    fig.savefig(Path(path), dpi=120)
    plt.close(fig)
