"""Figure helpers for report directories.  Uses the non-interactive Agg
backend; every function writes one PNG and returns its path."""

from __future__ import annotations

import os
from typing import Dict, List, Optional, Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

GOLDEN = (5 ** 0.5 - 1) / 2

STYLE = {
    "font.size": 9,
    "axes.labelsize": 9,
    "axes.titlesize": 10,
    "legend.fontsize": 8,
    "xtick.labelsize": 8,
    "ytick.labelsize": 8,
    "axes.spines.top": False,
    "axes.spines.right": False,
    "savefig.dpi": 120,
}


def size(width: float = 5.0, ratio: float = GOLDEN):
    return (width, width * ratio)


def _save(fig, path: str) -> str:
    os.makedirs(os.path.dirname(os.path.abspath(path)), exist_ok=True)
    fig.tight_layout()
    # fixed metadata keeps the files byte-stable
    fig.savefig(path, metadata={"Software": None})
    plt.close(fig)
    return path


def matrix_heatmap(M: Sequence[Sequence[int]], path: str, title: str = "", labels: Optional[List[str]] = None) -> str:
    with plt.rc_context(STYLE):
        n = len(M)
        fig, ax = plt.subplots(figsize=size(3.6, 0.9))
        im = ax.imshow(M, cmap="viridis")
        for i in range(n):
            for j in range(len(M[i])):
                ax.text(j, i, str(M[i][j]), ha="center", va="center", color="w", fontsize=8)
        ticks = list(range(n))
        names = labels or [str(i + 1) for i in ticks]
        ax.set_xticks(ticks)
        ax.set_xticklabels(names)
        ax.set_yticks(ticks)
        ax.set_yticklabels(names)
        ax.set_title(title)
        fig.colorbar(im, ax=ax, shrink=0.8)
        return _save(fig, path)


def bar_chart(labels: Sequence[str], values: Sequence[float], path: str, title: str = "",
              ylabel: str = "", second: Optional[Sequence[float]] = None,
              legend: Sequence[str] = ("", "")) -> str:
    with plt.rc_context(STYLE):
        fig, ax = plt.subplots(figsize=size(5.0))
        xs = list(range(len(labels)))
        if second is None:
            ax.bar(xs, values, color="C0")
        else:
            w = 0.4
            ax.bar([x - w / 2 for x in xs], values, width=w, label=legend[0], color="C0")
            ax.bar([x + w / 2 for x in xs], second, width=w, label=legend[1], color="C1")
            ax.legend(frameon=False)
        ax.set_xticks(xs)
        ax.set_xticklabels(labels, rotation=45 if len(labels) > 8 else 0, ha="right" if len(labels) > 8 else "center")
        ax.set_ylabel(ylabel)
        ax.set_title(title)
        return _save(fig, path)


def growth_plot(ks: Sequence[int], vals: Sequence[int], fit: Dict[str, float], p: int, path: str) -> str:
    with plt.rc_context(STYLE):
        fig, ax = plt.subplots(figsize=size(4.5))
        ax.plot(ks, vals, "o", label="valuation")
        lam, mu, nu = fit["lambda"], fit["mu"], fit["nu"]
        ax.plot(ks, [lam * k + mu * p ** k + nu for k in ks], "-", label="fit")
        ax.set_xlabel("k (fold p^k)")
        ax.set_ylabel(f"v_{p}(order)")
        ax.legend(frameon=False)
        return _save(fig, path)
