"""Figure rendering for CLI reports.

All plots go straight to files via the Agg backend so batch runs never
need a display; savefig output is kept free of volatile metadata to stay
byte-stable across re-runs.
"""

from __future__ import annotations

import math

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np
from scipy.special import gammaln

_SAVEFIG_KWARGS = {"dpi": 120, "metadata": {"Software": None}}


def save_null_distribution(path: str, k: int, n: int, p: float):
    """Binomial null pmf with the observed hit count marked."""
    i = np.arange(n + 1)
    log_pmf = (
        gammaln(n + 1) - gammaln(i + 1) - gammaln(n - i + 1)
        + i * math.log(p) + (n - i) * math.log(1.0 - p)
    )
    fig, ax = plt.subplots(figsize=(7, 4))
    ax.bar(i, np.exp(log_pmf), width=1.0, color="#7799cc", label=f"Binomial(n={n}, p={p:.3g})")
    ax.axvline(k, color="#cc3333", linestyle="--", label=f"observed k={k}")
    ax.set_xlabel("watermark hits")
    ax.set_ylabel("probability")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, **_SAVEFIG_KWARGS)
    plt.close(fig)


def save_ratio_ranking(path: str, entries, top: int = 20, direction: str = "decreased"):
    """Horizontal bars of the most suspicious frequency ratios."""
    shown = list(entries[:top])
    words = [w for w, _ in shown][::-1]
    ratios = [r for _, r in shown][::-1]
    fig, ax = plt.subplots(figsize=(7, max(3, 0.3 * len(shown) + 1)))
    ax.barh(range(len(shown)), ratios, color="#7799cc")
    ax.set_yticks(range(len(shown)), words)
    ax.axvline(1.0, color="#888888", linewidth=0.8)
    ax.set_xlabel("frequency ratio (reference+1)/(suspect+1)")
    ax.set_title(f"top {len(shown)} {direction}")
    fig.tight_layout()
    fig.savefig(path, **_SAVEFIG_KWARGS)
    plt.close(fig)


def save_suspect_counts(path: str, labels, counts, title: str):
    """Bar chart of suspected-entry counts (per set or per order)."""
    fig, ax = plt.subplots(figsize=(7, 4))
    ax.bar(range(len(labels)), counts, color="#7799cc")
    ax.set_xticks(range(len(labels)), [str(l) for l in labels])
    ax.set_ylabel("suspected entries")
    ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, **_SAVEFIG_KWARGS)
    plt.close(fig)
