"""Figure rendering for the report path.

Kept separate from the data-emitting commands, which stay plot-free and
byte-deterministic; the report subcommand calls in here to drop PNG
figures next to the CSV files.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .geometry import RateRegion

_COLORS = ("tab:blue", "tab:orange", "tab:green", "tab:red", "tab:purple")


def _draw_region(ax, region: RateRegion, label: str, color: str):
    verts = region.vertices
    if not verts:
        return
    if len(verts) <= 2:
        xs = [v[0] for v in verts]
        ys = [v[1] for v in verts]
        ax.plot(xs, ys, marker="o", color=color, label=label)
        return
    xs = [v[0] for v in verts] + [verts[0][0]]
    ys = [v[1] for v in verts] + [verts[0][1]]
    ax.fill(xs, ys, alpha=0.25, color=color)
    ax.plot(xs, ys, color=color, label=label)


def plot_regions(named_regions, path: str, title: str = "") -> None:
    """Overlay one or more rate regions and write a PNG."""
    fig, ax = plt.subplots(figsize=(5.0, 4.2))
    for i, (label, region) in enumerate(named_regions):
        _draw_region(ax, region, label, _COLORS[i % len(_COLORS)])
    ax.set_xlabel("$R_1$ (bits/use)")
    ax.set_ylabel("$R_2$ (bits/use)")
    if title:
        ax.set_title(title)
    ax.legend(loc="upper right", fontsize=8)
    ax.set_xlim(left=0)
    ax.set_ylim(bottom=0)
    ax.grid(alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def plot_trend(rows, path: str, title: str = "") -> None:
    """Blocklength trend curves: per-receiver error and leakage per use."""
    ns = [r.n for r in rows if not r.skipped]
    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(8.0, 3.6))
    ax1.plot(ns, [r.pe1 for r in rows if not r.skipped], marker="o", label="$P_{e,1}$")
    ax1.plot(ns, [r.pe2 for r in rows if not r.skipped], marker="s", label="$P_{e,2}$")
    ax1.set_xlabel("blocklength n")
    ax1.set_ylabel("error probability")
    ax1.legend(fontsize=8)
    ax1.grid(alpha=0.3)
    ax2.plot(ns, [r.leak1_per_n for r in rows if not r.skipped], marker="o",
             label="$I(M_1;Z^n)/n$")
    ax2.plot(ns, [r.leak2_per_n for r in rows if not r.skipped], marker="s",
             label="$I(M_2;Z^n)/n$")
    ax2.set_xlabel("blocklength n")
    ax2.set_ylabel("leakage (bits/use)")
    ax2.legend(fontsize=8)
    ax2.grid(alpha=0.3)
    if title:
        fig.suptitle(title)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
