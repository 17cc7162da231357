"""Render benchmark rows as figures next to the CSV output."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .genbench import BenchRow, _cell_label


def render_bench_figures(rows: list[BenchRow], out_base) -> list[Path]:
    """Write grouped bar charts for times (and iterations when present).

    Returns the list of written paths: <out_base>_times.png always, plus
    <out_base>_iters.png when any row carries an iteration count.
    """
    if not rows:
        raise ValueError("no rows to plot")
    out_base = Path(out_base)
    cells = []
    for r in rows:
        label = _cell_label(r)
        if label not in cells:
            cells.append(label)
    algs = []
    for r in rows:
        if r.alg not in algs:
            algs.append(r.alg)
    by_key = {(_cell_label(r), r.alg): r for r in rows}

    written = []
    width = 0.8 / len(algs)
    x = np.arange(len(cells))

    fig, ax = plt.subplots(figsize=(max(6, 1.8 * len(cells)), 4))
    for j, alg in enumerate(algs):
        offs = x + (j - (len(algs) - 1) / 2) * width
        eff = [by_key[(c, alg)].eff_s if (c, alg) in by_key else 0.0 for c in cells]
        tot = [by_key[(c, alg)].total_s if (c, alg) in by_key else 0.0 for c in cells]
        bars = ax.bar(offs, eff, width * 0.9, label=alg)
        color = bars[0].get_facecolor() if len(bars) else None
        ax.bar(offs, tot, width * 0.9, fill=False, edgecolor=color, linewidth=0.8)
    positive = [r.eff_s for r in rows if r.eff_s > 0]
    if positive and max(positive) / min(positive) > 100:
        ax.set_yscale("log")
    ax.set_xticks(x, cells, rotation=20, ha="right")
    ax.set_ylabel("seconds (filled: decision core, outline: with generation)")
    ax.legend()
    fig.tight_layout()
    times_path = out_base.parent / (out_base.name + "_times.png")
    fig.savefig(times_path, dpi=120)
    plt.close(fig)
    written.append(times_path)

    iter_rows = [r for r in rows if r.mean_iters is not None]
    if iter_rows:
        iter_algs = [a for a in algs if any(r.alg == a for r in iter_rows)]
        width = 0.8 / len(iter_algs)
        fig, ax = plt.subplots(figsize=(max(6, 1.8 * len(cells)), 4))
        for j, alg in enumerate(iter_algs):
            offs = x + (j - (len(iter_algs) - 1) / 2) * width
            vals = [
                by_key[(c, alg)].mean_iters
                if (c, alg) in by_key and by_key[(c, alg)].mean_iters is not None
                else 0.0
                for c in cells
            ]
            ax.bar(offs, vals, width * 0.9, label=alg)
        ax.set_xticks(x, cells, rotation=20, ha="right")
        ax.set_ylabel("mean iterations per pair")
        ax.legend()
        fig.tight_layout()
        iters_path = out_base.parent / (out_base.name + "_iters.png")
        fig.savefig(iters_path, dpi=120)
        plt.close(fig)
        written.append(iters_path)
    return written
