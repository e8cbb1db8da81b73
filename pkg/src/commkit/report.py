"""Figure rendering for experiment reports.

The harness emits delimited plot data (TSV) as the canonical output;
this module additionally renders the same series to PNG files so a run
directory is browsable without external tooling.
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402


def render_measure_figures(summary, out_dir) -> list:
    """One figure per (seed_model, measure): mean value vs mu, one error-bar
    line per detector."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    panels: dict = {}
    for row in summary:
        key = (row["seed_model"], row["measure"])
        panels.setdefault(key, {}).setdefault(row["detector"], []).append(
            (row["mu_target"], row["mean"], row["stddev"]))
    written = []
    for (sm, meas), by_det in sorted(panels.items()):
        fig, ax = plt.subplots(figsize=(6.0, 4.0))
        for det in sorted(by_det):
            pts = sorted(by_det[det])
            mu = [p[0] for p in pts]
            mean = [p[1] for p in pts]
            sd = [p[2] for p in pts]
            ax.errorbar(mu, mean, yerr=sd, marker="o", capsize=2, label=det)
        ax.set_xlabel(r"mixing coefficient $\mu$")
        ax.set_ylabel(meas)
        ax.set_title(f"{meas} vs mixing ({sm} seed)")
        ax.legend(fontsize="small")
        ax.grid(alpha=0.3)
        path = out / f"fig_{sm}_{meas}.png"
        fig.savefig(path, dpi=120, bbox_inches="tight")
        plt.close(fig)
        written.append(path)
    return written


def render_topology_figures(rows, out_dir) -> list:
    """One figure per topological property: mean vs mu, one line per
    seed model."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    panels: dict = {}
    for row in rows:
        panels.setdefault(row["property"], {}).setdefault(
            row["seed_model"], []).append(
            (row["mu"], row["mean"], row["stddev"]))
    written = []
    for prop, by_model in sorted(panels.items()):
        fig, ax = plt.subplots(figsize=(6.0, 4.0))
        for sm in sorted(by_model):
            pts = sorted(by_model[sm])
            mu = [p[0] for p in pts]
            mean = [p[1] for p in pts]
            sd = [p[2] for p in pts]
            ax.errorbar(mu, mean, yerr=sd, marker="s", capsize=2, label=sm)
        ax.set_xlabel(r"mixing coefficient $\mu$")
        ax.set_ylabel(prop)
        ax.set_title(f"{prop} vs mixing")
        ax.legend(fontsize="small")
        ax.grid(alpha=0.3)
        path = out / f"fig_topology_{prop}.png"
        fig.savefig(path, dpi=120, bbox_inches="tight")
        plt.close(fig)
        written.append(path)
    return written
