"""Figure rendering for benchmark outputs; written next to the CSV files."""
from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .bench import SweepRow, SweepSpec, parse_axis_value, summarize

_LABELS = {
    "quantum_sampled": "hybrid (sampled swap test)",
    "quantum_analytic": "hybrid (analytic)",
    "euclidean": "classical (Euclidean)",
}


def plot_sweep(spec: SweepSpec, rows: list[SweepRow], path: str | Path) -> Path:
    """Accuracy vs. axis value (noise sweeps become a heat map)."""
    path = Path(path)
    if spec.axis == "noise":
        return _plot_noise_heatmap(spec, rows, path)
    summary = summarize(rows)
    fig, ax = plt.subplots(figsize=(7, 4.5))
    for variant in dict.fromkeys(s["metric_variant"] for s in summary):
        cells = [s for s in summary if s["metric_variant"] == variant]
        xs = [parse_axis_value(spec.axis, c["axis_value"]) for c in cells]
        means = [c["mean_accuracy"] for c in cells]
        stds = [c["std_accuracy"] for c in cells]
        ax.errorbar(xs, means, yerr=stds, marker="o", capsize=3,
                    label=_LABELS.get(variant, variant))
    if spec.axis == "shots":
        ax.set_xscale("log", base=2)
        ax.set_xlabel("swap-test shots")
    else:
        ax.set_xlabel("phase offset (rad)")
    ax.set_ylabel("clustering accuracy")
    ax.set_ylim(0.0, 1.05)
    ax.grid(True, alpha=0.4)
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def _plot_noise_heatmap(spec: SweepSpec, rows: list[SweepRow], path: Path) -> Path:
    summary = [s for s in summarize(rows) if s["metric_variant"] != "euclidean"]
    sphis = sorted({parse_axis_value("noise", s["axis_value"])[0] for s in summary})
    sns = sorted({parse_axis_value("noise", s["axis_value"])[1] for s in summary})
    grid = np.full((len(sphis), len(sns)), np.nan)
    for s in summary:
        sp, sn = parse_axis_value("noise", s["axis_value"])
        grid[sphis.index(sp), sns.index(sn)] = s["mean_accuracy"]
    fig, ax = plt.subplots(figsize=(6.5, 5))
    mesh = ax.pcolormesh(sns, sphis, grid, vmin=0.0, vmax=1.0, shading="nearest")
    fig.colorbar(mesh, ax=ax, label="clustering accuracy")
    ax.set_xlabel("additive noise scale")
    ax.set_ylabel("phase noise scale")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def plot_compare(records: list[dict], path: str | Path) -> Path:
    """Hybrid vs classical mean accuracy as dataset size grows."""
    path = Path(path)
    sizes = [r["points"] for r in records]
    fig, ax = plt.subplots(figsize=(6.5, 4.5))
    ax.errorbar(sizes, [r["accuracy_quantum_mean"] for r in records],
                yerr=[r["accuracy_quantum_std"] for r in records],
                marker="o", capsize=3, label="hybrid (sampled swap test)")
    ax.errorbar(sizes, [r["accuracy_classical_mean"] for r in records],
                yerr=[r["accuracy_classical_std"] for r in records],
                marker="s", capsize=3, label="classical (Euclidean)")
    ax.set_xlabel("dataset size (points)")
    ax.set_ylabel("clustering accuracy")
    ax.set_ylim(0.0, 1.05)
    ax.grid(True, alpha=0.4)
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def plot_dataset(points: np.ndarray, labels: np.ndarray, path: str | Path) -> Path:
    """Scatter of received IQ samples coloured by true symbol."""
    path = Path(path)
    fig, ax = plt.subplots(figsize=(5.5, 5.5))
    ax.scatter(points.real, points.imag, c=labels, s=6, cmap="tab20", alpha=0.8)
    ax.set_xlabel("in-phase")
    ax.set_ylabel("quadrature")
    ax.set_aspect("equal")
    ax.grid(True, alpha=0.4)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path
