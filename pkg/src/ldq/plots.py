"""Figure rendering for the report path (PNG next to the CSV output)."""

from __future__ import annotations

import csv

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt


def render_gap_figure(csv_path, png_path) -> None:
    """Plot the KL bound, weight-enumerator exponent and excess-rate
    integrand from a gap-figure CSV."""
    omegas, kl_vals, enum_vals, excess = [], [], [], []
    with open(csv_path, newline="") as f:
        for row in csv.DictReader(f):
            omegas.append(float(row["omega"]))
            kl_vals.append(float(row["kl_bound"]))
            enum_vals.append(float(row["weight_exponent"]))
            excess.append(float(row["excess_integrand"]))
    fig, ax = plt.subplots(figsize=(7, 4.5))
    ax.plot(omegas, kl_vals, label="conditional-probability bound (log)", lw=1.8)
    ax.plot(omegas, enum_vals, label="weight enumerator exponent", lw=1.8)
    ax.plot(omegas, excess, label="excess-rate integrand", lw=1.2, ls="--")
    ax.axhline(0.0, color="k", lw=0.6)
    ax.set_xlabel(r"relative middle-layer weight $\omega$")
    ax.set_ylabel(r"$\frac{1}{n}\log_2(\cdot)$")
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(png_path, dpi=150)
    plt.close(fig)


def render_sweep_figure(records, target: float, png_path) -> None:
    """Histogram of achieved distortions with the target marked."""
    dists = [r.achieved_distortion for r in records]
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.hist(dists, bins=30, color="steelblue", edgecolor="white")
    ax.axvline(target, color="crimson", lw=1.5, label=f"target {target:g}")
    ax.set_xlabel("achieved distortion")
    ax.set_ylabel("trials")
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(png_path, dpi=150)
    plt.close(fig)
