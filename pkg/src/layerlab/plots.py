"""Figure rendering for the CLI report paths.

Each renderer writes one PNG next to the delimited output.  Data files stay
the primary product; figures are opt-in via --plot.
"""

from __future__ import annotations

import math

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np


def plot_train(train, path, title="impulse response"):
    """Stem plot of arrival amplitudes over time."""
    fig, ax = plt.subplots(figsize=(8, 4))
    if train.arrivals:
        ts = [float(t) for t, _ in train.arrivals]
        mags = [abs(a) for _, a in train.arrivals]
        ax.stem(ts, mags, basefmt=" ")
    ax.set_xlabel("t")
    ax.set_ylabel("|amplitude|")
    ax.set_title(f"{title} ({len(train.arrivals)} arrivals, T={float(train.horizon):g})")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def plot_spectrum(trace, recurrence, path):
    """Partial sum against the backward recurrence, with the error below."""
    sig = np.asarray(trace.sigma)
    vals = np.asarray(trace.values)
    ref = np.asarray(recurrence)
    fig, (ax0, ax1) = plt.subplots(
        2, 1, figsize=(8, 6), sharex=True, gridspec_kw={"height_ratios": [2, 1]}
    )
    ax0.plot(sig, np.abs(vals), label="partial sum", lw=1.0)
    ax0.plot(sig, np.abs(ref), label="recurrence", lw=1.0, ls="--")
    ax0.set_ylabel("|value|")
    ax0.legend(loc="best")
    err = np.abs(vals - ref)
    ax1.semilogy(sig, np.maximum(err, 1e-18), lw=0.8)
    ax1.set_xlabel("sigma")
    ax1.set_ylabel("|difference|")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def plot_geodesic(points, path):
    """Geodesic polyline drawn inside the unit circle."""
    fig, ax = plt.subplots(figsize=(5, 5))
    phi = np.linspace(0, 2 * math.pi, 512)
    ax.plot(np.cos(phi), np.sin(phi), color="0.6", lw=0.8)
    rs = np.array([r for r, _ in points])
    ths = np.array([th for _, th in points])
    ax.plot(rs * np.cos(ths), rs * np.sin(ths), lw=1.2)
    ax.set_aspect("equal")
    ax.set_xlim(-1.05, 1.05)
    ax.set_ylim(-1.05, 1.05)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
