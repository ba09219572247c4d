"""PNG figures for the CLI: wavelet galleries, signals, scalograms, slices.

Everything renders off-screen through the Agg backend and is written to a
file; nothing is ever shown interactively.
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from .cwt import Scalogram  # noqa: E402
from .fileio import scalogram_part  # noqa: E402

_STYLE = {
    "figure.dpi": 100,
    "font.size": 9,
    "axes.grid": True,
    "grid.alpha": 0.3,
    "axes.spines.top": False,
    "axes.spines.right": False,
}


def peak_normalized(values: np.ndarray) -> np.ndarray:
    """Scale to a peak magnitude of one (display only)."""
    values = np.asarray(values)
    peak = np.max(np.abs(values)) if values.size else 0.0
    return values / peak if peak > 0 else values


def _save(fig, path) -> Path:
    path = Path(path)
    fig.savefig(path, bbox_inches="tight")
    plt.close(fig)
    return path


def plot_series(path, curves: dict, title: str = "", normalize: bool = False, xlabel: str = "t") -> Path:
    """Overlay real series (or parts of them) on one axis.

    ``curves`` maps a legend label to a :class:`~wavepair.sampling.Series`;
    complex series contribute their real and imaginary parts.
    """
    with plt.rc_context(_STYLE):
        fig, ax = plt.subplots(figsize=(6.4, 3.2))
        for label, series in curves.items():
            vals = np.asarray(series.values)
            parts = {label: vals} if not np.iscomplexobj(vals) else {f"{label} (re)": vals.real, f"{label} (im)": vals.imag}
            for name, part in parts.items():
                ax.plot(series.grid.times, peak_normalized(part) if normalize else part, lw=1.0, label=name)
        if normalize:
            ax.set_ylim(-1.05, 1.05)
        ax.set_xlabel(xlabel)
        ax.set_title(title)
        if len(curves) > 1 or any(np.iscomplexobj(s.values) for s in curves.values()):
            ax.legend(loc="upper right", fontsize=7)
        return _save(fig, path)


def plot_gallery(path, panels: dict, title: str = "") -> Path:
    """Grid of small panels, one per wavelet, each holding peak-normalized curves.

    ``panels`` maps a panel title to a ``{label: series}`` dict, e.g. a
    wavelet and its Hilbert transform.
    """
    count = len(panels)
    cols = min(3, count)
    rows = -(-count // cols)
    with plt.rc_context(_STYLE):
        fig, axes = plt.subplots(rows, cols, figsize=(3.2 * cols, 2.4 * rows), squeeze=False)
        for ax, (name, curves) in zip(axes.flat, panels.items()):
            for label, series in curves.items():
                ax.plot(series.grid.times, peak_normalized(series.values), lw=1.0, label=label)
            ax.set_ylim(-1.05, 1.05)
            ax.set_title(name)
            ax.legend(loc="upper right", fontsize=6)
        for ax in list(axes.flat)[count:]:
            ax.set_visible(False)
        if title:
            fig.suptitle(title)
        fig.tight_layout()
        return _save(fig, path)


def plot_scalogram(path, s: Scalogram, part: str = "modulus") -> Path:
    """Scale-vs-time image of one part of a scalogram (smallest scale on top)."""
    data = scalogram_part(s, part)
    t = s.grid.times
    a = np.asarray(s.scales.scales)
    with plt.rc_context({**_STYLE, "axes.grid": False}):
        fig, ax = plt.subplots(figsize=(6.4, 3.6))
        cmap = "twilight" if part == "phase" else ("gray" if part == "modulus" else "RdBu_r")
        kwargs = {}
        if part in ("real", "imag"):
            lim = np.max(np.abs(data)) or 1.0
            kwargs = {"vmin": -lim, "vmax": lim}
        img = ax.imshow(
            data,
            aspect="auto",
            origin="upper",
            extent=(t[0], t[-1] + s.grid.dt, a[-1] + 0.5, a[0] - 0.5),
            cmap=cmap,
            interpolation="nearest",
            **kwargs,
        )
        fig.colorbar(img, ax=ax, pad=0.02)
        ax.set_xlabel("time (s)")
        ax.set_ylabel("scale")
        ax.set_title(f"{s.wavelet} / {s.analyzer}: {part}")
        return _save(fig, path)


def plot_slices(path, s: Scalogram, scales, normalized: bool = False) -> Path:
    """Rows of ``s`` at the given scales, raw or as normalized moduli."""
    with plt.rc_context(_STYLE):
        fig, ax = plt.subplots(figsize=(6.4, 3.2))
        for a in scales:
            row = s.row(a)
            if normalized:
                mag = np.abs(row)
                ax.plot(s.grid.times, peak_normalized(mag), lw=1.0, label=f"|C| a={a:g}")
            else:
                ax.plot(s.grid.times, row.real, lw=1.0, label=f"a={a:g}")
        if normalized:
            ax.set_ylim(0, 1.05)
        ax.set_xlabel("time (s)")
        ax.set_title(f"{s.wavelet} / {s.analyzer}: level slices")
        ax.legend(loc="upper right", fontsize=7)
        return _save(fig, path)


def plot_row_energy(path, s: Scalogram, ridges=()) -> Path:
    """Mean squared modulus per scale, with detected ridges marked."""
    with plt.rc_context(_STYLE):
        fig, ax = plt.subplots(figsize=(6.4, 3.0))
        a = np.asarray(s.scales.scales)
        ax.semilogy(a, s.row_energy(), marker=".", lw=1.0)
        for scale, hz in ridges:
            ax.axvline(scale, color="C3", ls="--", lw=0.8)
            ax.annotate(f"{hz:.2f} Hz", (scale, ax.get_ylim()[1]), fontsize=7, ha="center", va="top")
        ax.set_xlabel("scale")
        ax.set_ylabel("mean |C|^2")
        ax.set_title(f"{s.wavelet} / {s.analyzer}: row energy")
        return _save(fig, path)
