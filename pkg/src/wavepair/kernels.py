"""Fourier-like, analytic and Hartley-like wavelets built from a Hilbert pair.

Given a real wavelet ``psi`` and its Hilbert transform ``h``:

=================  =========================  ==============================
kind               definition                 spectrum vs. ``Psi``
=================  =========================  ==============================
``fourier``        ``(psi - j h) / sqrt 2``   zero for w > 0, ``sqrt2 Psi`` below
``analytic``       ``(psi + j h) / sqrt 2``   zero for w < 0, ``sqrt2 Psi`` above
``hartley+``       ``(psi + h) / sqrt 2``     same magnitude, phase ``-pi/4 sgn w``
``hartley-``       ``(psi - h) / sqrt 2``     same magnitude, phase ``+pi/4 sgn w``
=================  =========================  ==============================

The table assumes the ``-j sgn(w)`` multiplier of :mod:`wavepair.spectral`
(``H cos = sin``).  Under the opposite convention (``H cos = -sin``) the
one-sided supports of ``fourier`` and ``analytic`` swap, as do the phase
signs of the two Hartley kinds.
"""

from __future__ import annotations

import math
from enum import Enum

import numpy as np

from .sampling import ComplexSeries, RealSeries, Series
from .spectral import hilbert

_ROOT2 = math.sqrt(2.0)


class KernelKind(Enum):
    FOURIER_LIKE = "fourier"
    ANALYTIC = "analytic"
    HARTLEY_PLUS = "hartley+"
    HARTLEY_MINUS = "hartley-"

    @property
    def is_complex(self) -> bool:
        return self in (KernelKind.FOURIER_LIKE, KernelKind.ANALYTIC)


def fourier_like(psi: RealSeries) -> ComplexSeries:
    h = hilbert(psi)
    return ComplexSeries(psi.grid, (psi.values - 1j * h.values) / _ROOT2)


def analytic(psi: RealSeries) -> ComplexSeries:
    h = hilbert(psi)
    return ComplexSeries(psi.grid, (psi.values + 1j * h.values) / _ROOT2)


def hartley_like(psi: RealSeries, kind: KernelKind = KernelKind.HARTLEY_PLUS) -> RealSeries:
    h = hilbert(psi)
    if kind is KernelKind.HARTLEY_PLUS:
        return RealSeries(psi.grid, (psi.values + h.values) / _ROOT2)
    if kind is KernelKind.HARTLEY_MINUS:
        return RealSeries(psi.grid, (psi.values - h.values) / _ROOT2)
    raise ValueError(f"hartley_like needs a Hartley kind, got {kind}")


# Analyzer names accepted wherever a wavelet is derived from a generating one:
# the generating wavelet itself, its Hilbert transform, or one of the kernels.
ANALYZERS = ("real", "hilbert") + tuple(k.value for k in KernelKind)


def parse_analyzer(name) -> str | KernelKind:
    """Normalize an analyzer name to ``"real"``, ``"hilbert"`` or a KernelKind."""
    if isinstance(name, KernelKind):
        return name
    key = str(name).strip().lower()
    key = {"psi": "real", "none": "real", "fourier-like": "fourier", "hartley": "hartley+"}.get(key, key)
    if key in ("real", "hilbert"):
        return key
    for kind in KernelKind:
        if kind.value == key:
            return kind
    raise ValueError(f"unknown analyzer {name!r}; choose from {', '.join(ANALYZERS)}")


def analyzer_label(analyzer) -> str:
    return analyzer.value if isinstance(analyzer, KernelKind) else analyzer


def derive(psi: RealSeries, analyzer) -> Series:
    """Apply an analyzer (see :data:`ANALYZERS`) to a real generating wavelet."""
    analyzer = parse_analyzer(analyzer)
    if analyzer == "real":
        return psi
    if analyzer == "hilbert":
        return hilbert(psi)
    if analyzer is KernelKind.FOURIER_LIKE:
        return fourier_like(psi)
    if analyzer is KernelKind.ANALYTIC:
        return analytic(psi)
    return hartley_like(psi, analyzer)


def is_complex_analyzer(analyzer) -> bool:
    analyzer = parse_analyzer(analyzer)
    return isinstance(analyzer, KernelKind) and analyzer.is_complex


def expected_phase_shift(kind: KernelKind, omega: np.ndarray) -> np.ndarray:
    """Phase added to ``Psi`` by a Hartley kind, bin by bin."""
    sign = -1.0 if kind is KernelKind.HARTLEY_PLUS else 1.0
    return sign * np.pi / 4 * np.sign(omega)
