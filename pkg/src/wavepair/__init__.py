"""Hilbert-transform pairs of continuous wavelets and the kernels built from them.

The package samples six classic mother wavelets, computes their Hilbert
transforms spectrally, derives Fourier-like, analytic and Hartley-like
kernels, measures the properties those constructions preserve, and runs
continuous wavelet transforms with any of them.
"""

from .catalog import CATALOG, Family, WaveletSpec, sample_wavelet
from .cwt import Scalogram, ScaleRange, cwt, gen_freq_breakdown, gen_two_sine, ridge_frequencies
from .kernels import KernelKind, analytic, derive, fourier_like, hartley_like
from .metrics import admissibility, energy, metrics_report, vanishing_moments
from .sampling import DEFAULT_GRID, ComplexSeries, RealSeries, TimeGrid, dft, idft, make_grid
from .spectral import hilbert

__version__ = "0.1.0"
