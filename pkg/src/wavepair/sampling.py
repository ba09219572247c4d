"""Uniform sampling grids, sampled series and the DFT they share.

Every other module works on the types defined here.  A :class:`TimeGrid`
is the half-open lattice ``t_min + k*dt`` for ``k = 0 .. n-1``; series bind
a value array to a grid.  All containers are frozen and hold read-only
arrays, so they can be passed between threads freely.

DFT convention: the forward transform is unnormalized and the inverse
carries ``1/n``, exactly as :func:`numpy.fft.fft` / :func:`numpy.fft.ifft`.
Bin ``k`` maps to angular frequency ``2*pi*k/(n*dt)`` for ``k <= n/2`` and
``2*pi*(k-n)/(n*dt)`` above, so the Nyquist bin counts as positive.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np


class OddSampleCount(ValueError):
    """Grid sample count is odd; the Hilbert multiplier needs a Nyquist bin."""


class InvalidGrid(ValueError):
    pass


class GridMismatch(ValueError):
    pass


def _frozen(values, dtype) -> np.ndarray:
    arr = np.array(values, dtype=dtype, copy=True)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class TimeGrid:
    t_min: float
    dt: float
    n: int

    def __post_init__(self):
        if not (math.isfinite(self.t_min) and math.isfinite(self.dt)):
            raise InvalidGrid("grid origin and step must be finite")
        if self.dt <= 0:
            raise InvalidGrid(f"dt must be positive, got {self.dt}")
        if int(self.n) != self.n or self.n < 2:
            raise InvalidGrid(f"need at least 2 samples, got {self.n}")
        if self.n % 2:
            raise OddSampleCount(f"sample count must be even, got {self.n}")
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "t_min", float(self.t_min))
        object.__setattr__(self, "dt", float(self.dt))

    @property
    def t_max(self) -> float:
        """Right end of the half-open span (not itself a sample)."""
        return self.t_min + self.n * self.dt

    @property
    def span(self) -> float:
        return self.n * self.dt

    @property
    def times(self) -> np.ndarray:
        return self.t_min + np.arange(self.n) * self.dt

    @property
    def omega(self) -> np.ndarray:
        """Angular frequency of every DFT bin, Nyquist taken as positive."""
        k = np.arange(self.n)
        k = np.where(k <= self.n // 2, k, k - self.n)
        return 2.0 * np.pi * k / (self.n * self.dt)

    @property
    def d_omega(self) -> float:
        return 2.0 * np.pi / (self.n * self.dt)

    def center_index(self) -> int | None:
        """Index of the sample at t = 0 when the grid is symmetric, else None.

        A grid is symmetric when ``t_min == -n*dt/2``; then sample ``k`` and
        sample ``n - k`` (mod n) sit at mirrored times, the ``t_min`` sample
        pairing with itself through the periodic wrap.
        """
        if abs(self.t_min + self.span / 2) > 1e-9 * self.span:
            return None
        return self.n // 2

    def same_as(self, other: "TimeGrid") -> bool:
        return (
            self.n == other.n
            and math.isclose(self.dt, other.dt, rel_tol=1e-12)
            and math.isclose(self.t_min, other.t_min, rel_tol=1e-12, abs_tol=1e-12 * self.span)
        )


def make_grid(t_min: float, t_max: float, n: int) -> TimeGrid:
    """Grid covering ``[t_min, t_max)`` with ``n`` samples (``dt = span/n``)."""
    if not (math.isfinite(t_min) and math.isfinite(t_max)):
        raise InvalidGrid("grid bounds must be finite")
    if t_max <= t_min:
        raise InvalidGrid(f"t_max ({t_max}) must exceed t_min ({t_min})")
    if int(n) != n:
        raise InvalidGrid(f"sample count must be an integer, got {n}")
    n = int(n)
    if n % 2:
        raise OddSampleCount(f"sample count must be even, got {n}")
    return TimeGrid(t_min, (t_max - t_min) / n, n)


DEFAULT_GRID = make_grid(-8.0, 8.0, 2048)


@dataclass(frozen=True, eq=False)
class RealSeries:
    grid: TimeGrid
    values: np.ndarray

    def __post_init__(self):
        vals = np.asarray(self.values)
        if np.iscomplexobj(vals):
            raise TypeError("RealSeries needs real values; use ComplexSeries")
        vals = _frozen(vals, float)
        _check_values(self.grid, vals)
        object.__setattr__(self, "values", vals)

    @property
    def times(self) -> np.ndarray:
        return self.grid.times

    def __len__(self):
        return self.grid.n


@dataclass(frozen=True, eq=False)
class ComplexSeries:
    grid: TimeGrid
    values: np.ndarray

    def __post_init__(self):
        vals = _frozen(self.values, complex)
        _check_values(self.grid, vals)
        object.__setattr__(self, "values", vals)

    @property
    def times(self) -> np.ndarray:
        return self.grid.times

    @property
    def real(self) -> RealSeries:
        return RealSeries(self.grid, self.values.real)

    @property
    def imag(self) -> RealSeries:
        return RealSeries(self.grid, self.values.imag)

    def __len__(self):
        return self.grid.n


Series = Union[RealSeries, ComplexSeries]


def _check_values(grid: TimeGrid, vals: np.ndarray) -> None:
    if vals.ndim != 1 or vals.shape[0] != grid.n:
        raise GridMismatch(f"expected {grid.n} samples, got shape {vals.shape}")
    if not np.all(np.isfinite(vals)):
        raise ValueError("series values must be finite")


@dataclass(frozen=True, eq=False)
class Spectrum:
    grid: TimeGrid
    bins: np.ndarray

    def __post_init__(self):
        vals = _frozen(self.bins, complex)
        if vals.ndim != 1 or vals.shape[0] != self.grid.n:
            raise GridMismatch(f"expected {self.grid.n} bins, got shape {vals.shape}")
        object.__setattr__(self, "bins", vals)

    @property
    def omega(self) -> np.ndarray:
        return self.grid.omega

    def continuous(self) -> np.ndarray:
        """Samples of the continuous transform ``X(w) = int x(t) exp(-jwt) dt``.

        Scales by ``dt`` and restores the phase of the grid origin, so the
        result does not depend on where the grid starts.
        """
        w = self.grid.omega
        return self.bins * self.grid.dt * np.exp(-1j * w * self.grid.t_min)


def dft(series: Series) -> Spectrum:
    return Spectrum(series.grid, np.fft.fft(series.values))


def idft(spectrum: Spectrum) -> ComplexSeries:
    return ComplexSeries(spectrum.grid, np.fft.ifft(spectrum.bins))


def as_series(grid: TimeGrid, values) -> Series:
    """Wrap ``values`` in the narrowest series type that holds them."""
    values = np.asarray(values)
    if np.iscomplexobj(values):
        return ComplexSeries(grid, values)
    return RealSeries(grid, values)
