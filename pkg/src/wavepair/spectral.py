"""Hilbert transform on sampled series.

The transform is applied spectrally: DFT, multiply every bin by
``-j*sgn(w)``, inverse DFT.  The DC and Nyquist bins are zeroed, which keeps
the output real and makes ``H(H(x)) = -x`` exact for series without DC or
Nyquist content.

Sign convention: with ``-j*sgn(w)`` the transform maps ``cos -> sin`` and
``sin -> -cos``.  This is the convention used throughout the package.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .sampling import GridMismatch, RealSeries, Spectrum, dft

RESIDUE_TOL = 1e-10


class NonNegligibleImaginaryResidue(ArithmeticError):
    """A real-by-construction result came back with a sizable imaginary part."""


@dataclass(frozen=True)
class HilbertMultiplier:
    n: int

    def __post_init__(self):
        if self.n < 2 or self.n % 2:
            raise ValueError(f"multiplier needs an even bin count >= 2, got {self.n}")

    @property
    def factors(self) -> np.ndarray:
        m = np.zeros(self.n, dtype=complex)
        half = self.n // 2
        m[1:half] = -1j
        m[half + 1 :] = 1j
        return m


def apply_multiplier(s: Spectrum, m: HilbertMultiplier) -> Spectrum:
    if m.n != s.grid.n:
        raise GridMismatch(f"multiplier has {m.n} bins, spectrum has {s.grid.n}")
    return Spectrum(s.grid, s.bins * m.factors)


def real_part_checked(values: np.ndarray, tol: float = RESIDUE_TOL, peak: float | None = None) -> np.ndarray:
    """Drop the imaginary part after checking it is below ``tol * peak``.

    ``peak`` defaults to the largest magnitude in ``values``; callers whose
    output can be legitimately tiny pass an a-priori bound instead.
    """
    if peak is None:
        peak = float(np.max(np.abs(values))) if values.size else 0.0
    residue = float(np.max(np.abs(values.imag))) if values.size else 0.0
    if residue > tol * peak:
        raise NonNegligibleImaginaryResidue(
            f"imaginary residue {residue:.3e} exceeds {tol:g} of peak {peak:.3e}"
        )
    return values.real


def hilbert(x: RealSeries) -> RealSeries:
    """Hilbert transform of a real series (periodic over the grid span)."""
    if not isinstance(x, RealSeries):
        raise TypeError("hilbert expects a RealSeries")
    spec = apply_multiplier(dft(x), HilbertMultiplier(x.grid.n))
    return RealSeries(x.grid, real_part_checked(np.fft.ifft(spec.bins)))
