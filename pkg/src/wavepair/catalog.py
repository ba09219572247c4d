"""The six real mother wavelets: closed forms, spectra and grid sampling.

Time-domain families (Morlet, Mexican hat, Gaussian derivatives) are
evaluated from closed forms.  Meyer has no closed time-domain form and is
built from its band-limited spectrum on the grid's DFT bins.

All wavelets are scaled to unit L2 energy in the continuous sense;
:func:`sample_wavelet` additionally renormalizes the sampled values so the
discrete energy ``sum |x|^2 dt`` is exactly one.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from types import MappingProxyType
from typing import Mapping

import numpy as np
from numpy.polynomial import hermite

from .sampling import DEFAULT_GRID, RealSeries, TimeGrid


class UnknownWavelet(ValueError):
    pass


class Family(Enum):
    MORLET = "morlet"
    MEYER = "meyer"
    MEXICAN_HAT = "mexicanhat"
    GAUSSIAN1 = "gaussian1"
    GAUSSIAN2 = "gaussian2"
    GAUSSIAN3 = "gaussian3"

    @classmethod
    def parse(cls, name: str) -> "Family":
        key = name.strip().lower().replace("-", "").replace("_", "").replace(" ", "")
        key = _ALIASES.get(key, key)
        for fam in cls:
            if fam.value == key:
                return fam
        raise UnknownWavelet(f"unknown wavelet family {name!r}")


_ALIASES = {
    "mexhat": "mexicanhat",
    "ricker": "mexicanhat",
    "morl": "morlet",
    "gaus1": "gaussian1",
    "gaus2": "gaussian2",
    "gaus3": "gaussian3",
}

_DEFAULT_PARAMS = {Family.MORLET: {"omega0": 5.0}}

# radius (in wavelet time units) outside which < 1e-6 of the energy lies
_SUPPORT_RADIUS = {
    Family.MORLET: 3.5,
    Family.MEXICAN_HAT: 4.5,
    Family.GAUSSIAN1: 3.0,
    Family.GAUSSIAN2: 3.0,
    Family.GAUSSIAN3: 3.5,
    Family.MEYER: 8.0,
}

EVEN_FAMILIES = frozenset({Family.MORLET, Family.MEYER, Family.MEXICAN_HAT, Family.GAUSSIAN2})


@dataclass(frozen=True)
class WaveletSpec:
    """A named mother-wavelet recipe.

    ``params`` only matters for Morlet, whose ``omega0`` (center angular
    frequency, default 5) must be positive.
    """

    family: Family
    params: Mapping[str, float] = field(default_factory=dict)

    def __post_init__(self):
        fam = self.family if isinstance(self.family, Family) else Family.parse(str(self.family))
        merged = dict(_DEFAULT_PARAMS.get(fam, {}))
        for key, val in dict(self.params).items():
            if key not in merged:
                raise ValueError(f"{fam.value} takes no parameter {key!r}")
            val = float(val)
            if not math.isfinite(val):
                raise ValueError(f"parameter {key} must be finite")
            merged[key] = val
        if fam is Family.MORLET and merged["omega0"] <= 0:
            raise ValueError("Morlet omega0 must be positive")
        object.__setattr__(self, "family", fam)
        object.__setattr__(self, "params", MappingProxyType(merged))

    @classmethod
    def named(cls, name: str, **params) -> "WaveletSpec":
        return cls(Family.parse(name), params)

    @property
    def label(self) -> str:
        if self.family is Family.MORLET:
            return f"morlet(omega0={self.params['omega0']:g})"
        return self.family.value

    def __hash__(self):
        return hash((self.family, tuple(sorted(self.params.items()))))

    def __eq__(self, other):
        if not isinstance(other, WaveletSpec):
            return NotImplemented
        return self.family is other.family and dict(self.params) == dict(other.params)


def _double_factorial(k: int) -> int:
    return math.prod(range(k, 0, -2)) if k > 0 else 1


def _gaussian_order(fam: Family) -> int:
    return {Family.GAUSSIAN1: 1, Family.GAUSSIAN2: 2, Family.GAUSSIAN3: 3}[fam]


def _norm_constant(spec: WaveletSpec) -> float:
    fam = spec.family
    if fam is Family.MORLET:
        w0 = spec.params["omega0"]
        energy = math.sqrt(math.pi) / 2 * (1 - 4 * math.exp(-0.75 * w0**2) + 3 * math.exp(-w0**2))
    elif fam is Family.MEXICAN_HAT:
        energy = 3 * math.sqrt(math.pi) / 4
    elif fam in (Family.GAUSSIAN1, Family.GAUSSIAN2, Family.GAUSSIAN3):
        # int (d^n/dt^n e^{-t^2})^2 dt = sqrt(2 pi) (2n-1)!! / 2
        energy = math.sqrt(2 * math.pi) * _double_factorial(2 * _gaussian_order(fam) - 1) / 2
    else:
        energy = 1.0  # Meyer's spectrum already has unit energy
    return 1.0 / math.sqrt(energy)


def evaluate(spec: WaveletSpec, u) -> np.ndarray:
    """Unit-energy closed form of a time-domain family at times ``u``.

    Morlet carries the usual correction term ``exp(-omega0^2/2)`` so that its
    mean is exactly zero.
    """
    u = np.asarray(u, dtype=float)
    fam = spec.family
    c = _norm_constant(spec)
    if fam is Family.MORLET:
        w0 = spec.params["omega0"]
        return c * (np.cos(w0 * u) - math.exp(-(w0**2) / 2)) * np.exp(-(u**2) / 2)
    if fam is Family.MEXICAN_HAT:
        return c * (1 - u**2) * np.exp(-(u**2) / 2)
    if fam in (Family.GAUSSIAN1, Family.GAUSSIAN2, Family.GAUSSIAN3):
        order = _gaussian_order(fam)
        # d^n/dt^n e^{-t^2} = (-1)^n H_n(t) e^{-t^2}, physicists' Hermite H_n
        coeffs = [0] * order + [1]
        return c * (-1) ** order * hermite.hermval(u, coeffs) * np.exp(-(u**2))
    raise ValueError(f"{fam.value} has no closed time-domain form; use spectrum()")


def _meyer_aux(x):
    x = np.clip(x, 0.0, 1.0)
    return x**4 * (35 - 84 * x + 70 * x**2 - 20 * x**3)


def spectrum(spec: WaveletSpec, w) -> np.ndarray:
    """Continuous Fourier transform ``int psi(t) exp(-j w t) dt`` at ``w``."""
    w = np.asarray(w, dtype=float)
    fam = spec.family
    c = _norm_constant(spec)
    if fam is Family.MORLET:
        w0 = spec.params["omega0"]
        g = np.exp(-((w - w0) ** 2) / 2) + np.exp(-((w + w0) ** 2) / 2)
        g = g - 2 * math.exp(-(w0**2) / 2) * np.exp(-(w**2) / 2)
        return (c * math.sqrt(2 * math.pi) / 2 * g).astype(complex)
    if fam is Family.MEXICAN_HAT:
        return (c * math.sqrt(2 * math.pi) * w**2 * np.exp(-(w**2) / 2)).astype(complex)
    if fam in (Family.GAUSSIAN1, Family.GAUSSIAN2, Family.GAUSSIAN3):
        order = _gaussian_order(fam)
        return c * (1j * w) ** order * math.sqrt(math.pi) * np.exp(-(w**2) / 4)
    a = np.abs(w)
    out = np.zeros_like(a)
    low = (a >= 2 * np.pi / 3) & (a <= 4 * np.pi / 3)
    high = (a > 4 * np.pi / 3) & (a <= 8 * np.pi / 3)
    out[low] = np.sin(np.pi / 2 * _meyer_aux(3 * a[low] / (2 * np.pi) - 1))
    out[high] = np.cos(np.pi / 2 * _meyer_aux(3 * a[high] / (4 * np.pi) - 1))
    return out.astype(complex)


def sample_wavelet(spec: WaveletSpec, grid: TimeGrid = DEFAULT_GRID, normalize: bool = True) -> RealSeries:
    """Sample ``psi`` on ``grid`` (default ``[-8, 8)`` with 2048 samples).

    With ``normalize`` (the default) the samples are rescaled so that
    ``sum |psi_k|^2 dt == 1``; otherwise the continuous unit-energy
    constant is kept, which is what dilated copies in the CWT need.
    """
    if spec.family is Family.MEYER:
        w = grid.omega
        bins = spectrum(spec, w) * np.exp(1j * w * grid.t_min)
        vals = np.fft.ifft(bins) / grid.dt
        peak = np.max(np.abs(vals))
        if peak > 0 and np.max(np.abs(vals.imag)) > 1e-10 * peak:
            raise ArithmeticError("Meyer synthesis left a non-negligible imaginary part")
        vals = vals.real
    else:
        vals = evaluate(spec, grid.times)
    if normalize:
        energy = float(np.sum(vals**2) * grid.dt)
        if energy > 0:
            vals = vals / math.sqrt(energy)
    return RealSeries(grid, vals)


def center_frequency(spec: WaveletSpec) -> float:
    """Center frequency in cycles per unit time, used for scale-to-Hz maps.

    Morlet uses ``omega0 / 2 pi``; the other families use the peak of
    ``|Psi|``.
    """
    fam = spec.family
    if fam is Family.MORLET:
        return spec.params["omega0"] / (2 * math.pi)
    if fam is Family.MEXICAN_HAT:
        return math.sqrt(2) / (2 * math.pi)
    if fam is Family.MEYER:
        return 2.0 / 3.0
    return math.sqrt(2 * _gaussian_order(fam)) / (2 * math.pi)


def support_radius(spec: WaveletSpec) -> float:
    return _SUPPORT_RADIUS[spec.family]


def is_even(spec: WaveletSpec) -> bool:
    return spec.family in EVEN_FAMILIES


CATALOG = tuple(WaveletSpec(f) for f in Family)
