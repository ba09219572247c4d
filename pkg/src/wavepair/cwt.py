"""Continuous wavelet transform, experiment signals and scalogram readouts.

Scales are measured in samples: at scale ``a`` the analyzing wavelet is
``psi((t - b) / (a*dt))``, so a wavelet with center frequency ``f_c``
(cycles per wavelet time unit) responds most to ``f_c / (a*dt)`` Hz.
Coefficients are

    C[a, b] = dt / sqrt(a) * sum_k f[k] * conj(psi((k - b) / a))

evaluated as a circular cross-correlation through the DFT.  For real
wavelets the conjugate changes nothing.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .catalog import WaveletSpec, center_frequency, sample_wavelet, support_radius
from .kernels import analyzer_label, derive, is_complex_analyzer, parse_analyzer
from .sampling import ComplexSeries, RealSeries, TimeGrid
from .spectral import real_part_checked

# two-sine experiment: 1000 samples at 10 ms puts 5 Hz and 9 Hz inside scales 1..64
TWO_SINE_GRID = TimeGrid(0.0, 0.01, 1000)
# frequency-breakdown experiment: 1000 samples over one second
BREAKDOWN_GRID = TimeGrid(0.0, 0.001, 1000)


class AliasingError(ValueError):
    pass


@dataclass(frozen=True)
class ScaleRange:
    scales: tuple

    def __post_init__(self):
        vals = tuple(float(a) for a in self.scales)
        if not vals:
            raise ValueError("scale range is empty")
        if any(not math.isfinite(a) or a <= 0 for a in vals):
            raise ValueError("scales must be positive and finite")
        if any(b <= a for a, b in zip(vals, vals[1:])):
            raise ValueError("scales must be strictly increasing")
        object.__setattr__(self, "scales", vals)

    @classmethod
    def linear(cls, first: float, last: float, step: float = 1.0) -> "ScaleRange":
        if step <= 0:
            raise ValueError("scale step must be positive")
        count = int(math.floor((last - first) / step + 1e-9)) + 1
        return cls(tuple(first + i * step for i in range(count)))

    @classmethod
    def parse(cls, text: str) -> "ScaleRange":
        """Parse ``a1..a2`` or ``a1..a2:step`` (inclusive), or a comma list."""
        text = text.strip()
        if ".." in text:
            bounds, _, step = text.partition(":")
            lo, hi = bounds.split("..")
            return cls.linear(float(lo), float(hi), float(step) if step else 1.0)
        return cls(tuple(float(v) for v in text.split(",")))

    def __len__(self):
        return len(self.scales)

    def __iter__(self):
        return iter(self.scales)

    def index(self, a: float) -> int:
        for i, s in enumerate(self.scales):
            if math.isclose(s, a, rel_tol=1e-12, abs_tol=1e-12):
                return i
        raise KeyError(f"scale {a:g} not in range")

    def to_text(self) -> str:
        return ",".join(repr(a) for a in self.scales)


@dataclass(frozen=True, eq=False)
class Scalogram:
    """CWT coefficients, one row per scale, one column per translation."""

    scales: ScaleRange
    grid: TimeGrid
    coeffs: np.ndarray
    center_frequency: float
    is_complex: bool = True
    wavelet: str = ""
    analyzer: str = ""
    wide_rows: tuple = ()

    def __post_init__(self):
        c = np.array(self.coeffs, dtype=complex, copy=True)
        if c.shape != (len(self.scales), self.grid.n):
            raise ValueError(f"coefficient matrix {c.shape} does not match scales x samples")
        if not np.all(np.isfinite(c)):
            raise ValueError("scalogram has non-finite coefficients")
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)
        if not self.wide_rows:
            object.__setattr__(self, "wide_rows", (False,) * len(self.scales))

    def row(self, a: float) -> np.ndarray:
        return self.coeffs[self.scales.index(a)]

    def modulus(self) -> np.ndarray:
        return np.abs(self.coeffs)

    def phase(self) -> np.ndarray:
        return np.angle(self.coeffs)

    def row_energy(self) -> np.ndarray:
        """Mean squared modulus of each row."""
        return np.mean(np.abs(self.coeffs) ** 2, axis=1)

    def frequency_of(self, a: float) -> float:
        return self.center_frequency / (a * self.grid.dt)


def dilated_wavelet(spec: WaveletSpec, a: float, n: int, analyzer="real") -> np.ndarray:
    """``psi(j/a)`` (after the analyzer) for offsets ``j``, zero offset first.

    Closed forms are re-evaluated at every scale; Meyer is re-synthesized
    from its spectrum on the dilated lattice.
    """
    lattice = TimeGrid(-(n // 2) / a, 1.0 / a, n)
    psi = sample_wavelet(spec, lattice, normalize=False)
    w = derive(psi, analyzer)
    return np.fft.ifftshift(np.asarray(w.values, dtype=complex))


def _norm(x: np.ndarray) -> float:
    # scaled so tiny inputs do not underflow when squared
    m = float(np.max(np.abs(x))) if x.size else 0.0
    return m * float(np.linalg.norm(x / m)) if m > 0 else 0.0


def cwt(
    f: RealSeries,
    wavelet: WaveletSpec,
    scales: ScaleRange,
    analyzer="real",
    workers: int = 1,
) -> Scalogram:
    """CWT of ``f`` with ``wavelet`` (or a kernel derived from it).

    ``analyzer`` picks the analyzing function: ``"real"`` (the wavelet
    itself), ``"hilbert"``, or any :class:`~wavepair.kernels.KernelKind`.
    Rows are independent; ``workers > 1`` evaluates them on a thread pool
    with results identical to the sequential loop.
    """
    analyzer = parse_analyzer(analyzer)
    n = f.grid.n
    spectrum_f = np.fft.fft(f.values)
    f_norm = _norm(f.values)
    complex_out = is_complex_analyzer(analyzer)

    def one_row(a: float) -> np.ndarray:
        w = dilated_wavelet(wavelet, a, n, analyzer)
        gain = f.grid.dt / math.sqrt(a)
        row = np.fft.ifft(spectrum_f * np.conj(np.fft.fft(w))) * gain
        if not complex_out:
            # Cauchy-Schwarz bound on |C| as the residue reference
            bound = gain * f_norm * _norm(w)
            row = real_part_checked(row, peak=bound).astype(complex)
        return row

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(one_row, scales.scales))
    else:
        rows = [one_row(a) for a in scales.scales]

    radius = support_radius(wavelet)
    wide = tuple(2 * a * radius > n for a in scales.scales)
    return Scalogram(
        scales=scales,
        grid=f.grid,
        coeffs=np.array(rows),
        center_frequency=center_frequency(wavelet),
        is_complex=complex_out,
        wavelet=wavelet.label,
        analyzer=analyzer_label(analyzer),
        wide_rows=wide,
    )


def _check_alias(grid: TimeGrid, *freqs: float) -> None:
    nyquist = 1.0 / (2 * grid.dt)
    for hz in freqs:
        if not 0 <= hz < nyquist:
            raise AliasingError(f"{hz:g} Hz is not below the {nyquist:g} Hz Nyquist limit")


def gen_two_sine(grid: TimeGrid = TWO_SINE_GRID, f1: float = 5.0, f2: float = 9.0) -> RealSeries:
    """``sin(2 pi f1 t) + sin(2 pi f2 t)``, unit amplitudes."""
    _check_alias(grid, f1, f2)
    t = grid.times
    return RealSeries(grid, np.sin(2 * np.pi * f1 * t) + np.sin(2 * np.pi * f2 * t))


def gen_freq_breakdown(
    grid: TimeGrid = BREAKDOWN_GRID,
    f_low: float = 5.0,
    f_high: float = 50.0,
    t_break: float = 0.5,
) -> RealSeries:
    """Unit sine at ``f_low`` before ``t_break`` and at ``f_high`` from it on."""
    _check_alias(grid, f_low, f_high)
    if not grid.t_min <= t_break < grid.t_max:
        raise ValueError(f"break time {t_break:g} outside [{grid.t_min:g}, {grid.t_max:g})")
    t = grid.times
    vals = np.where(t < t_break, np.sin(2 * np.pi * f_low * t), np.sin(2 * np.pi * f_high * t))
    return RealSeries(grid, vals)


def level_slice(s: Scalogram, a: float) -> ComplexSeries:
    return ComplexSeries(s.grid, s.row(a))


def normalized_modulus(x) -> RealSeries:
    mag = np.abs(np.asarray(x.values))
    peak = mag.max()
    if peak == 0:
        raise ValueError("cannot normalize an all-zero series")
    return RealSeries(x.grid, mag / peak)


def ridge_frequencies(s: Scalogram, top_k: int = 2) -> list[tuple[float, float]]:
    """The ``top_k`` strongest ridges as ``(scale, Hz)`` pairs.

    A ridge is a row whose mean squared modulus is a local maximum over
    scale (both neighbours lower, edges excluded unless there is a single
    scale).  Ridges come back strongest first; fewer than ``top_k`` are
    returned when fewer exist.
    """
    count = len(s.scales)
    if top_k < 1 or top_k > count:
        raise ValueError(f"top_k must be in [1, {count}], got {top_k}")
    e = s.row_energy()
    if not np.any(e > 0):
        raise ValueError("scalogram is identically zero; no ridges")
    if count == 1:
        peaks = [0]
    else:
        peaks = [i for i in range(1, count - 1) if e[i] > e[i - 1] and e[i] >= e[i + 1]]
    peaks.sort(key=lambda i: e[i], reverse=True)
    return [(s.scales.scales[i], s.frequency_of(s.scales.scales[i])) for i in peaks[:top_k]]


def estimate_break(fine: RealSeries, coarse: RealSeries, threshold: float = 0.5) -> float:
    """Time where the signal hands over from low to high frequency.

    ``fine`` and ``coarse`` are normalized moduli at a small and a large
    scale.  Starting from the first sample in the low-frequency regime
    (coarse above, fine below ``threshold``), find where the coarse modulus
    first drops below and the fine modulus first rises above the threshold;
    the estimate is the midpoint of those two times.
    """
    a, b = np.asarray(fine.values), np.asarray(coarse.values)
    low = np.flatnonzero((b >= threshold) & (a < threshold))
    if low.size == 0:
        raise ValueError("no low-frequency regime found")
    start = low[0]
    down = np.flatnonzero(b[start:] < threshold)
    up = np.flatnonzero(a[start:] > threshold)
    if down.size == 0 or up.size == 0:
        raise ValueError("no frequency change found")
    t = fine.grid.times
    return float((t[start + down[0]] + t[start + up[0]]) / 2)
