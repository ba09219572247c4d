"""Energy, admissibility, moments, inner products and symmetry of series."""

from __future__ import annotations

import math
from dataclasses import dataclass, fields
from enum import Enum
from typing import Union

import numpy as np

from .sampling import GridMismatch, RealSeries, Series, TimeGrid, dft

DC_THRESHOLD = 1e-5
MAX_MOMENT = 8
VANISHING_TOL = 1e-5

# Taylor fits near DC use bins with |w| <= BAND_FRACTION * spectral centroid
BAND_FRACTION = 0.4
# polynomial degree of those fits, fixed so estimates do not depend on max_n
FIT_DEGREE = MAX_MOMENT + 2
# samples within this fraction of the peak at the grid edges count as decayed
EDGE_DECAY = 1e-10
# a fit band whose spectrum stays below this fraction of the spectral peak is
# treated as identically zero (every moment vanishes); polynomial fits would
# only amplify the roundoff there
SPECTRAL_FLOOR = 1e-13


class NotAdmissible(ValueError):
    pass


class UnresolvedSpectrum(ValueError):
    """Too few DFT bins near DC to estimate moments of a non-decaying series."""


class Symmetry(Enum):
    EVEN = "even"
    ODD = "odd"
    ASYMMETRIC = "asymmetric"


def energy(x: Series) -> float:
    return float(np.sum(np.abs(x.values) ** 2) * x.grid.dt)


def dc_magnitude_ratio(x: Series) -> float:
    mag = np.abs(dft(x).bins)
    peak = mag.max()
    return float(mag[0] / peak) if peak > 0 else 0.0


def admissibility(x: Series, dc_threshold: float = DC_THRESHOLD) -> float:
    """Rectangle-rule ``sum_{k != 0} |X(w_k)|^2 / |w_k| * dw``.

    ``X(w_k)`` is the DFT bin scaled by ``dt``.  The DC bin is excluded, so
    the series must have a spectral null there: a DC bin above
    ``dc_threshold`` of the spectral peak raises :class:`NotAdmissible`.
    """
    ratio = dc_magnitude_ratio(x)
    if ratio > dc_threshold:
        raise NotAdmissible(f"DC bin is {ratio:.3e} of the spectral peak (limit {dc_threshold:g})")
    grid = x.grid
    power = np.abs(dft(x).bins[1:] * grid.dt) ** 2
    return float(np.sum(power / np.abs(grid.omega[1:])) * grid.d_omega)


def moment(x: RealSeries, n: int) -> float:
    """Time-domain moment ``sum t_k^n x_k dt``."""
    if int(n) != n or not 0 <= n <= MAX_MOMENT:
        raise ValueError(f"moment order must be an integer in [0, {MAX_MOMENT}], got {n}")
    t = x.grid.times
    return float(np.sum(t ** int(n) * x.values) * x.grid.dt)


def _decays_within_grid(x: Series) -> bool:
    vals = np.abs(x.values)
    peak = vals.max()
    m = max(1, x.grid.n // 64)
    edge = max(vals[:m].max(), vals[-m:].max())
    return edge <= EDGE_DECAY * peak


def _spectral_centroid(x: Series) -> float:
    power = np.abs(dft(x).bins) ** 2
    return float(np.sum(np.abs(x.grid.omega) * power) / np.sum(power))


@dataclass(frozen=True)
class SpectralMoments:
    """One-sided moment estimates from the spectrum near DC.

    ``plus[n]`` and ``minus[n]`` estimate ``int t^n x(t) dt`` from the
    Taylor coefficients of ``X(w)`` as ``w -> 0+`` and ``w -> 0-``.  They
    agree when the moment exists; Hilbert-derived series may have a kink at
    DC, in which case only the low orders match.  ``length_scale`` is the
    reciprocal spectral centroid used to make moments dimensionless.
    """

    plus: np.ndarray
    minus: np.ndarray
    energy: float
    length_scale: float

    def normalized(self) -> np.ndarray:
        """``max(|M+_n|, |M-_n|) / (sqrt(E) * l^(n + 1/2))`` per order."""
        orders = np.arange(len(self.plus))
        scale = math.sqrt(self.energy) * self.length_scale ** (orders + 0.5)
        return np.maximum(np.abs(self.plus), np.abs(self.minus)) / scale


def spectral_moments(x: Series, max_n: int = MAX_MOMENT) -> SpectralMoments:
    """Moments from one-sided polynomial fits of ``X(w)`` near ``w = 0``.

    ``M_n = j^n X^(n)(0)``.  A time-domain sum over a finite grid cannot see
    the algebraic tails of a Hilbert transform, so moments are read off the
    spectrum instead, one side of DC at a time.

    Series that decay inside the grid are transformed exactly at any
    frequency (direct DTFT).  Other series only have trustworthy samples at
    the DFT bins, and need a grid long enough to put ``2*(FIT_DEGREE + 1)`` bins
    inside the fit band; otherwise :class:`UnresolvedSpectrum` is raised.
    A band where the spectrum is at roundoff level (below
    :data:`SPECTRAL_FLOOR` of its peak) yields all-zero moments.
    """
    if not 0 <= max_n <= MAX_MOMENT:
        raise ValueError(f"max_n must be in [0, {MAX_MOMENT}]")
    grid = x.grid
    e = energy(x)
    zeros = np.zeros(max_n + 1, dtype=complex)
    if e == 0:
        return SpectralMoments(zeros, zeros.copy(), 0.0, 1.0)
    centroid = _spectral_centroid(x)
    band = BAND_FRACTION * centroid
    degree = FIT_DEGREE
    need = 2 * (degree + 1)

    if _decays_within_grid(x):
        w_pos = band * np.arange(1, 2 * need + 1) / (2 * need)
        t = grid.times
        kernel = np.exp(-1j * np.outer(np.concatenate([w_pos, -w_pos]), t))
        xw = kernel @ x.values * grid.dt
        sides = [(w_pos, xw[: len(w_pos)]), (-w_pos, xw[len(w_pos) :])]
    else:
        w = grid.omega
        k = int(np.floor(band / grid.d_omega))
        if k < need:
            raise UnresolvedSpectrum(
                f"only {k} DFT bins below {band:.3g} rad/unit; need {need}. "
                "Sample on a longer grid (same dt) to count moments."
            )
        cont = dft(x).continuous()
        idx = np.arange(1, k + 1)
        sides = [(w[idx], cont[idx]), (w[-idx], cont[-idx])]

    peak = float(np.max(np.abs(dft(x).bins))) * grid.dt
    if all(np.max(np.abs(vals)) <= SPECTRAL_FLOOR * peak for _, vals in sides):
        return SpectralMoments(zeros, zeros.copy(), e, 1.0 / centroid)

    out = []
    for omega, vals in sides:
        coeffs = np.polynomial.polynomial.polyfit(omega / band, vals, degree)
        coeffs = coeffs[: max_n + 1] / band ** np.arange(max_n + 1)
        orders = np.arange(max_n + 1)
        factorial = np.array([math.factorial(q) for q in orders], dtype=float)
        out.append((1j) ** orders * factorial * coeffs)
    return SpectralMoments(out[0], out[1], e, 1.0 / centroid)


def moment_grid(grid: TimeGrid, half_width: float = 128.0) -> TimeGrid:
    """Symmetric grid with the same step as ``grid`` reaching ``+-half_width``.

    Hilbert-derived series need this much room before their spectra are
    resolved finely enough near DC for :func:`spectral_moments`.
    """
    half = max(half_width, grid.span / 2)
    n = 2 * int(math.ceil(half / grid.dt))
    return TimeGrid(-n * grid.dt / 2, grid.dt, n)


def vanishing_moments(x: Series, max_n: int = MAX_MOMENT, tol: float = VANISHING_TOL) -> int:
    """Largest ``N <= max_n`` with every moment of order ``< N`` vanishing.

    A moment vanishes when its dimensionless size (see
    :meth:`SpectralMoments.normalized`) is at most ``tol`` on both sides of
    DC.  The zero series returns ``max_n``.
    """
    if energy(x) == 0:
        return max_n
    mu = spectral_moments(x, max_n).normalized()
    for order, value in enumerate(mu[:max_n]):
        if value > tol:
            return order
    return max_n


def inner_product(a: Series, b: Series) -> complex:
    if not a.grid.same_as(b.grid):
        raise GridMismatch("inner product needs both series on the same grid")
    return complex(np.sum(a.values * np.conj(b.values)) * a.grid.dt)


def _mirror(x: Series) -> np.ndarray:
    if x.grid.center_index() is None:
        raise ValueError("symmetry needs a grid symmetric about t = 0 (t_min == -n*dt/2)")
    # t = 0 sits at index n/2, so sample k mirrors to (n - k) mod n
    return np.roll(x.values[::-1], 1)


def symmetry(x: Series) -> tuple[Symmetry, float]:
    """Classify ``x`` as even, odd or asymmetric by its even-part energy share.

    Returns the class and the even score ``||x_even||^2 / ||x||^2``.  The
    zero series counts as even with score 1.
    """
    total = np.sum(np.abs(x.values) ** 2)
    if total == 0:
        _mirror(x)
        return Symmetry.EVEN, 1.0
    even = (x.values + _mirror(x)) / 2
    score = float(np.sum(np.abs(even) ** 2) / total)
    if score > 0.99:
        return Symmetry.EVEN, score
    if score < 0.01:
        return Symmetry.ODD, score
    return Symmetry.ASYMMETRIC, score


def max_parity_defect(x: Series, parity: Symmetry) -> float:
    """``max |x(t) - s x(-t)|`` over mirrored pairs, s = +1 (even) or -1 (odd)."""
    sign = 1.0 if parity is Symmetry.EVEN else -1.0
    return float(np.max(np.abs(x.values - sign * _mirror(x))))


@dataclass(frozen=True)
class MetricsReport:
    energy: float
    admissibility: float
    dc_magnitude_ratio: float
    vanishing_moments: int
    max_moment_checked: int
    symmetry: Symmetry
    symmetry_score: float

    def as_dict(self) -> dict:
        out = {}
        for f in fields(self):
            val = getattr(self, f.name)
            out[f.name] = val.value if isinstance(val, Symmetry) else val
        return out

    def to_text(self) -> str:
        return "\n".join(f"{k}={_fmt(v)}" for k, v in self.as_dict().items()) + "\n"

    @staticmethod
    def csv_header() -> str:
        return ",".join(f.name for f in fields(MetricsReport))

    def to_csv_row(self) -> str:
        return ",".join(_fmt(v) for v in self.as_dict().values())

    @classmethod
    def from_text(cls, text: str) -> "MetricsReport":
        raw = dict(line.split("=", 1) for line in text.splitlines() if "=" in line)
        return cls(
            energy=float(raw["energy"]),
            admissibility=float(raw["admissibility"]),
            dc_magnitude_ratio=float(raw["dc_magnitude_ratio"]),
            vanishing_moments=int(raw["vanishing_moments"]),
            max_moment_checked=int(raw["max_moment_checked"]),
            symmetry=Symmetry(raw["symmetry"]),
            symmetry_score=float(raw["symmetry_score"]),
        )


def _fmt(v) -> str:
    if isinstance(v, float):
        return repr(v) if math.isfinite(v) else str(v)
    return str(v)


def metrics_report(
    x: Series,
    max_n: int = MAX_MOMENT,
    moment_source: Union[Series, None] = None,
) -> MetricsReport:
    """Collect every metric for ``x``.

    ``moment_source`` lets the caller count vanishing moments on a longer
    sampling of the same function (needed for Hilbert-derived series).  A
    non-admissible series reports admissibility ``inf`` and, since its
    zeroth moment does not vanish, zero vanishing moments.
    """
    try:
        adm = admissibility(x)
    except NotAdmissible:
        adm = math.inf
    sym, score = symmetry(x)
    if math.isinf(adm):
        count = 0
    else:
        count = vanishing_moments(moment_source if moment_source is not None else x, max_n)
    return MetricsReport(
        energy=energy(x),
        admissibility=adm,
        dc_magnitude_ratio=dc_magnitude_ratio(x),
        vanishing_moments=count,
        max_moment_checked=max_n,
        symmetry=sym,
        symmetry_score=score,
    )

