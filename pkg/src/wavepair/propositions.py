"""Numerical checks of the Hilbert-pair properties for one catalog wavelet.

:func:`verify_wavelet` samples a wavelet, derives its Hilbert transform
and the four kernels, and measures every property the construction
promises: preserved energy and admissibility, orthogonality, parity flip,
involution, one-sided spectra, the Hartley magnitude/phase rule and
preserved vanishing moments.  Each measurement becomes a :class:`Check`.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .catalog import WaveletSpec, sample_wavelet
from .kernels import KernelKind, derive, expected_phase_shift
from .metrics import (
    DC_THRESHOLD,
    MAX_MOMENT,
    Symmetry,
    admissibility,
    dc_magnitude_ratio,
    energy,
    inner_product,
    moment_grid,
    symmetry,
    vanishing_moments,
)
from .sampling import DEFAULT_GRID, RealSeries, TimeGrid, dft
from .spectral import HilbertMultiplier, hilbert

ENERGY_RTOL = 1e-6
ADMISSIBILITY_RTOL = 1e-3
UNIT_ENERGY_TOL = 1e-9
ORTHOGONALITY_TOL = 1e-8
PARITY_TOL = 0.01
INVOLUTION_TOL = 1e-9
REALNESS_TOL = 1e-10
HALF_SPECTRUM_TOL = 1e-10
HARTLEY_MAG_TOL = 1e-9
HARTLEY_PHASE_TOL = 1e-6
# bins below this fraction of the spectral peak carry no usable phase
HARTLEY_BIN_FLOOR = 1e-8


@dataclass(frozen=True)
class Check:
    name: str
    measured: float
    tolerance: float
    passed: bool
    detail: str = ""

    def row(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status}  {self.name:<40s} {self.measured:>12.3e} {self.tolerance:>10.1e}  {self.detail}".rstrip()


def _at_most(name, measured, tol, detail="") -> Check:
    return Check(name, float(measured), float(tol), bool(measured <= tol), detail)


def _rel(a: float, b: float) -> float:
    return abs(a - b) / abs(b) if b else abs(a - b)


def one_sided_leak(x, side: str) -> float:
    """Share of spectral energy on the forbidden side (``"pos"`` or ``"neg"``)."""
    power = np.abs(dft(x).bins) ** 2
    half = x.grid.n // 2
    total = power.sum()
    if total == 0:
        return 0.0
    leak = power[1:half].sum() if side == "pos" else power[half + 1 :].sum()
    return float(leak / total)


def hartley_deviation(psi: RealSeries, out: RealSeries, kind: KernelKind) -> tuple[float, float]:
    """Worst magnitude mismatch (relative to peak) and phase error in radians."""
    src = dft(psi).bins
    dst = dft(out).bins
    peak = np.abs(src).max()
    keep = np.abs(src) > HARTLEY_BIN_FLOOR * peak
    keep[0] = False
    keep[psi.grid.n // 2] = False
    mag = np.max(np.abs(np.abs(dst[keep]) - np.abs(src[keep]))) / peak
    shift = np.angle(dst[keep] / src[keep])
    err = np.angle(np.exp(1j * (shift - expected_phase_shift(kind, psi.grid.omega[keep]))))
    return float(mag), float(np.max(np.abs(err)))


def realness_residue(x: RealSeries) -> float:
    """Imaginary residue of the unprojected Hilbert output, relative to its peak."""
    raw = np.fft.ifft(np.fft.fft(x.values) * HilbertMultiplier(x.grid.n).factors)
    peak = np.abs(raw).max()
    return float(np.abs(raw.imag).max() / peak) if peak > 0 else 0.0


def verify_wavelet(
    spec: WaveletSpec,
    grid: TimeGrid = DEFAULT_GRID,
    dc_offset: float = 0.0,
    moments: bool = True,
) -> list[Check]:
    """Run every property check for ``spec`` sampled on ``grid``.

    ``dc_offset`` adds a constant to the sampled wavelet; it exists so the
    non-admissible path can be exercised.  When the DC bin is too large the
    suite stops after reporting the failed admissibility precondition.
    Vanishing moments are counted on a long grid with the same step (see
    :func:`~wavepair.metrics.moment_grid`); ``moments=False`` skips them.
    """
    psi = sample_wavelet(spec, grid)
    if dc_offset:
        psi = RealSeries(grid, psi.values + dc_offset)
    e_psi = energy(psi)
    checks = [_at_most("unit energy", abs(e_psi - 1.0), UNIT_ENERGY_TOL)]

    ratio = dc_magnitude_ratio(psi)
    if ratio > DC_THRESHOLD:
        checks.append(Check("admissible (DC bin / peak)", ratio, DC_THRESHOLD, False, "NotAdmissible"))
        return checks
    checks.append(_at_most("admissible (DC bin / peak)", ratio, DC_THRESHOLD))
    c_psi = admissibility(psi)

    h = hilbert(psi)
    checks.append(_at_most("hilbert: realness residue", realness_residue(psi), REALNESS_TOL))
    checks.append(_at_most("hilbert: energy preserved", _rel(energy(h), e_psi), ENERGY_RTOL))
    checks.append(_at_most("hilbert: admissibility preserved", _rel(admissibility(h), c_psi), ADMISSIBILITY_RTOL))
    checks.append(_at_most("hilbert: orthogonal to psi", abs(inner_product(psi, h)) / e_psi, ORTHOGONALITY_TOL))
    hh = hilbert(h)
    checks.append(_at_most("hilbert: involution H(H(psi)) = -psi", np.max(np.abs(hh.values + psi.values)), INVOLUTION_TOL))

    if grid.center_index() is not None:
        cls, score = symmetry(psi)
        _, h_score = symmetry(h)
        if cls is Symmetry.EVEN:
            checks.append(_at_most("hilbert: even -> odd", h_score, PARITY_TOL, "even score of H(psi)"))
        elif cls is Symmetry.ODD:
            checks.append(_at_most("hilbert: odd -> even", 1.0 - h_score, PARITY_TOL, "odd score of H(psi)"))

    derived = {kind: derive(psi, kind) for kind in KernelKind}
    for kind, out in derived.items():
        label = kind.value
        checks.append(_at_most(f"{label}: energy preserved", _rel(energy(out), e_psi), ENERGY_RTOL))
        checks.append(_at_most(f"{label}: admissibility preserved", _rel(admissibility(out), c_psi), ADMISSIBILITY_RTOL))
    checks.append(_at_most("fourier: positive-frequency energy", one_sided_leak(derived[KernelKind.FOURIER_LIKE], "pos"), HALF_SPECTRUM_TOL))
    checks.append(_at_most("analytic: negative-frequency energy", one_sided_leak(derived[KernelKind.ANALYTIC], "neg"), HALF_SPECTRUM_TOL))
    for kind in (KernelKind.HARTLEY_PLUS, KernelKind.HARTLEY_MINUS):
        mag, phase = hartley_deviation(psi, derived[kind], kind)
        checks.append(_at_most(f"{kind.value}: magnitude matches psi", mag, HARTLEY_MAG_TOL))
        checks.append(_at_most(f"{kind.value}: phase offset", phase, HARTLEY_PHASE_TOL, "rad"))

    if moments and not dc_offset:
        checks.extend(moment_checks(spec, grid))
    return checks


def moment_checks(spec: WaveletSpec, grid: TimeGrid = DEFAULT_GRID, max_n: int = MAX_MOMENT) -> list[Check]:
    """Vanishing moments of ``H(psi)`` and every kernel are at least those of ``psi``."""
    long = sample_wavelet(spec, moment_grid(grid))
    base = vanishing_moments(long, max_n)
    out = [Check("psi: vanishing moments", base, 0, True, f"N = {base}")]
    for analyzer in ("hilbert",) + tuple(KernelKind):
        label = analyzer if isinstance(analyzer, str) else analyzer.value
        count = vanishing_moments(derive(long, analyzer), max_n)
        out.append(Check(f"{label}: vanishing moments >= psi", count, base, count >= base, f"N = {count}"))
    return out


def all_passed(checks: list[Check]) -> bool:
    return all(c.passed for c in checks)


def format_report(spec: WaveletSpec, grid: TimeGrid, checks: list[Check]) -> str:
    head = f"wavelet {spec.label} on grid t_min={grid.t_min:g} dt={grid.dt:g} n={grid.n}"
    cols = f"{'':6s}{'check':<40s} {'measured':>12s} {'tolerance':>10s}"
    lines = [head, cols] + [c.row() for c in checks]
    failed = sum(not c.passed for c in checks)
    lines.append(f"{len(checks) - failed}/{len(checks)} checks passed")
    return "\n".join(lines) + "\n"
