import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wavepair.catalog import WaveletSpec, center_frequency
from wavepair.cwt import (
    BREAKDOWN_GRID,
    TWO_SINE_GRID,
    AliasingError,
    Scalogram,
    ScaleRange,
    cwt,
    estimate_break,
    gen_freq_breakdown,
    gen_two_sine,
    level_slice,
    normalized_modulus,
    ridge_frequencies,
)
from wavepair.sampling import RealSeries, TimeGrid

MEXICAN_HAT = WaveletSpec.named("mexicanhat")
MORLET = WaveletSpec.named("morlet")
SMALL = TimeGrid(0.0, 0.01, 256)
FEW = ScaleRange.parse("1..8")


def random_signal(rng, grid=SMALL):
    return RealSeries(grid, rng.standard_normal(grid.n))


# ---------------------------------------------------------------- scale ranges


@pytest.mark.parametrize(
    "text, expected",
    [
        ("1..4", (1.0, 2.0, 3.0, 4.0)),
        ("1..2:0.5", (1.0, 1.5, 2.0)),
        ("2..8:3", (2.0, 5.0, 8.0)),
        ("5,25", (5.0, 25.0)),
        (" 3 ", (3.0,)),
    ],
)
def test_scale_range_parse(text, expected):
    assert ScaleRange.parse(text).scales == pytest.approx(expected)


@pytest.mark.parametrize("text", ["4..1", "0..3", "1..3:0", "1..3:-1", "2,1", "-1", "1,nan", "a..b"])
def test_scale_range_rejects(text):
    with pytest.raises(ValueError):
        ScaleRange.parse(text)


def test_scale_range_index_and_text():
    r = ScaleRange.parse("1..64")
    assert len(r) == 64
    assert r.index(25) == 24
    with pytest.raises(KeyError):
        r.index(0.5)
    assert ScaleRange.parse(r.to_text()) == r


# ----------------------------------------------------------------- transform


def test_zero_signal_gives_zero_scalogram():
    s = cwt(RealSeries(SMALL, np.zeros(SMALL.n)), MEXICAN_HAT, FEW)
    assert np.array_equal(s.coeffs, np.zeros((len(FEW), SMALL.n)))


@settings(max_examples=20, deadline=None)
@given(st.floats(-5, 5), st.floats(-5, 5), st.integers(0, 2**32 - 1))
def test_linearity(alpha, beta, seed):
    rng = np.random.default_rng(seed)
    f, g = random_signal(rng), random_signal(rng)
    mix = RealSeries(SMALL, alpha * f.values + beta * g.values)
    lhs = cwt(mix, MEXICAN_HAT, FEW).coeffs
    rhs = alpha * cwt(f, MEXICAN_HAT, FEW).coeffs + beta * cwt(g, MEXICAN_HAT, FEW).coeffs
    scale = max(np.abs(rhs).max(), 1e-12)
    assert np.max(np.abs(lhs - rhs)) <= 1e-12 * scale


@pytest.mark.parametrize("shift", [1, 17, 128])
@pytest.mark.parametrize("analyzer", ["real", "analytic"])
def test_translation_covariance(rng, shift, analyzer):
    f = random_signal(rng)
    moved = RealSeries(SMALL, np.roll(f.values, shift))
    a = cwt(f, MEXICAN_HAT, FEW, analyzer).coeffs
    b = cwt(moved, MEXICAN_HAT, FEW, analyzer).coeffs
    assert np.allclose(np.roll(a, shift, axis=1), b, rtol=0, atol=1e-12 * np.abs(a).max())


@pytest.mark.parametrize("analyzer", ["real", "hilbert", "hartley+", "hartley-"])
def test_real_analyzers_give_real_coefficients(rng, analyzer):
    s = cwt(random_signal(rng), MORLET, FEW, analyzer)
    assert not s.is_complex
    assert np.all(s.coeffs.imag == 0)


@pytest.mark.parametrize("wavelet", ["mexicanhat", "morlet", "gaussian1", "meyer"])
def test_analytic_and_fourier_moduli_agree(rng, wavelet):
    f = random_signal(rng)
    spec = WaveletSpec.named(wavelet)
    a = cwt(f, spec, FEW, "analytic").modulus()
    b = cwt(f, spec, FEW, "fourier").modulus()
    assert np.max(np.abs(a - b)) <= 1e-10


def test_workers_match_sequential(rng):
    f = random_signal(rng)
    seq = cwt(f, MORLET, FEW, "analytic")
    par = cwt(f, MORLET, FEW, "analytic", workers=4)
    assert np.array_equal(seq.coeffs, par.coeffs)


def test_wide_rows_flagged():
    grid = TimeGrid(0.0, 0.01, 64)
    s = cwt(RealSeries(grid, np.ones(64)), MEXICAN_HAT, ScaleRange.parse("1,4,32"))
    assert s.wide_rows[0] is False
    assert s.wide_rows[-1] is True


def test_scalogram_metadata():
    s = cwt(gen_two_sine(), MORLET, FEW, "analytic")
    assert s.is_complex
    assert s.analyzer == "analytic"
    assert s.center_frequency == center_frequency(MORLET)
    assert s.frequency_of(2) == pytest.approx(center_frequency(MORLET) / (2 * TWO_SINE_GRID.dt))


def test_scalogram_rejects_bad_shape():
    with pytest.raises(ValueError):
        Scalogram(FEW, SMALL, np.zeros((3, SMALL.n)), 1.0)
    bad = np.zeros((len(FEW), SMALL.n))
    bad[0, 0] = np.nan
    with pytest.raises(ValueError):
        Scalogram(FEW, SMALL, bad, 1.0)


def test_scalogram_is_read_only():
    s = cwt(gen_two_sine(), MEXICAN_HAT, FEW)
    with pytest.raises(ValueError):
        s.coeffs[0, 0] = 1


# ------------------------------------------------------------------- signals


def test_two_sine_content():
    x = gen_two_sine()
    assert np.max(np.abs(x.values)) <= 2
    mag = np.abs(np.fft.rfft(x.values))
    hz = np.fft.rfftfreq(x.grid.n, x.grid.dt)
    assert set(np.round(hz[np.argsort(mag)[-2:]], 6)) == {5.0, 9.0}


def test_two_sine_equal_frequencies():
    x = gen_two_sine(f1=3.0, f2=3.0)
    assert np.allclose(x.values, 2 * np.sin(2 * np.pi * 3 * x.grid.times))


@pytest.mark.parametrize("f1, f2", [(50.0, 5.0), (5.0, 60.0), (-1.0, 5.0)])
def test_two_sine_alias(f1, f2):
    with pytest.raises(AliasingError):
        gen_two_sine(f1=f1, f2=f2)


def test_breakdown_halves():
    x = gen_freq_breakdown()
    half = x.grid.n // 2
    assert np.allclose(x.values[:half], np.sin(2 * np.pi * 5 * x.grid.times[:half]))
    assert np.allclose(x.values[half:], np.sin(2 * np.pi * 50 * x.grid.times[half:]))


def test_breakdown_first_half_peaks_at_low_frequency():
    # Hann window, zero-padded 16x: the 2 Hz bin spacing of 500 samples hides 5 Hz
    x = gen_freq_breakdown()
    half = x.values[: x.grid.n // 2]
    pad = 16 * len(half)
    mag = np.abs(np.fft.rfft(half * np.hanning(len(half)), pad))
    hz = np.fft.rfftfreq(pad, x.grid.dt)
    assert hz[np.argmax(mag)] == pytest.approx(5.0, abs=0.1)


def test_breakdown_at_grid_start_is_pure_high():
    x = gen_freq_breakdown(t_break=BREAKDOWN_GRID.t_min)
    assert np.allclose(x.values, np.sin(2 * np.pi * 50 * x.grid.times))


@pytest.mark.parametrize("kwargs, exc", [({"f_high": 600.0}, AliasingError), ({"t_break": 1.0}, ValueError), ({"t_break": -0.1}, ValueError)])
def test_breakdown_rejects(kwargs, exc):
    with pytest.raises(exc):
        gen_freq_breakdown(**kwargs)


# ------------------------------------------------------------------ readouts


def test_level_slice_and_normalized_modulus():
    s = cwt(gen_freq_breakdown(), MEXICAN_HAT, ScaleRange.parse("5,25"), "analytic")
    row = level_slice(s, 25)
    assert np.array_equal(row.values, s.coeffs[1])
    nm = normalized_modulus(row)
    assert nm.values.max() == 1.0
    assert nm.values.min() >= 0
    with pytest.raises(KeyError):
        level_slice(s, 7)


def test_normalized_modulus_edge_cases():
    with pytest.raises(ValueError):
        normalized_modulus(RealSeries(SMALL, np.zeros(SMALL.n)))
    flat = RealSeries(SMALL, -3 * np.ones(SMALL.n))
    assert np.array_equal(normalized_modulus(flat).values, np.ones(SMALL.n))


def test_two_sine_ridges():
    s = cwt(gen_two_sine(), MORLET, ScaleRange.parse("1..64"), "analytic")
    ridges = ridge_frequencies(s, 2)
    found = sorted(hz for _, hz in ridges)
    assert found[0] == pytest.approx(5.0, rel=0.05)
    assert found[1] == pytest.approx(9.0, rel=0.05)
    e = s.row_energy()
    ridge_energy = min(e[s.scales.index(a)] for a, _ in ridges)
    assert ridge_energy >= 5 * np.median(e)


def test_ridges_strongest_first():
    s = cwt(gen_two_sine(), MORLET, ScaleRange.parse("1..64"), "analytic")
    ridges = ridge_frequencies(s, 2)
    e = s.row_energy()
    assert e[s.scales.index(ridges[0][0])] >= e[s.scales.index(ridges[1][0])]


def test_ridge_errors():
    s = cwt(gen_two_sine(), MORLET, FEW)
    with pytest.raises(ValueError):
        ridge_frequencies(s, 0)
    with pytest.raises(ValueError):
        ridge_frequencies(s, len(FEW) + 1)
    zero = cwt(RealSeries(TWO_SINE_GRID, np.zeros(1000)), MORLET, FEW)
    with pytest.raises(ValueError):
        ridge_frequencies(zero, 1)


def test_single_scale_ridge():
    s = cwt(gen_two_sine(), MORLET, ScaleRange.parse("10"), "analytic")
    assert ridge_frequencies(s, 1) == [(10.0, s.frequency_of(10))]


def test_break_estimate():
    s = cwt(gen_freq_breakdown(), MEXICAN_HAT, ScaleRange.parse("5,25"), "analytic")
    fine = normalized_modulus(level_slice(s, 5))
    coarse = normalized_modulus(level_slice(s, 25))
    assert abs(estimate_break(fine, coarse) - 0.5) <= 0.020


@pytest.mark.parametrize("t_break", [0.3, 0.7])
def test_break_estimate_moves_with_break(t_break):
    s = cwt(gen_freq_breakdown(t_break=t_break), MEXICAN_HAT, ScaleRange.parse("5,25"), "analytic")
    est = estimate_break(normalized_modulus(level_slice(s, 5)), normalized_modulus(level_slice(s, 25)))
    assert abs(est - t_break) <= 0.020


def test_break_estimate_needs_regimes():
    ones = RealSeries(BREAKDOWN_GRID, np.ones(1000))
    with pytest.raises(ValueError):
        estimate_break(ones, ones)
    low = RealSeries(BREAKDOWN_GRID, np.zeros(1000))
    with pytest.raises(ValueError):
        estimate_break(low, ones)


def test_envelope_follows_amplitude():
    # a unit sine at the ridge scale of an analytic Mexican hat gives a flat envelope
    x = gen_freq_breakdown(t_break=BREAKDOWN_GRID.t_min)
    s = cwt(x, MEXICAN_HAT, ScaleRange.parse("5"), "analytic")
    mag = np.abs(s.row(5))[100:-100]
    assert (mag.max() - mag.min()) / mag.max() < 0.05
    assert math.isfinite(mag.mean())
