import numpy as np
import pytest
from oracles import VANISHING

from wavepair.catalog import CATALOG, WaveletSpec, sample_wavelet
from wavepair.kernels import (
    ANALYZERS,
    KernelKind,
    analytic,
    derive,
    expected_phase_shift,
    fourier_like,
    hartley_like,
    is_complex_analyzer,
    parse_analyzer,
)
from wavepair.metrics import Symmetry, admissibility, energy, moment_grid, symmetry, vanishing_moments
from wavepair.propositions import hartley_deviation, one_sided_leak
from wavepair.sampling import DEFAULT_GRID, ComplexSeries, RealSeries, dft
from wavepair.spectral import hilbert

G = DEFAULT_GRID
R2 = np.sqrt(2)
K0 = 40


def cos_bin():
    return RealSeries(G, np.cos(2 * np.pi * K0 * G.times / (G.n * G.dt)))


def phase():
    return 2 * np.pi * K0 * G.times / (G.n * G.dt)


def test_fourier_like_of_cosine():
    z = fourier_like(cos_bin())
    assert np.allclose(z.values, np.exp(-1j * phase()) / R2, atol=1e-12)
    mag = np.abs(dft(z).bins)
    assert np.argmax(mag) == G.n - K0
    assert np.sum(mag > 1e-9 * mag.max()) == 1


def test_analytic_of_cosine():
    z = analytic(cos_bin())
    assert np.allclose(z.values, np.exp(1j * phase()) / R2, atol=1e-12)
    assert np.argmax(np.abs(dft(z).bins)) == K0


def test_hartley_plus_of_cosine_is_cas():
    y = hartley_like(cos_bin(), KernelKind.HARTLEY_PLUS)
    assert np.allclose(y.values, (np.cos(phase()) + np.sin(phase())) / R2, atol=1e-12)


def test_zero_in_zero_out():
    z = RealSeries(G, np.zeros(G.n))
    for kind in KernelKind:
        assert not np.any(derive(z, kind).values)


def test_output_types(psi):
    assert isinstance(fourier_like(psi), ComplexSeries)
    assert isinstance(analytic(psi), ComplexSeries)
    assert isinstance(hartley_like(psi), RealSeries)


def test_sums_recover_psi(psi):
    assert np.allclose(analytic(psi).values + fourier_like(psi).values, R2 * psi.values, atol=1e-14)
    plus = hartley_like(psi, KernelKind.HARTLEY_PLUS).values
    minus = hartley_like(psi, KernelKind.HARTLEY_MINUS).values
    assert np.allclose(plus + minus, R2 * psi.values, atol=1e-14)


def test_fourier_and_analytic_are_conjugates(psi):
    assert np.allclose(fourier_like(psi).values, np.conj(analytic(psi).values))


@pytest.mark.parametrize("kind", list(KernelKind), ids=lambda k: k.value)
def test_energy_and_admissibility_preserved(psi, kind):
    out = derive(psi, kind)
    assert abs(energy(out) - energy(psi)) <= 1e-6 * energy(psi)
    assert abs(admissibility(out) - admissibility(psi)) <= 1e-3 * admissibility(psi)


def test_half_spectrum_nullity(psi):
    assert one_sided_leak(fourier_like(psi), "pos") <= 1e-10
    assert one_sided_leak(analytic(psi), "neg") <= 1e-10


@pytest.mark.parametrize("kind", [KernelKind.HARTLEY_PLUS, KernelKind.HARTLEY_MINUS], ids=lambda k: k.value)
def test_hartley_magnitude_and_phase(psi, kind):
    mag, ph = hartley_deviation(psi, hartley_like(psi, kind), kind)
    assert mag <= 1e-9
    assert ph <= 1e-6


def test_hartley_rejects_complex_kind(psi):
    with pytest.raises(ValueError):
        hartley_like(psi, KernelKind.ANALYTIC)


def test_hartley_of_mexican_hat_is_asymmetric():
    psi = sample_wavelet(WaveletSpec.named("mexicanhat"), G)
    cls, score = symmetry(hartley_like(psi))
    assert cls is Symmetry.ASYMMETRIC
    assert score == pytest.approx(0.5, abs=0.01)


def test_expected_phase_sign():
    w = np.array([-2.0, 3.0])
    assert np.allclose(expected_phase_shift(KernelKind.HARTLEY_PLUS, w), [np.pi / 4, -np.pi / 4])
    assert np.allclose(expected_phase_shift(KernelKind.HARTLEY_MINUS, w), [-np.pi / 4, np.pi / 4])


@pytest.mark.parametrize(
    "name, expected",
    [("real", "real"), ("psi", "real"), ("hilbert", "hilbert"), ("Fourier-like", KernelKind.FOURIER_LIKE), ("hartley", KernelKind.HARTLEY_PLUS)],
)
def test_parse_analyzer(name, expected):
    assert parse_analyzer(name) == expected


def test_parse_analyzer_rejects():
    with pytest.raises(ValueError):
        parse_analyzer("cauchy")


def test_analyzers_listed():
    assert set(ANALYZERS) == {"real", "hilbert", "fourier", "analytic", "hartley+", "hartley-"}
    assert [a for a in ANALYZERS if is_complex_analyzer(a)] == ["fourier", "analytic"]


def test_derive_hilbert_matches(psi):
    assert np.array_equal(derive(psi, "hilbert").values, hilbert(psi).values)
    assert derive(psi, "real") is psi


@pytest.mark.parametrize("name", sorted(VANISHING))
@pytest.mark.parametrize("analyzer", ["hilbert"] + list(KernelKind), ids=str)
def test_vanishing_moments_preserved(name, analyzer):
    long = sample_wavelet(WaveletSpec.named(name), moment_grid(G))
    assert vanishing_moments(derive(long, analyzer)) >= vanishing_moments(long) == VANISHING[name]


def test_all_catalog_entries_build():
    for spec in CATALOG:
        psi = sample_wavelet(spec, G)
        for kind in KernelKind:
            assert np.all(np.isfinite(derive(psi, kind).values))
