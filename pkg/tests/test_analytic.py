import math

import numpy as np
import pytest

from helpers import sampled, square_wave
from pwm_lab import (
    AnalyticVoltageParams,
    CarrierSpec,
    DomainError,
    ModulatingWave,
    analytic_pole_voltage,
    commutation_angle_alpha,
    fourier_coefficients_numeric,
    harmonic_spectrum,
    modulator_value,
    synthesize_pole_voltage,
)

INJ = ModulatingWave()
SPEC = CarrierSpec.truncated(0.5, a_m=30 * math.pi)
OMEGA = 100 * math.pi


def test_alpha_at_zero_crossing():
    assert commutation_angle_alpha(INJ, 0.0) == pytest.approx(math.pi / 2)


def test_alpha_at_modulator_peak():
    assert commutation_angle_alpha(INJ, math.pi / 2) == pytest.approx(math.pi / 2 * 1.851, abs=1e-12)
    assert commutation_angle_alpha(INJ, math.pi / 2) == pytest.approx(2.9075, abs=1e-4)


def test_alpha_vanishes_at_negative_unit_modulator():
    sine = ModulatingWave("sinusoidal")
    assert commutation_angle_alpha(sine, -math.pi / 2) == pytest.approx(0.0, abs=1e-15)


def test_series_clamped_in_negative_window():
    t = np.linspace(7.6e-3, 12.4e-3, 50)
    v = analytic_pole_voltage(t, AnalyticVoltageParams(SPEC, INJ, dc_link=2.0))
    assert np.all(v == -1.0)


def test_series_without_harmonics_is_the_envelope():
    t = np.array([3e-3, 5e-3, 6.2e-3, 14e-3])
    v = analytic_pole_voltage(t, AnalyticVoltageParams(SPEC, INJ, n_max=0))
    expected = 0.5 * modulator_value(INJ, OMEGA * t + math.pi / 2)
    np.testing.assert_allclose(v, expected, atol=1e-15)


def test_negative_n_max_rejected():
    with pytest.raises(DomainError):
        AnalyticVoltageParams(SPEC, INJ, n_max=-1)


def test_series_tracks_comparator_output():
    n = 3 * 2**14
    w = synthesize_pole_voltage(INJ, SPEC, samples_per_period=n)
    v = analytic_pole_voltage(w.times, AnalyticVoltageParams(SPEC, INJ, n_max=200))
    rms = math.sqrt(np.mean((v - w.samples) ** 2))
    assert rms < 0.05


def test_series_error_shrinks_with_more_terms():
    n = 3 * 2**13
    w = synthesize_pole_voltage(INJ, SPEC, samples_per_period=n)

    def err(n_max):
        v = analytic_pole_voltage(w.times, AnalyticVoltageParams(SPEC, INJ, n_max=n_max))
        return math.sqrt(np.mean((v - w.samples) ** 2))

    assert err(200) < err(50) < err(10)


# -- direct-projection oracle ----------------------------------------------------


def test_oracle_unit_sine():
    spec = fourier_coefficients_numeric(sampled(np.sin), 20)
    assert spec.amplitudes[1] == pytest.approx(1.0, abs=1e-12)
    others = np.delete(spec.amplitudes, 1)
    assert np.all(others < 1e-10)


def test_oracle_square_wave():
    e = 1.0
    spec = fourier_coefficients_numeric(square_wave(2**16, e), 25)
    for n in range(1, 26):
        expected = 2 * e / (math.pi * n) if n % 2 else 0.0
        assert spec.amplitudes[n] == pytest.approx(expected, abs=1e-6)


def test_oracle_matches_fft_on_spwm():
    w = synthesize_pole_voltage(ModulatingWave("sinusoidal"), CarrierSpec.fixed(15), samples_per_period=3 * 2**12)
    oracle = fourier_coefficients_numeric(w, 200)
    fft = harmonic_spectrum(w, 200)
    np.testing.assert_allclose(fft.amplitudes, oracle.amplitudes, rtol=0, atol=1e-8)


def test_oracle_beyond_nyquist():
    w = sampled(np.sin, 64)
    with pytest.raises(DomainError):
        fourier_coefficients_numeric(w, 32)


def test_oracle_cosine_phase_convention():
    w = sampled(lambda x: 0.3 * np.cos(4 * x + 0.7), 256)
    spec = fourier_coefficients_numeric(w, 10)
    assert spec.amplitudes[4] == pytest.approx(0.3)
    assert spec.phases[4] == pytest.approx(0.7)


def test_parseval_on_band_limited_signal():
    w = sampled(lambda x: 0.2 + np.sin(x) + 0.3 * np.cos(7 * x + 0.4) - 0.05 * np.sin(40 * x), 512)
    spec = fourier_coefficients_numeric(w, 100)
    energy = spec.amplitudes[0] ** 2 + np.sum(spec.amplitudes[1:] ** 2) / 2
    assert energy == pytest.approx(np.mean(w.samples**2), rel=1e-6)


def test_series_is_periodic():
    p = AnalyticVoltageParams(SPEC, INJ, n_max=60)
    t = np.array([3.1e-3, 6.7e-3, 15.2e-3])
    np.testing.assert_allclose(analytic_pole_voltage(t + 0.02, p), analytic_pole_voltage(t, p), atol=1e-9)
