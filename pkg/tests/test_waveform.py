import math
import warnings

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.integrate import quad

from helpers import edge_count
from pwm_lab import (
    CarrierSpec,
    ConfigurationError,
    DomainError,
    ModulatingWave,
    ModulatorKind,
    SampledWaveform,
    carrier_phase,
    carrier_value,
    mean_modulation_order,
    modulator_value,
    solve_a_m,
    switching_windows,
    synthesize_pole_voltage,
    synthesize_three_phase,
)
from pwm_lab.waveform import mean_order_from

OMEGA = 100 * math.pi
INJ = ModulatingWave(ModulatorKind.HARMONIC_INJECTION)
SINE = ModulatingWave(ModulatorKind.SINUSOIDAL)


# -- modulator ---------------------------------------------------------------


def test_injection_modulator_is_zero_at_rising_crossing():
    assert modulator_value(INJ, 0.0) == pytest.approx(0.0, abs=1e-15)


def test_injection_modulator_peak_value():
    assert modulator_value(INJ, math.pi / 2) == pytest.approx(1.15 - 0.27 - 0.029, abs=1e-12)


def test_sinusoidal_modulator_peak():
    assert modulator_value(SINE, math.pi / 2) == pytest.approx(1.0)


@pytest.mark.parametrize("x", [0.3, 1.1])
def test_injection_modulator_half_wave_symmetry(x):
    assert modulator_value(INJ, math.pi + x) == pytest.approx(-modulator_value(INJ, x), abs=1e-14)


@given(st.floats(-20, 20), st.floats(0.05, 1.2))
def test_modulator_half_wave_symmetry_property(x, m):
    wave = ModulatingWave(ModulatorKind.HARMONIC_INJECTION, m)
    assert modulator_value(wave, x + math.pi) == pytest.approx(-modulator_value(wave, x), abs=1e-12)


@pytest.mark.parametrize("m", [0.0, -0.1, 1.21])
def test_amplitude_index_out_of_range(m):
    with pytest.raises(DomainError):
        ModulatingWave(amplitude_index=m)


def test_phase_offset_shifts_the_wave():
    shifted = INJ.shifted(-2 * math.pi / 3)
    assert modulator_value(shifted, 1.0) == pytest.approx(modulator_value(INJ, 1.0 - 2 * math.pi / 3))


# -- A_M solver and mean order -------------------------------------------------


@pytest.mark.parametrize(
    "k, expected, tol",
    [(0.5, 30 * math.pi, 1e-12), (0.2, 44.277, 1e-3), (0.8, 386.859, 1e-3), (0.0, 30.0, 1e-12)],
)
def test_solve_a_m(k, expected, tol):
    assert solve_a_m(k, 15) == pytest.approx(expected, abs=tol)


@pytest.mark.parametrize("k", [-0.01, 1.0, 1.5])
def test_solve_a_m_rejects_k(k):
    with pytest.raises(DomainError):
        solve_a_m(k, 15)


@pytest.mark.parametrize(
    "a_m, k, expected, tol",
    [(30 * math.pi, 0.5, 15.0, 1e-12), (55.134, 0.3, 15.0, 1e-3), (30.0, 0.0, 15.0, 1e-12)],
)
def test_mean_order(a_m, k, expected, tol):
    assert mean_modulation_order(CarrierSpec.truncated(k, a_m=a_m)) == pytest.approx(expected, abs=tol)


def test_mean_order_of_fixed_carrier_is_exact():
    assert mean_modulation_order(CarrierSpec.fixed(15)) == 15.0


@given(st.floats(0.0, 0.9), st.floats(1.0, 60.0))
def test_solver_inverts_mean_order(k, m_bar):
    assert mean_order_from(solve_a_m(k, m_bar), k) == pytest.approx(m_bar, rel=1e-12)


def test_mean_order_matches_quadrature_of_the_law():
    a_m, k = solve_a_m(0.35, 15), 0.35
    integral, _ = quad(lambda x: a_m * max(0.0, math.cos(x) ** 2 - k), 0, 2 * math.pi, limit=200,
                       points=[math.acos(math.sqrt(k)), math.pi - math.acos(math.sqrt(k)),
                               math.pi + math.acos(math.sqrt(k)), 2 * math.pi - math.acos(math.sqrt(k))])
    assert integral / (2 * math.pi) == pytest.approx(15.0, rel=1e-10)


def test_inconsistent_a_m_and_m_bar():
    with pytest.raises(ConfigurationError, match="80"):
        CarrierSpec.truncated(0.5, m_bar=15, a_m=80)


def test_consistent_a_m_and_m_bar_accepted():
    spec = CarrierSpec.truncated(0.5, m_bar=15, a_m=30 * math.pi)
    assert spec.law.a_m == 30 * math.pi


# -- switching windows -------------------------------------------------------


def test_windows_at_half_truncation():
    w = switching_windows(0.5, OMEGA)
    assert [w.t1, w.t2, w.t3, w.t4] == pytest.approx([2.5e-3, 7.5e-3, 12.5e-3, 17.5e-3], abs=1e-12)


def test_windows_without_truncation_fill_the_period():
    # the frozen windows shrink to the instants 0, T/2 and T
    w = switching_windows(0.0, OMEGA)
    assert [w.t1, w.t2, w.t3, w.t4] == pytest.approx([0.0, 10e-3, 10e-3, 20e-3], abs=1e-12)


def test_active_half_width_at_k08():
    w = switching_windows(0.8, OMEGA)
    assert w.active_halfwidth_rad / OMEGA * 1e3 == pytest.approx(1.476, abs=1e-3)


# -- carrier -------------------------------------------------------------------


@pytest.mark.parametrize("theta, expected", [(0.0, 0.0), (math.pi / 2, 1.0), (3 * math.pi / 2, -1.0)])
def test_carrier_value(theta, expected):
    assert carrier_value(theta) == pytest.approx(expected, abs=1e-15)


def test_phase_accrual_over_one_period():
    spec = CarrierSpec.truncated(0.5, a_m=30 * math.pi)
    assert carrier_phase(0.02, spec) - carrier_phase(0.0, spec) == pytest.approx(2 * math.pi * 15, rel=1e-12)


def test_phase_accrual_against_quadrature():
    k = 0.3
    spec = CarrierSpec.truncated(k, 15)
    a_m = spec.law.a_m

    def rate(t):
        x = OMEGA * t + math.pi / 2
        return a_m * OMEGA * max(0.0, math.cos(x) ** 2 - k)

    for t_end in (0.003, 0.0071, 0.0125, 0.019):
        expected, _ = quad(rate, 0.0, t_end, limit=200)
        got = carrier_phase(t_end, spec) - carrier_phase(0.0, spec)
        assert got == pytest.approx(expected, rel=1e-9, abs=1e-9)


def test_phase_frozen_before_first_window():
    spec = CarrierSpec.truncated(0.5, a_m=30 * math.pi)
    t1 = switching_windows(0.5, OMEGA).t1
    assert carrier_phase(t1, spec) == carrier_phase(0.0, spec)


@given(st.floats(0.0, 0.85), st.floats(0.0, 0.04), st.floats(0.0, 0.04))
@settings(max_examples=60)
def test_phase_non_decreasing(k, t_a, t_b):
    spec = CarrierSpec.truncated(k, 15)
    lo, hi = sorted((t_a, t_b))
    assert carrier_phase(hi, spec) >= carrier_phase(lo, spec) - 1e-9


# -- synthesis -----------------------------------------------------------------


def _pole(k, n=3 * 2**12, dc=1.0):
    return synthesize_pole_voltage(INJ, CarrierSpec.truncated(k, 15), dc, samples_per_period=n)


def test_negative_clamp_window():
    w = _pole(0.5)
    t = w.times
    inside = (t > 7.5e-3) & (t < 12.5e-3)
    assert np.all(w.samples[inside] == -0.5)


def test_positive_clamp_windows():
    w = _pole(0.5)
    t = w.times
    inside = (t < 2.5e-3) | (t > 17.5e-3)
    assert np.all(w.samples[inside] == 0.5)


def test_thirty_edges_per_period():
    assert edge_count(_pole(0.5).samples) == 30


def test_no_plateau_without_truncation():
    w = _pole(0.0)
    t = w.times
    assert edge_count(w.samples) == 30
    # switching happens right up to the modulator peak instants
    changes = t[np.flatnonzero(w.samples != np.roll(w.samples, 1))]
    assert changes.min() < 2.5e-3


@pytest.mark.parametrize("dc", [1.0, 600.0])
def test_output_levels(dc):
    assert set(np.unique(_pole(0.4, dc=dc).samples)) == {-dc / 2, dc / 2}


def test_non_integer_mean_order_rejected():
    spec = CarrierSpec.truncated(0.5, a_m=90.0)
    with pytest.raises(ConfigurationError):
        synthesize_pole_voltage(INJ, spec)


@pytest.mark.parametrize("n", [0, 101, 2.5])
def test_bad_sample_count_rejected(n):
    with pytest.raises(ConfigurationError):
        synthesize_pole_voltage(INJ, CarrierSpec.fixed(15), samples_per_period=n)


def test_sampled_waveform_length_must_cover_whole_periods():
    with pytest.raises(ConfigurationError):
        SampledWaveform(np.zeros(99), 100 * 50.0, 50.0, 1)


def test_multi_period_synthesis_repeats():
    spec = CarrierSpec.truncated(0.3, 15)
    two = synthesize_pole_voltage(INJ, spec, samples_per_period=1536, n_periods=2)
    one = synthesize_pole_voltage(INJ, spec, samples_per_period=1536)
    np.testing.assert_array_equal(two.samples[:1536], one.samples)
    np.testing.assert_array_equal(two.samples[1536:], one.samples)


def test_three_phase_legs_are_shifted_copies():
    waves = synthesize_three_phase(INJ, CarrierSpec.truncated(0.5, 15), samples_per_period=3 * 2**12)
    a, b, c = (w.samples for w in waves.pole)
    shift = 3 * 2**12 // 3
    np.testing.assert_array_equal(b, np.roll(a, shift))
    np.testing.assert_array_equal(c, np.roll(a, -shift))
    np.testing.assert_array_equal(waves.ab.samples, a - b)


def test_three_phase_warns_when_triplens_cannot_cancel():
    with pytest.warns(UserWarning, match="odd multiple of 3"):
        synthesize_three_phase(SINE, CarrierSpec.fixed(16), samples_per_period=3 * 2**10)


def test_three_phase_silent_for_m15():
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        synthesize_three_phase(SINE, CarrierSpec.fixed(15), samples_per_period=3 * 2**10)


@given(st.sampled_from([0.0, 0.1, 0.25, 0.4, 0.55, 0.7, 0.85]), st.sampled_from([9, 15, 21]))
@settings(max_examples=25, deadline=None)
def test_half_wave_symmetry_of_pole_voltage(k, m_bar):
    w = synthesize_pole_voltage(INJ, CarrierSpec.truncated(k, m_bar), samples_per_period=3 * 2**11)
    half = w.samples.size // 2
    np.testing.assert_array_equal(w.samples[half:], -w.samples[:half])


def test_phase_accrual_quadrature_random_pairs():
    rng = np.random.default_rng(7)
    for k, m_bar in zip(rng.uniform(0.0, 0.85, 10), rng.integers(3, 40, 10)):
        spec = CarrierSpec.truncated(float(k), int(m_bar))
        a_m = spec.law.a_m
        edge = math.acos(math.sqrt(k))
        breaks = [edge, math.pi - edge, math.pi + edge, 2 * math.pi - edge]
        integral, _ = quad(lambda x: a_m * OMEGA * max(0.0, math.cos(x) ** 2 - k), 0, 2 * math.pi,
                           points=breaks, limit=200)
        assert integral == pytest.approx(OMEGA * 2 * math.pi * m_bar, rel=1e-6)
        accrued = carrier_phase(0.02, spec) - carrier_phase(0.0, spec)
        assert accrued == pytest.approx(2 * math.pi * m_bar, rel=1e-6)


@pytest.mark.parametrize("k", [0.0, 0.3, 0.5, 0.8])
def test_pole_voltage_has_no_dc(k):
    assert abs(np.mean(_pole(k).samples)) < 1e-6
