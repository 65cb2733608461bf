"""Closed-form Fourier-series evaluation of the pole voltage and a brute-force
Fourier-coefficient oracle for sampled waveforms."""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .errors import DomainError
from .waveform import (
    CarrierSpec,
    ModulatingWave,
    SampledWaveform,
    _frozen_clamp,
    _raw_phase,
    modulator_value,
)


@dataclass(frozen=True)
class AnalyticVoltageParams:
    spec: CarrierSpec
    mod: ModulatingWave
    dc_link: float = 1.0
    n_max: int = 200

    def __post_init__(self):
        if int(self.n_max) != self.n_max or self.n_max < 0:
            raise DomainError(f"n_max must be a non-negative integer, got {self.n_max}")


def commutation_angle_alpha(mod: ModulatingWave, phase):
    """Half-width of the high pulse in carrier-phase units: ``pi/2 * (1 + H)``.

    ``phase`` is the modulator phase (see :func:`pwm_lab.waveform.modulator_value`).
    """
    return 0.5 * math.pi * (1.0 + modulator_value(mod, phase))


def analytic_pole_voltage(t, p: AnalyticVoltageParams):
    """Pole voltage from the truncated Fourier series of the carrier-phase pulse train.

    Inside active windows the output is

        (E/2) H + (4/pi)(E/2) sum_{n=1..n_max} sin(n alpha) cos(n phi) / n

    where ``alpha`` is the commutation angle and ``phi`` the carrier phase
    measured from the carrier trough.  Frozen windows return ``+-E/2``.
    ``n_max = 0`` leaves only the modulator envelope.
    """
    t = np.asarray(t, dtype=float)
    angle = p.spec.omega_m * t + p.mod.phase_offset_rad
    base = replace(p.mod, phase_offset_rad=0.0)
    h = modulator_value(base, angle + math.pi / 2)
    alpha = 0.5 * math.pi * (1.0 + h)
    phi = _raw_phase(angle, p.spec)  # zero at the carrier trough
    half = 0.5 * p.dc_link
    v = half * np.asarray(h, dtype=float)
    for n in range(1, p.n_max + 1):
        v = v + (4 / math.pi) * half * np.sin(n * alpha) * np.cos(n * phi) / n
    clamp = _frozen_clamp(angle, p.spec)
    v = np.where(clamp != 0.0, half * clamp, v)
    return float(v) if v.ndim == 0 else v


@dataclass
class HarmonicSpectrum:
    """Peak amplitudes and cosine phases indexed by harmonic order (0 = DC).

    A signal is reconstructed as ``sum_n amplitudes[n] cos(n w t + phases[n])``.
    """

    fundamental_hz: float
    amplitudes: np.ndarray
    phases: np.ndarray

    def __post_init__(self):
        self.amplitudes = np.asarray(self.amplitudes, dtype=float)
        self.phases = np.asarray(self.phases, dtype=float)
        if self.amplitudes.shape != self.phases.shape:
            raise DomainError("amplitudes and phases must have the same length")
        if np.any(self.amplitudes < 0):
            raise DomainError("amplitudes must be non-negative")

    @property
    def max_order(self) -> int:
        return self.amplitudes.size - 1

    @property
    def fundamental(self) -> float:
        return float(self.amplitudes[1])


def nyquist_order(w: SampledWaveform) -> int:
    """Highest harmonic order strictly below the Nyquist frequency."""
    return w.samples_per_period // 2 - 1


def fourier_coefficients_numeric(w: SampledWaveform, max_order: int) -> HarmonicSpectrum:
    """Project the waveform onto cos/sin of each harmonic order by direct quadrature.

    The trapezoidal rule over whole periods of a periodic signal reduces to an
    equal-weight sum.  No FFT is involved; this is the reference against which
    :func:`pwm_lab.spectrum.harmonic_spectrum` is checked.
    """
    if max_order < 0 or max_order > nyquist_order(w):
        raise DomainError(
            f"max_order must lie in [0, {nyquist_order(w)}] for this sampling, got {max_order}"
        )
    x = w.samples
    n_samples = x.size
    # angle of the fundamental at each sample
    angle = 2 * math.pi * w.n_periods * np.arange(n_samples) / n_samples
    amps = np.empty(max_order + 1)
    phases = np.empty(max_order + 1)
    for n in range(max_order + 1):
        a = 2.0 / n_samples * np.dot(x, np.cos(n * angle))
        b = 2.0 / n_samples * np.dot(x, np.sin(n * angle))
        if n == 0:
            a, b = a / 2, 0.0
        amps[n] = math.hypot(a, b)
        phases[n] = math.atan2(-b, a)
    return HarmonicSpectrum(w.fundamental_hz, amps, phases)
