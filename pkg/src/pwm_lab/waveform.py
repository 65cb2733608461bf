"""Modulating waves, the frequency-modulated triangular carrier and comparator synthesis.

Conventions used throughout the package
---------------------------------------
* The *modulator phase* ``x`` is measured from the rising zero crossing of the
  modulating wave, so the harmonic-injection modulator reads
  ``1.15 sin x + 0.27 sin 3x - 0.029 sin 9x``.
* *Time* is measured from the positive peak of phase A's modulator, i.e.
  ``x = omega_m * t + pi/2``.  With this origin the active (switching) windows
  are ``(t1, t2)`` and ``(t3, t4)`` with ``t1 = (pi/2 - acos(sqrt K)) / omega_m``
  and the output is clamped to ``+E/2`` for ``t <= t1`` and ``t >= t4`` and to
  ``-E/2`` on ``[t2, t3]``.
* The carrier frequency law is ``A_M * omega_m * max(0, cos^2 x - K)``: its
  maxima sit on the modulator zero crossings, where the modulator slope is
  largest.
* Every phase leg owns a carrier synchronised with its own modulator.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Union

import numpy as np

from .errors import ConfigurationError, DomainError

DEFAULT_FUNDAMENTAL_HZ = 50.0
DEFAULT_SAMPLES_PER_PERIOD = 3 * 2**14
# relative tolerance when mean orders must agree or be integers
ORDER_RTOL = 1e-6
# comparator differences below this are treated as ties
TIE_TOL = 1e-12

# (harmonic order, coefficient) of the injected modulator in sine form
INJECTION_TERMS = ((1, 1.15), (3, 0.27), (9, -0.029))


class ModulatorKind(str, Enum):
    SINUSOIDAL = "sinusoidal"
    HARMONIC_INJECTION = "harmonic-injection"


@dataclass(frozen=True)
class ModulatingWave:
    """Reference wave compared against the carrier.

    ``phase_offset_rad`` is 0, -2pi/3 and +2pi/3 for phases A, B and C.
    """

    kind: ModulatorKind = ModulatorKind.HARMONIC_INJECTION
    amplitude_index: float = 1.0
    phase_offset_rad: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "kind", ModulatorKind(self.kind))
        if not 0.0 < self.amplitude_index <= 1.2:
            raise DomainError(
                f"amplitude_index must lie in (0, 1.2], got {self.amplitude_index}"
            )

    def shifted(self, offset_rad: float) -> "ModulatingWave":
        return replace(self, phase_offset_rad=self.phase_offset_rad + offset_rad)


def modulator_value(wave: ModulatingWave, phase):
    """Evaluate the modulating wave at modulator phase ``phase`` (radians).

    Works element-wise on arrays.  The wave's own ``phase_offset_rad`` is added
    to ``phase`` before evaluation.
    """
    x = np.asarray(phase, dtype=float) + wave.phase_offset_rad
    if wave.kind is ModulatorKind.SINUSOIDAL:
        h = np.sin(x)
    else:
        h = sum(c * np.sin(n * x) for n, c in INJECTION_TERMS)
    h = wave.amplitude_index * h
    return float(h) if h.ndim == 0 else h


@dataclass(frozen=True)
class FixedFrequency:
    """Classic constant-frequency carrier with ``m`` periods per fundamental period."""

    m: int

    def __post_init__(self):
        if int(self.m) != self.m or self.m < 1:
            raise DomainError(f"carrier order M must be a positive integer, got {self.m}")
        object.__setattr__(self, "m", int(self.m))


@dataclass(frozen=True)
class TruncatedCosSquared:
    """Carrier whose instantaneous order is ``a_m * max(0, cos^2 x - k)``."""

    a_m: float
    k: float

    def __post_init__(self):
        _check_k(self.k)
        if not self.a_m > 0:
            raise DomainError(f"A_M must be positive, got {self.a_m}")


CarrierLaw = Union[FixedFrequency, TruncatedCosSquared]


@dataclass(frozen=True)
class CarrierSpec:
    law: CarrierLaw
    omega_m: float = 2 * math.pi * DEFAULT_FUNDAMENTAL_HZ

    def __post_init__(self):
        if not self.omega_m > 0:
            raise DomainError(f"omega_m must be positive, got {self.omega_m}")

    @classmethod
    def fixed(cls, m: int, fundamental_hz: float = DEFAULT_FUNDAMENTAL_HZ) -> "CarrierSpec":
        return cls(FixedFrequency(m), 2 * math.pi * fundamental_hz)

    @classmethod
    def truncated(
        cls,
        k: float,
        m_bar: float | None = None,
        a_m: float | None = None,
        fundamental_hz: float = DEFAULT_FUNDAMENTAL_HZ,
    ) -> "CarrierSpec":
        """Build a truncated cos^2 carrier from ``k`` and one of ``m_bar`` / ``a_m``.

        If both are given the mean order implied by ``a_m`` must match ``m_bar``
        to a relative 1e-6.
        """
        omega_m = 2 * math.pi * fundamental_hz
        if a_m is None:
            if m_bar is None:
                raise ConfigurationError("one of m_bar or a_m is required")
            a_m = solve_a_m(k, m_bar, omega_m)
        elif m_bar is not None:
            implied = mean_order_from(a_m, k)
            if not orders_agree(implied, m_bar):
                raise ConfigurationError(
                    f"A_M={a_m} and m_bar={m_bar} are inconsistent at K={k} "
                    f"(A_M implies m_bar={implied:.9g})"
                )
        return cls(TruncatedCosSquared(a_m, k), omega_m)

    @property
    def fundamental_hz(self) -> float:
        return self.omega_m / (2 * math.pi)

    @property
    def period(self) -> float:
        return 2 * math.pi / self.omega_m


def orders_agree(a: float, b: float) -> bool:
    return abs(a - b) <= ORDER_RTOL * abs(b)


def _check_k(k: float) -> None:
    if not 0.0 <= k < 1.0:
        raise DomainError(f"K must lie in [0, 1), got {k}")


def _window_integral(k: float) -> float:
    # integral of (cos^2 u - k) over one active window |u| < acos(sqrt k)
    a = math.acos(math.sqrt(k))
    return math.sin(2 * a) / 2 + (1 - 2 * k) * a


def solve_a_m(k: float, m_bar: float, omega_m: float = 2 * math.pi * DEFAULT_FUNDAMENTAL_HZ) -> float:
    """Return the ``A_M`` that yields mean modulation order ``m_bar`` at truncation ``k``.

    Closed form; ``omega_m`` does not enter the result and is accepted only so
    call sites can pass a full parameter set.
    """
    _check_k(k)
    if not m_bar > 0:
        raise DomainError(f"m_bar must be positive, got {m_bar}")
    return math.pi * m_bar / _window_integral(k)


def mean_order_from(a_m: float, k: float) -> float:
    _check_k(k)
    return a_m / math.pi * _window_integral(k)


def mean_modulation_order(spec: CarrierSpec) -> float:
    """Average carrier order over a fundamental period (pulses per period)."""
    law = spec.law
    if isinstance(law, FixedFrequency):
        return float(law.m)
    return mean_order_from(law.a_m, law.k)


@dataclass(frozen=True)
class SwitchingWindows:
    """Boundaries of the active windows ``(t1, t2)`` and ``(t3, t4)`` in seconds."""

    t1: float
    t2: float
    t3: float
    t4: float
    active_halfwidth_rad: float
    frozen_halfwidth_rad: float


def switching_windows(k: float, omega_m: float) -> SwitchingWindows:
    _check_k(k)
    if not omega_m > 0:
        raise DomainError(f"omega_m must be positive, got {omega_m}")
    active = math.acos(math.sqrt(k))
    frozen = math.asin(math.sqrt(k))
    half_pi = math.pi / 2
    return SwitchingWindows(
        t1=(half_pi - active) / omega_m,
        t2=(half_pi + active) / omega_m,
        t3=(3 * half_pi - active) / omega_m,
        t4=(3 * half_pi + active) / omega_m,
        active_halfwidth_rad=active,
        frozen_halfwidth_rad=frozen,
    )


def _raw_phase(angle, spec: CarrierSpec):
    """Carrier phase accrued since time angle 0 (modulator peak), any real ``angle``."""
    angle = np.asarray(angle, dtype=float)
    law = spec.law
    if isinstance(law, FixedFrequency):
        return law.m * angle

    a_m, k = law.a_m, law.k
    m_bar = mean_order_from(a_m, k)
    half_pi = math.pi / 2
    active = math.acos(math.sqrt(k))
    s1, e1 = half_pi - active, half_pi + active
    s2, e2 = 3 * half_pi - active, 3 * half_pi + active

    cycles = np.floor(angle / (2 * math.pi))
    r = angle - 2 * math.pi * cycles

    def accrued(r, start):
        # closed-form integral of a_m (sin^2 - k) from the window start to r
        return a_m * ((0.5 - k) * (r - start) - (np.sin(2 * r) - math.sin(2 * start)) / 4)

    per_window = math.pi * m_bar
    inside = np.select(
        [r <= s1, r < e1, r <= s2, r < e2],
        [0.0, accrued(r, s1), per_window, per_window + accrued(r, s2)],
        default=2 * per_window,
    )
    return 2 * per_window * cycles + inside


def carrier_phase(t, spec: CarrierSpec, phase_offset_rad: float = 0.0):
    """Instantaneous carrier phase at time ``t`` (seconds).

    The phase is continuous and non-decreasing, constant across frozen windows,
    advances by ``2*pi*M_bar`` per fundamental period and is anchored so that
    ``theta(0) = -pi/2`` (carrier at its trough on the modulator peak).
    ``phase_offset_rad`` shifts the carrier together with a phase-shifted
    modulator.
    """
    angle = spec.omega_m * np.asarray(t, dtype=float) + phase_offset_rad
    theta = _raw_phase(angle, spec) - math.pi / 2
    return float(theta) if theta.ndim == 0 else theta


def carrier_value(theta):
    """Unit triangle ``(2/pi) asin(sin theta)``: 0 rising at 0, +1 at pi/2."""
    s = np.clip(np.sin(np.asarray(theta, dtype=float)), -1.0, 1.0)
    tri = (2 / math.pi) * np.arcsin(s)
    return float(tri) if tri.ndim == 0 else tri


def _frozen_clamp(angle, spec: CarrierSpec):
    """Clamp sign in frozen windows (+1 / -1) and 0 wherever the carrier runs."""
    angle = np.asarray(angle, dtype=float)
    law = spec.law
    if isinstance(law, FixedFrequency) or law.k == 0.0:
        return np.zeros(angle.shape)
    active = math.acos(math.sqrt(law.k))
    r = np.mod(angle, 2 * math.pi)
    half_pi = math.pi / 2
    positive = (r <= half_pi - active) | (r >= 3 * half_pi + active)
    negative = (r >= half_pi + active) & (r <= 3 * half_pi - active)
    return positive.astype(float) - negative.astype(float)


@dataclass
class SampledWaveform:
    """Uniformly sampled periodic signal covering ``n_periods`` whole periods."""

    samples: np.ndarray
    sample_rate: float
    fundamental_hz: float
    n_periods: int = 1

    def __post_init__(self):
        self.samples = np.asarray(self.samples, dtype=float)
        if self.samples.ndim != 1:
            raise ConfigurationError("samples must be one-dimensional")
        if not (self.sample_rate > 0 and self.fundamental_hz > 0):
            raise ConfigurationError("sample_rate and fundamental_hz must be positive")
        if int(self.n_periods) != self.n_periods or self.n_periods < 1:
            raise ConfigurationError(f"n_periods must be a positive integer, got {self.n_periods}")
        self.n_periods = int(self.n_periods)
        ratio = self.sample_rate / self.fundamental_hz
        spp = round(ratio)
        if abs(ratio - spp) > 1e-9 * ratio or spp % 2 or spp < 2:
            raise ConfigurationError(
                f"sample_rate/fundamental_hz must be an even integer, got {ratio!r}"
            )
        if self.samples.size != self.n_periods * spp:
            raise ConfigurationError(
                f"expected {self.n_periods * spp} samples "
                f"({self.n_periods} periods x {spp}), got {self.samples.size}"
            )

    @classmethod
    def from_periodic(cls, samples, samples_per_period: int, fundamental_hz: float = DEFAULT_FUNDAMENTAL_HZ):
        samples = np.asarray(samples, dtype=float)
        return cls(
            samples,
            samples_per_period * fundamental_hz,
            fundamental_hz,
            samples.size // samples_per_period,
        )

    @property
    def samples_per_period(self) -> int:
        return round(self.sample_rate / self.fundamental_hz)

    @property
    def times(self) -> np.ndarray:
        return np.arange(self.samples.size) / self.sample_rate

    def __sub__(self, other: "SampledWaveform") -> "SampledWaveform":
        return replace(self, samples=self.samples - other.samples)


def _check_sampling(samples_per_period: int, n_periods: int) -> None:
    if int(samples_per_period) != samples_per_period or samples_per_period < 2 or samples_per_period % 2:
        raise ConfigurationError(
            f"samples_per_period must be an even integer >= 2, got {samples_per_period}"
        )
    if int(n_periods) != n_periods or n_periods < 1:
        raise ConfigurationError(f"n_periods must be a positive integer, got {n_periods}")


def _check_synchronous(spec: CarrierSpec) -> float:
    m_bar = mean_modulation_order(spec)
    if not orders_agree(m_bar, round(m_bar)):
        raise ConfigurationError(
            f"mean modulation order must be an integer for synchronous synthesis, got {m_bar:.9g}"
        )
    return m_bar


def _comparator(modulator: np.ndarray, carrier: np.ndarray) -> np.ndarray:
    """Sign of ``modulator - carrier``; ties keep the previous state (circularly)."""
    diff = modulator - carrier
    state = np.where(diff > TIE_TOL, 1.0, np.where(diff < -TIE_TOL, -1.0, 0.0))
    nonzero = np.flatnonzero(state)
    if nonzero.size == 0:
        return np.ones_like(state)
    if state[0] == 0.0:
        state[0] = state[nonzero[-1]]
    idx = np.where(state != 0.0, np.arange(state.size), 0)
    np.maximum.accumulate(idx, out=idx)
    return state[idx]


def _synthesize(
    mod: ModulatingWave,
    spec: CarrierSpec,
    samples_per_period: int,
    n_periods: int,
):
    """Return (sign pattern, carrier, modulator) sampled on the synchronous grid."""
    _check_sampling(samples_per_period, n_periods)
    _check_synchronous(spec)
    # time angle from phase A's modulator peak, exact multiples of 2pi/N
    angle = 2 * math.pi * np.arange(samples_per_period * n_periods) / samples_per_period
    local = angle + mod.phase_offset_rad
    modulator = modulator_value(replace(mod, phase_offset_rad=0.0), local + math.pi / 2)
    carrier = carrier_value(_raw_phase(local, spec) - math.pi / 2)
    state = _comparator(modulator, carrier)
    clamp = _frozen_clamp(local, spec)
    state = np.where(clamp != 0.0, clamp, state)
    return state, carrier, modulator


def synthesize_pole_voltage(
    mod: ModulatingWave,
    spec: CarrierSpec,
    dc_link: float = 1.0,
    samples_per_period: int = DEFAULT_SAMPLES_PER_PERIOD,
    n_periods: int = 1,
) -> SampledWaveform:
    """Pole (line-to-neutral) voltage of one inverter leg, levels ``+-dc_link/2``."""
    state, _, _ = _synthesize(mod, spec, samples_per_period, n_periods)
    return SampledWaveform(
        0.5 * dc_link * state,
        samples_per_period * spec.fundamental_hz,
        spec.fundamental_hz,
        n_periods,
    )


@dataclass
class ThreePhaseWaveforms:
    pole: tuple[SampledWaveform, SampledWaveform, SampledWaveform]
    line: tuple[SampledWaveform, SampledWaveform, SampledWaveform]
    carrier: np.ndarray = field(repr=False)
    modulator: np.ndarray = field(repr=False)

    @property
    def a(self):
        return self.pole[0]

    @property
    def ab(self):
        return self.line[0]


PHASE_OFFSETS = (0.0, -2 * math.pi / 3, 2 * math.pi / 3)


def is_odd_multiple_of_three(m_bar: float) -> bool:
    n = round(m_bar)
    return orders_agree(m_bar, n) and n % 3 == 0 and n % 2 == 1


def synthesize_three_phase(
    mod: ModulatingWave,
    spec: CarrierSpec,
    dc_link: float = 1.0,
    samples_per_period: int = DEFAULT_SAMPLES_PER_PERIOD,
    n_periods: int = 1,
) -> ThreePhaseWaveforms:
    """Three pole voltages (offsets 0, -2pi/3, +2pi/3) and the line-to-line differences.

    Warns when the mean order is not an odd multiple of 3, since even and
    triplen harmonics then survive in the line voltages.  Exact triplen
    cancellation on the sample grid also needs ``samples_per_period``
    divisible by 3.
    """
    m_bar = _check_synchronous(spec)
    if not is_odd_multiple_of_three(m_bar):
        warnings.warn(
            f"mean modulation order {m_bar:g} is not an odd multiple of 3; "
            "even and triplen harmonics will not cancel",
            stacklevel=2,
        )
    poles = []
    carrier = modulator = None
    for offset in PHASE_OFFSETS:
        state, c, h = _synthesize(mod.shifted(offset), spec, samples_per_period, n_periods)
        if carrier is None:
            carrier, modulator = c, h
        poles.append(
            SampledWaveform(
                0.5 * dc_link * state,
                samples_per_period * spec.fundamental_hz,
                spec.fundamental_hz,
                n_periods,
            )
        )
    a, b, c = poles
    return ThreePhaseWaveforms((a, b, c), (a - b, b - c, c - a), carrier, modulator)
