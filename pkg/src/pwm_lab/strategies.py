"""Named modulation strategies: SPWM, harmonic-injection SPWM and the truncated
cos^2 frequency-modulated carrier (FMTC3)."""

from __future__ import annotations

from dataclasses import dataclass

from .waveform import (
    DEFAULT_FUNDAMENTAL_HZ,
    CarrierSpec,
    ModulatingWave,
    ModulatorKind,
    mean_modulation_order,
)


@dataclass(frozen=True)
class SPWM:
    m: int = 15

    name = "spwm"
    kind = ModulatorKind.SINUSOIDAL

    @property
    def label(self) -> str:
        return f"SPWM(M={self.m})"

    def carrier_spec(self, fundamental_hz: float = DEFAULT_FUNDAMENTAL_HZ) -> CarrierSpec:
        return CarrierSpec.fixed(self.m, fundamental_hz)

    def modulating_wave(self, amplitude_index: float = 1.0) -> ModulatingWave:
        return ModulatingWave(self.kind, amplitude_index)


@dataclass(frozen=True)
class HISPWM(SPWM):
    name = "hispwm"
    kind = ModulatorKind.HARMONIC_INJECTION

    @property
    def label(self) -> str:
        return f"HISPWM(M={self.m})"


@dataclass(frozen=True)
class FMTC3:
    k: float
    m_bar: float = 15
    a_m: float | None = None

    name = "fmtc3"

    @property
    def label(self) -> str:
        return f"FMTC3(K={self.k:g},Mbar={self.m_bar:g})"

    def carrier_spec(self, fundamental_hz: float = DEFAULT_FUNDAMENTAL_HZ) -> CarrierSpec:
        return CarrierSpec.truncated(self.k, self.m_bar, self.a_m, fundamental_hz)

    def modulating_wave(self, amplitude_index: float = 1.0) -> ModulatingWave:
        return ModulatingWave(ModulatorKind.HARMONIC_INJECTION, amplitude_index)


Strategy = SPWM | FMTC3


def strategy_order(strategy: Strategy) -> float:
    """Pulses per fundamental period for ``strategy``."""
    return mean_modulation_order(strategy.carrier_spec())
