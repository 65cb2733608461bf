import math

import numpy as np

from pwm_lab import SampledWaveform


def edge_count(samples):
    """Number of level changes over one period, counted circularly."""
    s = np.asarray(samples)
    return int(np.count_nonzero(s != np.roll(s, 1)))


def sampled(fn, samples_per_period=4096, fundamental_hz=50.0):
    angle = 2 * math.pi * np.arange(samples_per_period) / samples_per_period
    return SampledWaveform.from_periodic(fn(angle), samples_per_period, fundamental_hz)


def square_wave(samples_per_period=4096, dc_link=1.0):
    """Ideal +-E/2 square wave in sine phase, sampled off the discontinuities."""
    angle = 2 * math.pi * (np.arange(samples_per_period) + 0.5) / samples_per_period
    values = np.where(angle < math.pi, 0.5 * dc_link, -0.5 * dc_link)
    return SampledWaveform.from_periodic(values, samples_per_period, 50.0)
