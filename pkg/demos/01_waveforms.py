# # Waveforms of the truncated cos^2 carrier
#
# A triangular carrier whose frequency follows A_M * max(0, cos^2 x - K)
# switches fast around the modulator zero crossings and stops entirely near
# the modulator peaks.  This script synthesises one period at K = 0.5 and
# M_bar = 15 and walks through what comes out.

import math

import numpy as np

from pwm_lab import CarrierSpec, ModulatingWave, switching_windows, synthesize_three_phase

K, M_BAR = 0.5, 15
spec = CarrierSpec.truncated(K, M_BAR)
print(f"K = {K}, M_bar = {M_BAR} -> A_M = {spec.law.a_m:.4f} (30*pi = {30 * math.pi:.4f})")

# The carrier only runs inside two windows per period.  Time is counted from
# the positive peak of phase A's modulator.

w = switching_windows(K, spec.omega_m)
print("active windows (ms):", f"({w.t1 * 1e3:.2f}, {w.t2 * 1e3:.2f})", f"({w.t3 * 1e3:.2f}, {w.t4 * 1e3:.2f})")

waves = synthesize_three_phase(ModulatingWave(), spec, samples_per_period=3 * 2**12)
v_a, v_ab = waves.a.samples, waves.ab.samples
t_ms = waves.a.times * 1e3

# Outside the windows the leg is parked on one rail.

for lo, hi in [(0, w.t1), (w.t2, w.t3), (w.t4, 0.02)]:
    inside = (t_ms > lo * 1e3) & (t_ms < hi * 1e3)
    print(f"  {lo * 1e3:5.1f}-{hi * 1e3:5.1f} ms: V_A levels {sorted(set(v_a[inside].tolist()))}")

# Counting the level changes gives two edges per carrier period: 30 in all.

edges = np.count_nonzero(v_a != np.roll(v_a, 1))
print("edges per period:", edges)

# The line-to-line voltage has three levels.

print("V_AB levels:", sorted(set(v_ab.tolist())))

# A coarse text plot of V_A and the carrier over the first active window.

step = len(t_ms) // 120
for i in range(0, len(t_ms) // 2, step):
    if w.t1 * 1e3 - 0.3 <= t_ms[i] <= w.t2 * 1e3 + 0.3:
        col = int(round((waves.carrier[i] + 1) * 20))
        row = [" "] * 41
        row[col] = "*"
        print(f"{t_ms[i]:6.2f} ms {'+' if v_a[i] > 0 else '-'} |{''.join(row)}|")
