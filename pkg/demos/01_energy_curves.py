"""Tour of the transmission-energy curve and its two regimes.

The cost of pushing h bits through a unit-gain channel in x time units is
f(h, x) = x * (2**(h/x) - 1). Stretching the transmission always saves
energy, but with diminishing returns: the curve decays toward the asymptote
h*ln2, which is also the low-rate approximation used by the fast schedulers.

Run:  python demos/01_energy_curves.py
"""

import numpy as np

from clusterlife import LN2, min_time_for_energy, srra_error, tx_energy

H = 4.0  # bits per slot

print(f"moving {H} bits, unit path loss")
print(f"{'time x':>8} {'energy f(h,x)':>14} {'gap to h*ln2':>13}")
for x in (0.25, 0.5, 1.0, 2.0, 4.0, 16.0, 256.0):
    print(f"{x:8.2f} {tx_energy(H, x):14.6f} {srra_error(H, x):13.2e}")
print(f"{'inf':>8} {H * LN2:14.6f} {'0':>13}   <- low-rate limit")

print()
print("the curve is invertible: every budget above h*ln2 has a unique time")
for budget in (50.0, 5.0, 3.0, 2.7726 + 1e-3):
    t = min_time_for_energy(H, budget)
    print(f"  budget {budget:10.4f} -> time {t:12.6f} (check f = {tx_energy(H, t):.6f})")

print()
print("halving the time budget more than doubles the energy (convexity):")
x = np.array([2.0, 1.0, 0.5, 0.25])
e = np.array([tx_energy(H, xi) for xi in x])
for i in range(len(x) - 1):
    print(f"  x: {x[i]:5.2f} -> {x[i + 1]:5.2f}   energy ratio {e[i + 1] / e[i]:.3f}")
