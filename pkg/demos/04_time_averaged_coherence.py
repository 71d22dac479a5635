"""Running time average of site-basis coherence in a dimer.

The time-local l1 coherence of a dimer is periodic, so its running average
settles to the mean over one transfer period. That mean has a closed form
in theta; it peaks for an imperfect transfer, not at resonance.
"""
import math

import numpy as np

from cohtransfer.cli import asymptote_table
from cohtransfer.oracles import dimer_tac_asymptote_l1, tac_asymptote_l1_from_fmax

header, rows = asymptote_table(theta=math.pi / 2, omega=1.0, periods=100)
for n in (1, 2, 5, 10, 100):
    row = rows[n - 1]
    print(f"after {n:3d} periods: TAC_l1 = {row[2]:.6f}, TAC_reoc = {row[3]:.6f}")
print(f"2/pi = {2 / math.pi:.6f}")

fmax = np.linspace(0.01, 0.999, 2000)
lim = np.array([tac_asymptote_l1_from_fmax(f) for f in fmax])
k = int(np.argmax(lim))
print(f"\nlong-time TAC_l1 is largest, {lim[k]:.5f} = (2/pi) * {lim[k] * math.pi / 2:.4f}, at F_max = {fmax[k]:.3f}")
print(f"at F_max = 1 it is {tac_asymptote_l1_from_fmax(1.0):.5f}")

for f in (0.3, 0.6, 0.83, 0.95, 1.0):
    print(f"F_max = {f:4.2f}: limit {tac_asymptote_l1_from_fmax(f):.4f}")
