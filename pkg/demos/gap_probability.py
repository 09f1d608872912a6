"""
## Gap probability of the sine kernel

Delta(s) is the probability that an interval of length 2s holds no
eigenvalue of a large random Hermitian matrix, at density 1/pi. We compute
ln Delta(s) by Nystrom discretization and watch it approach the large-s
formula -s^2/2 - ln(s)/4 + c0.
"""

import math

import numpy as np

from sinegap import evaluate_gap
from sinegap.rh import DYSON_C0

print(f"c0 = ln(2)/12 + 3 zeta'(-1) = {DYSON_C0:.10f}")
print()
print("   s      ln Delta(s)      large-s formula   difference   precision")
for s in [0.5, 1, 2, 4, 6, 8, 10, 12]:
    ev = evaluate_gap(s)
    dyson = -s * s / 2 - math.log(s) / 4 + DYSON_C0
    print(f"{s:5.1f}  {ev.log_det:16.10f}  {dyson:16.10f}  {ev.log_det - dyson:11.2e}   {ev.precision}")

# the formula only promises O(1/s), but s^2 * difference settles near 1/32
s = np.arange(6.0, 12.5, 1.0)
diff = np.array([evaluate_gap(x).log_det for x in s]) - (-(s**2) / 2 - np.log(s) / 4 + DYSON_C0)
print()
print("s^2 * difference:", np.round(s**2 * diff, 5), " 1/32 =", 1 / 32)
