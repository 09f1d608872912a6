"""
## Two routes to the Dyson constant

The constant c0 = ln(2)/12 + 3 zeta'(-1) can be recovered from two
independent exact computations:

- from ln Delta(s) at s = 6..12, fitting ln Delta + s^2/2 + ln(s)/4
- from Toeplitz determinants on a fixed arc, fitting
  ln det T_{n-1} - n^2 ln cos(alpha/2) + ln(n sin(alpha/2))/4

Both fits use c0 + a/x + b/x^2 and report c0.
"""

from sinegap.experiments import run_fit_c0_fredholm, run_fit_c0_widom
from sinegap.rh import DYSON_C0

fred = run_fit_c0_fredholm(6.0, 12.0, 0.5)
print("Fredholm route")
print(f"  c0_hat = {fred.fit.c0_hat:.8f}   error = {fred.fit.c0_hat - DYSON_C0:.2e}")
print(f"  nuisance terms: {fred.fit.coefficients}")

for alpha in (0.4, 0.5):
    wid = run_fit_c0_widom(alpha, 100, 600, 50)
    print(f"Toeplitz route, alpha = {alpha}")
    print(f"  c0_hat = {wid.fit.c0_hat:.10f}   error = {wid.fit.c0_hat - DYSON_C0:.2e}")
    print(f"  rms with b = {wid.fit.rms:.2e}, without b = {wid.fit.rms_without_b:.2e}")
