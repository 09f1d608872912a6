"""
## Orthogonal polynomials on an arc

The weight is f = 1 on the arc alpha <= theta <= 2 pi - alpha. We check
how closely the endpoint expansions match the exact polynomials as
rho = n sin(alpha/2) grows, and look at the leading coefficients chi_n.

The endpoint value error falls like rho^-3 at every alpha. The chi error
falls like n^-3 at fixed alpha, but its coefficient grows like
1/sin^2(alpha/2). The last column shows that error * n * rho^2 stays put.
"""

import math

import numpy as np

from sinegap.opuc import ArcWeight, build_ladder, eval_poly
from sinegap.rh import thm2_chi, thm2_endpoint

print(" alpha     n     rho    phi err*rho^3   chi err*n^3   chi err*n*rho^2")
for alpha in (0.3, 1.0, 2.0):
    for rho in (20, 80):
        n = round(rho / math.sin(alpha / 2))
        lad = build_ladder(ArcWeight(alpha), n)
        exact = eval_poly(lad, n, np.exp(1j * alpha)).phi / lad.chi[n]
        pred = thm2_endpoint(n, alpha)
        r = pred.inputs["rho"]
        phi_err = abs(exact - pred.value) / abs(pred.value)
        chi_err = abs(2 * lad.log_chi[n - 1] - thm2_chi(n, alpha).log_value)
        print(f"{alpha:6.2f} {n:5d} {r:7.2f} {phi_err * r**3:14.5f} {chi_err * n**3:13.5f} {chi_err * n * r**2:16.5f}")
