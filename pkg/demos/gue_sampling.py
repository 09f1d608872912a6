"""
## Empty windows in GUE spectra

Sample tridiagonal GUE matrices of size N = 400 and count how often the
window (-s/sqrt N, s/sqrt N) around the centre of the spectrum is empty.
At the bulk density sqrt(N)/pi this window has length 2s in unit density,
so the frequency should match Delta(s).
"""

from sinegap import gap_determinant, gap_probabilities

s_values = [0.25, 0.5, 1.0, 1.5, 2.0]
estimates = gap_probabilities(400, s_values, trials=20000, seed=1)
print("   s    p_hat     stderr    Delta(s)      z")
for est in estimates:
    delta = gap_determinant(est.s)
    print(f"{est.s:5.2f}  {est.p_hat:.4f}  {est.stderr:.5f}   {delta:.5f}  {(est.p_hat - delta) / est.stderr:6.2f}")
