"""A two-dimensional integral with one soft Hessian mode: the first
coordinate carries a perturbed cubic (deformed onto an Airy-type complex
contour), the second is an ordinary Gaussian transverse mode, and a small
x1*x2^2 coupling makes the problem genuinely non-separable.

At the critical alpha the soft eigenvalue crosses zero, the Gaussian
fluctuation determinant diverges, and only the corrected formula survives.
"""

import numpy as np

from caustica import (
    CausticDivergence,
    approx_corrected_nd,
    approx_wkb_nd,
    cubature_nd,
    find_caustic,
    find_saddle_nd,
    registry_get,
)

intg = registry_get("nd-perturbed-cubic",
                    {"eps": "0.05", "c": "0.1", "lambda2": "-1", "dim": "2"})
alpha_hat = find_caustic(registry_get("perturbed-cubic", {"eps": "0.05"})).alpha_hat
N = 50.0

print(f"soft-mode caustic at alpha_hat = {alpha_hat:.6f}")
print()
print(f"{'alpha':>9} {'lambda_1':>10} {'zeta_p':>8} {'wkb-nd rel':>11} "
      f"{'corr rel':>9}")

for alpha in (alpha_hat, 0.02, 0.05):
    s = find_saddle_nd(intg, alpha, intg.saddle_guess(alpha))
    oracle = cubature_nd(intg, alpha, N).value
    corr = approx_corrected_nd(intg, alpha, N, s)
    try:
        wkb = approx_wkb_nd(intg, alpha, N, s)
        wkb_rel = f"{abs(wkb.value - oracle) / abs(oracle):11.2e}"
    except CausticDivergence:
        wkb_rel = f"{'divergent':>11}"
    print(
        f"{alpha:9.5f} {s.eigenvalues[0]:10.2e} {corr.zeta_prime:8.3f} {wkb_rel} "
        f"{abs(corr.value - oracle) / abs(oracle):9.2e}"
    )

print()
print("the corrected formula needs only saddle-local data (eigenvalues,")
print("the soft-mode cubic a111) and stays finite and accurate at the fold;")
print("the mixed cubic coefficients a_i11 are monitored but dropped.")
