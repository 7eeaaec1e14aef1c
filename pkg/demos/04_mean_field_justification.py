"""Why the mean-field approximation survives its own caustic.

The toy partition function int exp(N(-s^2/2g + log cosh(s+m))) ds develops a
fold at a critical coupling g_hat: a secondary saddle's curvature vanishes
and the Gaussian fluctuation prefactor diverges there, which looks like a
breakdown of the saddle-point method.  The resolution: the Airy-corrected
prefactor stays finite and, crucially, carries the *same* leading exponent
as the naive mean-field term, so the free energy (1/N) log Z is untouched.
"""

import math

from caustica import find_caustic, mean_field_compare, quad_contour, registry_get

m = 0.1
intg = registry_get("mean-field-toy", {"m": m})
caustic = find_caustic(intg)
g_hat = caustic.alpha_hat
print(f"critical coupling for m = {m}: g_hat = {g_hat:.6f} "
      f"(fold at s = {caustic.z_tilde.real:.6f})")
print()

gammas = [1.10, 1.20, g_hat, 1.40, 1.60]
rows = mean_field_compare(intg, gammas, [100])

print(f"{'gamma':>8} {'exp gap':>10} {'prefac ratio':>13} {'fold wkb':>10} "
      f"{'corr vs oracle':>14}")
for r in rows:
    oracle = quad_contour(intg, r["alpha"], r["N"], tol=1e-10).value
    rel = abs(r["corrected"] - oracle) / abs(oracle)
    print(
        f"{r['alpha']:8.4f} {r['exponent_gap']:10.2e} {r['prefactor_ratio']:13.6f} "
        f"{r['fold_wkb']:>10} {rel:14.2e}"
    )

print()
print("the leading-exponent gap |(1/N)log WKB - (1/N)log corrected| is O(1/N)")
print("everywhere, so mean field is justified; at g_hat the fold-saddle WKB")
print("prefactor is divergent while the corrected value remains finite.")
print()
print("the chiral limit m = 0 is different: there the cubic coefficient also")
print("vanishes (a cusp, not a fold) and the library refuses with")
print("DegenerateCubic rather than returning an invalid fold correction.")
