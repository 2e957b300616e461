"""Triple-product integrals of zonal harmonics and their identities.

kappa(n1, n2, n3) is symmetric, non-negative, vanishes outside the
triangle-type support, and composes under Parseval into quadruple
products.  For kappa(n, n, n2, n3) the large-n limit is a meridian
line integral, approached at rate 1/n.
"""

from talbotlab.fitting import fit_loglog
from talbotlab.gaunt import kappa, parseval_compose_check, resonance_compare

print("support and symmetry on S^2:")
for idx in [(0, 0, 0), (1, 1, 2), (2, 3, 5), (1, 1, 3), (1, 2, 5)]:
    print(f"  kappa{idx} = {kappa(idx):.6f}"
          f"   (reversed: {kappa(idx[::-1]):.6f})")

print("\nParseval composition residuals (quadruple vs summed triples):")
for quad in [(2, 2, 2, 2), (3, 4, 5, 6), (1, 2, 3, 4)]:
    print(f"  {quad}: {parseval_compose_check(*quad):.2e}")

print("\nresonant limit kappa(n, n, 3, 5) -> meridian line integral:")
degrees = [16, 32, 64, 128, 256]
diffs = []
for n in degrees:
    k_val, line, diff = resonance_compare(n, 3, 5)
    diffs.append(diff)
    print(f"  n={n:<4} kappa={k_val:.6f}  line={line:.6f}  diff={diff:.2e}")
fit = fit_loglog(degrees, diffs, base=2)
print(f"fitted decay exponent {fit.slope:.2f} (expect about -1 or faster)")
