"""Rational-time revival of a square wave on the circle.

At t = 2 pi p / q the evolved step function is an exact finite
combination of translates of the initial data, with weights built
from quadratic Gauss sums.  The reconstruction residual is roundoff.
"""

import numpy as np

from talbotlab.evolve import quantization_check, quantization_weights
from talbotlab.spectra import torus_step

spec = torus_step([(0.0, 1.0), (np.pi, -1.0)], m_max=2048)

print("p/q   residual      |weights|")
for p, q in [(1, 2), (1, 3), (2, 5), (3, 8), (5, 12)]:
    check = quantization_check(spec, p, q)
    w = quantization_weights(p, q)
    mags = ", ".join(f"{abs(c):.3f}" for c in w[: min(len(w), 4)])
    print(f"{p}/{q:<4} {check.residual:.3e}   {mags}{' ...' if len(w) > 4 else ''}")

# For odd q every weight has magnitude exactly 1/sqrt(q).
for q in (3, 5, 7, 11):
    w = quantization_weights(1, q)
    assert np.allclose(np.abs(w), 1.0 / np.sqrt(q))
print("odd q: all weight magnitudes equal 1/sqrt(q)")
