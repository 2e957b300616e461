"""Square-root cancellation in weighted quadratic Weyl sums.

With weights b_n = n^{-p} the running supremum over a dyadic block
[N, 2N) scales like N^{1/2 - p} at generic times, while at rational
times the sum stays of size N (no cancellation).
"""

import math

import numpy as np

from talbotlab.expsum import decay_slope_fit, weyl_block_sup

t_irr = 2 * math.pi * (math.sqrt(5) - 1) / 2
t_rat = 2 * math.pi / 5
blocks = [2**k for k in range(4, 10)]
weight = lambda n: n**-1.5

sups = [weyl_block_sup(t_irr, n, weights=weight).sup for n in blocks]
fit = decay_slope_fit(np.array(blocks), np.array(sups))
print(f"irrational time: fitted exponent {fit.slope:.3f} (expect near -1.0)")

plain = [weyl_block_sup(t_rat, n).sup / n for n in blocks]
print("rational time, unweighted sup/N:",
      ", ".join(f"{v:.3f}" for v in plain))
print("the normalized rational-time sums stay bounded away from zero")
