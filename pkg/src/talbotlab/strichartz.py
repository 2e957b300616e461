"""Exact space-time norms for zonal evolutions and beam saturation.

For band-limited data the Schrodinger flow on the sphere is a trig
polynomial in time with integer frequencies lambda_n = n(n + d - 1),
so space-time L^2 norms over one period reduce exactly, by Parseval
in t, to a sum over tau-classes of pairs (n, m) with
lambda_n + lambda_m = tau.  No time grid is involved; a dense-grid
quadrature survives only as a small-truncation oracle.

Norms use probability measures on both factors
(dsigma / omega_d and dt / 2 pi), so a single mode has unit L^2 norm
and Holder comparisons are scale-free.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln

from .gaunt import QuadratureRule
from .specialfun import SphereConstants, zonal_harmonic_table
from .spectra import ZonalSpectrum

__all__ = [
    "PairFrequencyDecomposition",
    "alpha_count",
    "bilinear_l2",
    "l4_norm_beam",
    "beam_l4_closed",
    "l4_norm_spacetime",
    "l4_spacetime_grid",
]


def _eigenvalue(n: int, d: int) -> int:
    return n * (n + d - 1)


@dataclass(frozen=True)
class PairFrequencyDecomposition:
    """Pairs (n, m) from dyadic ranges grouped by lambda_n + lambda_m.

    Attributes
    ----------
    d : int
    n_range, m_range : tuple
        Half-open index ranges [N, 2N) and [M, 2M).
    classes : dict
        tau -> list of (n, m); every pair appears under exactly one
        tau by construction.
    """

    d: int
    n_range: tuple
    m_range: tuple
    classes: dict

    @classmethod
    def build(cls, block_n: int, block_m: int, d: int = 2) -> "PairFrequencyDecomposition":
        classes: dict = {}
        for n in range(block_n, 2 * block_n):
            lam_n = _eigenvalue(n, d)
            for m in range(block_m, 2 * block_m):
                tau = lam_n + _eigenvalue(m, d)
                classes.setdefault(tau, []).append((n, m))
        return cls(
            d=d,
            n_range=(block_n, 2 * block_n),
            m_range=(block_m, 2 * block_m),
            classes=classes,
        )

    def pair_count(self) -> int:
        return sum(len(v) for v in self.classes.values())


def alpha_count(block_n: int, block_m: int, tau: int, d: int = 2) -> int:
    """Number of pairs n in [N, 2N), m in [M, 2M) with
    lambda_n + lambda_m = tau.

    Counts by scanning n and testing whether tau - lambda_n is the
    eigenvalue of an integer m in range.
    """
    if block_m > block_n:
        raise ValueError("expects N >= M")
    count = 0
    shift = d - 1
    for n in range(block_n, 2 * block_n):
        rest = tau - _eigenvalue(n, d)
        if rest < 0:
            continue
        # Solve m (m + shift) = rest for integer m.
        disc = shift * shift + 4 * rest
        root = math.isqrt(disc)
        if root * root != disc or (root - shift) % 2 != 0:
            continue
        m = (root - shift) // 2
        if block_m <= m < 2 * block_m:
            count += 1
    return count


def _product_rule(total_degree: int, d: int) -> QuadratureRule:
    return QuadratureRule.for_degree(total_degree, d)


def bilinear_l2(
    f: ZonalSpectrum, g: ZonalSpectrum, block_n: int, block_m: int
) -> float:
    """||P_N (e^{it Delta} f) P_M (e^{it Delta} g)||_{L^2(S^d x [0, 2 pi])}.

    Exact in time: the product is a trig polynomial with integer
    frequencies tau = lambda_n + lambda_m, so Parseval in
    L^2(dt / 2 pi) turns the space-time norm into a Pythagorean sum
    over tau-classes of spatial L^2 norms, each computed by exact
    Gauss-Jacobi quadrature.

    Parameters
    ----------
    f, g : ZonalSpectrum
        Same dimension d; blocks cover [N, 2N) and [M, 2M).
    block_n, block_m : int
        Dyadic block starts with N >= M.

    Returns
    -------
    float
    """
    if f.d != g.d:
        raise ValueError("spectra must share the sphere dimension")
    if block_m > block_n:
        raise ValueError("expects N >= M")
    d = f.d
    deco = PairFrequencyDecomposition.build(block_n, block_m, d)
    top = 2 * block_n - 1 + 2 * block_m - 1
    rule = _product_rule(2 * top, d)
    table = zonal_harmonic_table(min(2 * block_n - 1, max(f.n_max, g.n_max)), d, rule.nodes)
    ratio = SphereConstants.for_dimension(d).weight_ratio

    def coef_at(spec: ZonalSpectrum, n: int) -> complex:
        return complex(spec.coef[n]) if n <= spec.n_max else 0.0

    total = 0.0
    for pairs in deco.classes.values():
        h = np.zeros(rule.nodes.size, dtype=complex)
        nonzero = False
        for n, m in pairs:
            w = coef_at(f, n) * coef_at(g, m)
            if w == 0.0:
                continue
            h += w * (table[n] * table[m])
            nonzero = True
        if nonzero:
            total += ratio * rule.integrate(np.abs(h) ** 2)
    return math.sqrt(total)


def beam_l4_closed(n: int) -> float:
    """Closed form of ||Y_n^n||^4_{L^4(S^2)} via Wallis integrals.

    The highest-weight harmonic has |Y_n^n|^2 = c_n^2 sin^{2n}(theta)
    with c_n^2 = (2n+1)! / (4^n (n!)^2); the quartic integral is a
    Beta function, giving exactly 6/5 at n = 1.
    """
    if n < 0:
        raise ValueError("degree must be non-negative")
    log_c2 = (
        math.log(2 * n + 1)
        + gammaln(2 * n + 1)
        - 2.0 * gammaln(n + 1)
        - n * math.log(4.0)
    )
    log_int = 0.5 * math.log(math.pi) + gammaln(2 * n + 1) - gammaln(2 * n + 1.5)
    return float(math.exp(2.0 * log_c2 + log_int - math.log(2.0)))


def l4_norm_beam(n: int) -> float:
    """||Y_n^n||^4_{L^4(S^2)} by exact quadrature.

    Single-mode beams make the time factor unimodular, so the
    space-time quartic norm equals the spatial one; the integrand
    c_n^4 (1 - x^2)^{2n} is a polynomial covered exactly by the rule.
    """
    if n < 0:
        raise ValueError("degree must be non-negative")
    rule = QuadratureRule.for_degree(4 * n, 2)
    log_c2 = (
        math.log(2 * n + 1)
        + gammaln(2 * n + 1)
        - 2.0 * gammaln(n + 1)
        - n * math.log(4.0)
    )
    values = np.exp(2.0 * log_c2 + 2.0 * n * np.log1p(-rule.nodes**2))
    ratio = SphereConstants.for_dimension(2).weight_ratio
    return float(ratio * rule.integrate(values))


def l4_norm_spacetime(f: ZonalSpectrum, block_n: int) -> float:
    """||P_N e^{it Delta} f||_{L^4(S^d x [0, 2 pi])}.

    Uses ||u||_{L^4}^4 = ||u^2||_{L^2}^2 with the tau-grouped exact
    Parseval computation of ||u^2||.
    """
    square = bilinear_l2(f, f, block_n, block_n)
    return math.sqrt(square)


def l4_spacetime_grid(
    f: ZonalSpectrum, block_n: int, t_points: int | None = None
) -> float:
    """Dense t-grid evaluation of the space-time L^4 norm (oracle).

    Exact for band-limited data when the uniform t grid exceeds the
    bandwidth of |u|^4 (a trig polynomial), but the required grid
    grows like N^2; intended for small truncations only.
    """
    d = f.d
    lo, hi = block_n, 2 * block_n
    degrees = np.arange(lo, min(hi, f.n_max + 1))
    if degrees.size == 0:
        return 0.0
    coef = f.coef[degrees]
    lam = degrees * (degrees + d - 1)
    if t_points is None:
        band = 2 * (int(lam.max()) - int(lam.min()))
        t_points = 2 * band + 8
    rule = _product_rule(4 * (2 * block_n - 1), d)
    table = zonal_harmonic_table(int(degrees.max()), d, rule.nodes)[degrees]
    ratio = SphereConstants.for_dimension(d).weight_ratio
    t = 2.0 * math.pi * np.arange(t_points) / t_points
    phases = np.exp(1j * np.outer(t, lam))
    fields = (phases * coef[None, :]) @ table
    quartic = np.abs(fields) ** 4
    per_t = ratio * (quartic @ rule.weights)
    return float(np.mean(per_t) ** 0.25)
