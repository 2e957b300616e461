"""Exponential-sum suprema: weighted Weyl blocks and Gauss sums.

A Weyl block is the partial sum

    S(u, x) = sum_{n=N}^{u} b_n a^n exp(i n^2 t + i n x),   N <= u <= 2N,

whose supremum over both the truncation point u and a physical grid
in x measures square-root cancellation for generic t.  Dimension-d
shell sums over N <= max|m_i| < 2N factorize as a difference of
tensor products of one-axis box sums.
"""

from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass

import numpy as np

from .fitting import LineFit, fit_line

__all__ = [
    "WeylBlockResult",
    "weyl_block_sup",
    "gauss_sum",
    "torus_weyl_sup",
    "decay_slope_fit",
]


@dataclass(frozen=True)
class WeylBlockResult:
    """Supremum of a weighted quadratic Weyl block.

    Attributes
    ----------
    block_start : int
        N; the block covers n in [N, 2N].
    sup : float
        max over u in [N, 2N] and grid x of |S(u, x)|.
    argmax_x : float
        Grid point attaining the supremum.
    argmax_u : int
        Truncation point attaining the supremum.
    """

    block_start: int
    sup: float
    argmax_x: float
    argmax_u: int


def _block_weights(weights, n_values: np.ndarray) -> np.ndarray:
    if weights is None:
        return np.ones(n_values.size)
    if callable(weights):
        return np.array([float(weights(int(n))) for n in n_values])
    arr = np.asarray(weights, dtype=float)
    if arr.shape != n_values.shape:
        raise ValueError("weight array must cover n = N .. 2N inclusive")
    return arr


def weyl_block_sup(
    t: float,
    block_start: int,
    weights=None,
    damping: float = 1.0,
    grid_factor: int = 16,
) -> WeylBlockResult:
    """Supremum of the weighted Weyl block starting at N = block_start.

    Parameters
    ----------
    t : float
        Time multiplying the quadratic phase n^2.
    block_start : int
        N >= 1; the sum runs over n in [N, 2N].
    weights : callable or array_like or None
        b_n, given as a function of n or an array over n = N .. 2N.
        None means b_n = 1.
    damping : float
        Radial factor a in [0, 1] applied as a^n.
    grid_factor : int
        The x grid has grid_factor * N points on [0, 2 pi).

    Returns
    -------
    WeylBlockResult
        Running maximum over all prefixes u and grid points x.

    Notes
    -----
    Phases advance by the first-difference recurrence
    exp(i (n+1)^2 t) = exp(i n^2 t) exp(i (2n+1) t), so the block
    costs O(N * grid_factor * N) with no large-angle trig calls.
    """
    big_n = int(block_start)
    if big_n < 1:
        raise ValueError("block start must be >= 1")
    if not 0.0 <= damping <= 1.0:
        raise ValueError("damping must lie in [0, 1]")
    n_values = np.arange(big_n, 2 * big_n + 1)
    b = _block_weights(weights, n_values)
    grid = grid_factor * big_n
    x = 2.0 * math.pi * np.arange(grid) / grid
    step_x = np.exp(1j * x)
    # term_n(x) = b_n a^n e^{i n^2 t} e^{i n x}, advanced incrementally.
    cur = np.exp(1j * (float(big_n) ** 2) * t) * np.exp(1j * big_n * x)
    amp = damping**big_n if damping != 1.0 else 1.0
    total = np.zeros(grid, dtype=complex)
    best = -1.0
    best_x = 0.0
    best_u = big_n
    for i, n in enumerate(n_values):
        total += (b[i] * amp) * cur
        mags = np.abs(total)
        j = int(np.argmax(mags))
        if mags[j] > best:
            best = float(mags[j])
            best_x = float(x[j])
            best_u = int(n)
        if i + 1 < n_values.size:
            cur *= cmath.exp(1j * (2.0 * n + 1.0) * t) * step_x
            if damping != 1.0:
                amp *= damping
    return WeylBlockResult(block_start=big_n, sup=best, argmax_x=best_x, argmax_u=best_u)


def gauss_sum(p: int, q: int) -> complex:
    """Quadratic Gauss sum sum_{n=0}^{q-1} exp(2 pi i p n^2 / q).

    Computed with exact modular phase arithmetic; |G(p, q)| equals
    sqrt(q), sqrt(2 q), or 0 according to q mod 4 when gcd(p, q) = 1.
    """
    q = int(q)
    p = int(p)
    if q < 1:
        raise ValueError("modulus must be positive")
    residues = (p * (np.arange(q, dtype=np.int64) ** 2 % q)) % q
    return complex(np.sum(np.exp(2j * math.pi * residues / q)))


def _axis_box_sum(t: float, half_width: int, x: np.ndarray) -> np.ndarray:
    """sum_{|m| <= half_width - 1} e^{i t m^2 + i m x} on a grid."""
    if half_width <= 0:
        return np.zeros(x.size, dtype=complex)
    m = np.arange(-(half_width - 1), half_width)
    phases = np.exp(1j * t * (m.astype(float) ** 2))
    return np.exp(1j * np.outer(x, m)) @ phases


def torus_weyl_sup(
    t: float, block_start: int, d: int = 1, grid_factor: int = 16
) -> float:
    """Supremum over x of the d-dimensional shell Weyl sum.

    The shell is N <= max_i |m_i| < 2N; its sum factorizes as the
    tensor product over the full box of side 2N minus the product
    over the inner box of side N, because the quadratic phase
    exp(i t |m|^2) splits across coordinates.

    Parameters
    ----------
    t : float
    block_start : int
        N >= 1.
    d : int
        Torus dimension, 1 or 2.
    grid_factor : int
        Grid points per axis are grid_factor * N.

    Returns
    -------
    float
    """
    big_n = int(block_start)
    if big_n < 1:
        raise ValueError("block start must be >= 1")
    grid = grid_factor * big_n
    x = 2.0 * math.pi * np.arange(grid) / grid
    outer = _axis_box_sum(t, 2 * big_n, x)
    inner = _axis_box_sum(t, big_n, x)
    if d == 1:
        return float(np.max(np.abs(outer - inner)))
    if d == 2:
        best = 0.0
        for a_out, a_in in zip(outer, inner):
            row = np.abs(a_out * outer - a_in * inner)
            m = float(np.max(row))
            if m > best:
                best = m
        return best
    raise ValueError("shell suprema are implemented for d in {1, 2}")


def decay_slope_fit(block_starts, sups) -> LineFit:
    """Fitted log2-log2 decay exponent of block suprema against N.

    Non-positive values are dropped (with a warning) before the fit;
    at least three points must survive.
    """
    n = np.asarray(block_starts, dtype=float)
    v = np.asarray(sups, dtype=float)
    keep = v > 0.0
    dropped = int(np.count_nonzero(~keep))
    if dropped:
        warnings.warn(f"dropped {dropped} non-positive values from decay fit")
    if np.count_nonzero(keep) < 3:
        raise ValueError("need at least three positive values for a decay fit")
    return fit_line(np.log2(n[keep]), np.log2(v[keep]))
