"""Gaunt integrals of zonal harmonics, resonance symbol, and Lambda sets.

The central object is

    kappa(n_1, ..., n_j) = (1/omega_d) * integral over S^d of the
    product of unit-normalized zonal harmonics,

reduced to a one-dimensional Gauss-Jacobi quadrature with weight
(1 - x^2)^{(d-2)/2}.  Every integrand is a polynomial in cos(theta),
so sufficiently many nodes make the quadrature exact rather than
approximate.  kappa is symmetric in its indices, non-negative, and
vanishes when one index exceeds the sum of the others.

The module also provides the resonance symbol H, the Lambda_0 /
Lambda_1 / Lambda_2 classification with calibrated constants, and the
large-n comparison of kappa(n, n, n2, n3) with a line integral over a
meridian.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np
from scipy.special import roots_jacobi

from .specialfun import SphereConstants, zonal_harmonic_table

__all__ = [
    "QuadratureRule",
    "KappaTable",
    "FROZEN_LAMBDA_CONSTANTS",
    "admissible",
    "kappa",
    "kappa_vector",
    "parseval_compose_check",
    "h_symbol",
    "lambda_classify",
    "calibrate_lambda_constants",
    "count_unclassified",
    "line_integral_table",
    "resonance_compare",
]

# Largest (c1, c2) found by calibrate_lambda_constants leaving no
# admissible tuple with n <= 64 unclassified, rounded down for margin.
FROZEN_LAMBDA_CONSTANTS = {2: (0.88, 1.0), 3: (0.82, 1.0)}


@dataclass(frozen=True)
class QuadratureRule:
    """Gauss-Jacobi rule on [-1, 1] with weight (1 - x^2)^{(d-2)/2}.

    Attributes
    ----------
    d : int
        Sphere dimension fixing the Jacobi exponent alpha = (d-2)/2.
    nodes, weights : ndarray
        Quadrature nodes and weights; polynomials up to degree
        2 * node_count - 1 integrate exactly.
    """

    d: int
    nodes: np.ndarray
    weights: np.ndarray

    @classmethod
    def for_degree(cls, total_degree: int, d: int) -> "QuadratureRule":
        """Rule sized for polynomial integrands up to total_degree."""
        count = total_degree // 2 + 8
        alpha = 0.5 * (d - 2)
        nodes, weights = roots_jacobi(count, alpha, alpha)
        return cls(d=d, nodes=nodes, weights=weights)

    @property
    def node_count(self) -> int:
        return self.nodes.size

    @property
    def design_degree(self) -> int:
        return 2 * self.node_count - 1

    def integrate(self, values: np.ndarray) -> float:
        """Weighted sum approximating integral f(x) (1-x^2)^alpha dx."""
        return float(self.weights @ values)


def admissible(indices) -> bool:
    """Polygon support condition: max index <= sum of the others."""
    idx = [int(i) for i in indices]
    return 2 * max(idx) <= sum(idx)


def _as_indices(indices) -> tuple[int, ...]:
    idx = tuple(sorted(int(i) for i in indices))
    if len(idx) not in (2, 3, 4):
        raise ValueError("kappa takes 2, 3, or 4 degree indices")
    if idx[0] < 0:
        raise ValueError("degrees must be non-negative")
    return idx


def kappa(indices, d: int = 2, rule: QuadratureRule | None = None) -> float:
    """Normalized integral of a product of zonal harmonics.

    Parameters
    ----------
    indices : sequence of int
        2, 3, or 4 degrees.
    d : int
        Sphere dimension.
    rule : QuadratureRule, optional
        Pre-built rule; must carry at least (sum of degrees)/2 + 2
        nodes.  Default builds an exact rule.

    Returns
    -------
    float
        (1/omega_d) integral of the product over S^d; symmetric in
        the indices, non-negative, zero outside the polygon support.
    """
    idx = _as_indices(indices)
    total = sum(idx)
    if rule is None:
        rule = QuadratureRule.for_degree(total, d)
    elif rule.d != d:
        raise ValueError("quadrature rule dimension mismatch")
    if rule.node_count < total / 2 + 2:
        raise ValueError(
            f"insufficient nodes: {rule.node_count} for total degree {total}"
        )
    table = zonal_harmonic_table(max(idx), d, rule.nodes)
    product = np.ones_like(rule.nodes)
    for i in idx:
        product = product * table[i]
    sphere = SphereConstants.for_dimension(d)
    return sphere.weight_ratio * rule.integrate(product)


def kappa_vector(
    fixed, n_values, d: int = 2, rule: QuadratureRule | None = None
) -> np.ndarray:
    """kappa(fixed + (n,)) for every n in n_values, sharing one rule."""
    base = tuple(int(i) for i in fixed)
    if len(base) not in (1, 2, 3) or any(i < 0 for i in base):
        raise ValueError("fixed part must hold 1 to 3 non-negative degrees")
    n_arr = np.asarray(n_values, dtype=int)
    total = sum(base) + int(n_arr.max(initial=0))
    if rule is None:
        rule = QuadratureRule.for_degree(total, d)
    if rule.node_count < total / 2 + 2:
        raise ValueError("insufficient nodes for requested degrees")
    table = zonal_harmonic_table(max(list(base) + [int(n_arr.max(initial=0))]), d, rule.nodes)
    product = np.ones_like(rule.nodes)
    for i in base:
        product = product * table[i]
    sphere = SphereConstants.for_dimension(d)
    weighted = rule.weights * product
    return sphere.weight_ratio * (table[n_arr] @ weighted)


@dataclass(frozen=True)
class KappaTable:
    """Cached kappa values over all index tuples up to n_max.

    Storage is canonical (indices sorted ascending), which makes
    permutation invariance exact by construction.

    Attributes
    ----------
    d : int
    n_max : int
    node_count : int
        Nodes in the shared exact quadrature rule.
    triples, quads : dict
        Canonical index tuple -> value.
    """

    d: int
    n_max: int
    node_count: int
    triples: dict
    quads: dict

    @classmethod
    def build(cls, n_max: int, d: int = 2, include_quads: bool = True) -> "KappaTable":
        """Evaluate all canonical 3- and 4-index kappa up to n_max."""
        rule = QuadratureRule.for_degree(4 * n_max, d)
        table = zonal_harmonic_table(n_max, d, rule.nodes)
        sphere = SphereConstants.for_dimension(d)
        ratio = sphere.weight_ratio
        degrees = np.arange(n_max + 1)
        triples = {}
        quads = {}
        for n1 in range(n_max + 1):
            for n2 in range(n1, n_max + 1):
                pair = rule.weights * table[n1] * table[n2]
                vals = ratio * (table @ pair)
                for n3 in range(n2, n_max + 1):
                    triples[(n1, n2, n3)] = float(vals[n3])
                if include_quads:
                    for n3 in range(n2, n_max + 1):
                        qvals = ratio * (table[n3:] @ (pair * table[n3]))
                        for j, n4 in enumerate(degrees[n3:]):
                            quads[(n1, n2, n3, int(n4))] = float(qvals[j])
        return cls(
            d=d,
            n_max=n_max,
            node_count=rule.node_count,
            triples=triples,
            quads=quads,
        )

    def value(self, indices) -> float:
        """Look up kappa by any ordering of the indices."""
        key = tuple(sorted(int(i) for i in indices))
        if any(i > self.n_max for i in key):
            raise KeyError(f"index beyond table n_max={self.n_max}")
        if len(key) == 3:
            return self.triples[key]
        if len(key) == 4:
            return self.quads[key]
        raise ValueError("table stores 3- and 4-index values")

    def min_entry(self) -> float:
        vals = list(self.triples.values()) + list(self.quads.values())
        return min(vals) if vals else 0.0

    def save(self, json_path, csv_path) -> None:
        """Persist as a JSON header plus a CSV body (indices, value)."""
        header = {
            "d": self.d,
            "n_max": self.n_max,
            "node_count": self.node_count,
            "triples": len(self.triples),
            "quads": len(self.quads),
            "body": str(csv_path),
        }
        with open(json_path, "w", encoding="ascii") as fh:
            json.dump(header, fh, indent=2)
            fh.write("\n")
        with open(csv_path, "w", encoding="ascii", newline="") as fh:
            fh.write("n1,n2,n3,n4,value\n")
            for key in sorted(self.triples):
                fh.write(
                    f"{key[0]},{key[1]},{key[2]},,{repr(self.triples[key])}\n"
                )
            for key in sorted(self.quads):
                fh.write(
                    f"{key[0]},{key[1]},{key[2]},{key[3]},"
                    f"{repr(self.quads[key])}\n"
                )

    @classmethod
    def load(cls, json_path, csv_path) -> "KappaTable":
        with open(json_path, "r", encoding="ascii") as fh:
            header = json.load(fh)
        triples = {}
        quads = {}
        with open(csv_path, "r", encoding="ascii") as fh:
            assert fh.readline().strip() == "n1,n2,n3,n4,value"
            for line in fh:
                parts = line.strip().split(",")
                value = float(parts[4])
                if parts[3] == "":
                    triples[tuple(int(p) for p in parts[:3])] = value
                else:
                    quads[tuple(int(p) for p in parts[:4])] = value
        return cls(
            d=int(header["d"]),
            n_max=int(header["n_max"]),
            node_count=int(header["node_count"]),
            triples=triples,
            quads=quads,
        )


def parseval_compose_check(a: int, b: int, c: int, e: int, d: int = 2) -> float:
    """Residual of the Parseval composition of a 4-index kappa.

    The product of two zonal harmonics expands in the zonal basis with
    triple-kappa coefficients, so

        kappa(a, b, c, e) = sum_n kappa(n, a, b) * kappa(n, c, e).

    Returns |sum - direct| with the intermediate range n <= a+b (the
    support of the first factor, which contains all contributions).
    """
    direct = kappa((a, b, c, e), d)
    inter = np.arange(0, a + b + 1)
    left = kappa_vector((a, b), inter, d)
    right = kappa_vector((c, e), inter, d)
    return float(abs(float(left @ right) - direct))


def h_symbol(n1: int, n2: int, n3: int, n: int, d: int = 2) -> int:
    """Resonance symbol lambda_n - lambda_{n1} + lambda_{n2} - lambda_{n3}.

    lambda_m = m (m + d - 1); evaluated in exact integer arithmetic.
    """
    shift = d - 1

    def lam(m: int) -> int:
        return m * (m + shift)

    return lam(int(n)) - lam(int(n1)) + lam(int(n2)) - lam(int(n3))


def _bracket(n: int) -> float:
    return math.sqrt(1.0 + float(n) ** 2)


def lambda_classify(
    n1: int, n2: int, n3: int, n: int, d: int = 2, constants=None
) -> str:
    """Classify an admissible tuple into Lambda_0 / Lambda_1 / Lambda_2.

    Parameters
    ----------
    n1, n2, n3, n : int
        Frequency tuple; (n1, n2, n3, n) must satisfy the kappa
        support condition.
    d : int
        Sphere dimension (enters through the symbol H).
    constants : (float, float), optional
        (c1, c2); defaults to the frozen calibrated pair for d.

    Returns
    -------
    str
        "lambda0" when n1 = n or n3 = n; else "lambda1" when
        <n1><n2><n3> >= c1 n^{3/2}; else "lambda2" when
        |H| >= c2 max(n1,n2,n3) |n - max(n1,n3)|; else "unclassified".
    """
    if not admissible((n1, n2, n3, n)):
        raise ValueError("tuple violates the kappa support condition")
    if constants is None:
        constants = FROZEN_LAMBDA_CONSTANTS[d]
    c1, c2 = constants
    if n1 == n or n3 == n:
        return "lambda0"
    if _bracket(n1) * _bracket(n2) * _bracket(n3) >= c1 * float(n) ** 1.5:
        return "lambda1"
    h = h_symbol(n1, n2, n3, n, d)
    gap = max(n1, n2, n3) * abs(n - max(n1, n3))
    if c2 == 1.0:
        if abs(h) >= gap:
            return "lambda2"
    elif abs(h) >= c2 * gap:
        return "lambda2"
    return "unclassified"


def _lambda_scan_arrays(n: int, n_max: int, d: int, c2: float):
    """Bracket ratios of tuples left to Lambda_1 at fixed n (vectorized)."""
    rng = np.arange(n_max + 1, dtype=np.int64)
    m1, m2, m3 = np.meshgrid(rng, rng, rng, indexing="ij")
    top = np.maximum(np.maximum(m1, m2), np.maximum(m3, n))
    total = m1 + m2 + m3 + n
    keep = 2 * top <= total
    keep &= (m1 != n) & (m3 != n)
    shift = d - 1
    h = np.abs(
        n * (n + shift) - m1 * (m1 + shift) + m2 * (m2 + shift) - m3 * (m3 + shift)
    )
    gap = np.maximum(np.maximum(m1, m2), m3) * np.abs(n - np.maximum(m1, m3))
    if c2 == 1.0:
        keep &= h < gap
    else:
        keep &= h < c2 * gap
    if not np.any(keep):
        return np.empty(0)
    br = np.sqrt(1.0 + rng.astype(float) ** 2)
    prods = br[m1[keep]] * br[m2[keep]] * br[m3[keep]]
    return prods / float(n) ** 1.5


def calibrate_lambda_constants(n_max: int, d: int = 2, c2: float = 1.0):
    """Largest c1 (given c2) leaving no admissible tuple unclassified.

    Scans every admissible tuple with n <= n_max, discards those in
    Lambda_0 or already covered by the Lambda_2 inequality, and
    returns the minimum of <n1><n2><n3> / n^{3/2} over the remainder:
    any c1 at or below it classifies the whole range.

    Returns
    -------
    (float, float)
        (largest admissible c1, c2).
    """
    best = math.inf
    for n in range(1, n_max + 1):
        ratios = _lambda_scan_arrays(n, n_max, d, c2)
        if ratios.size:
            best = min(best, float(ratios.min()))
    return (best, c2)


def count_unclassified(n_max: int, d: int = 2, constants=None) -> int:
    """Admissible tuples with n <= n_max that no Lambda set covers."""
    if constants is None:
        constants = FROZEN_LAMBDA_CONSTANTS[d]
    c1, c2 = constants
    count = 0
    for n in range(1, n_max + 1):
        ratios = _lambda_scan_arrays(n, n_max, d, c2)
        count += int(np.count_nonzero(ratios < c1))
    return count


def line_integral_table(n_max: int, d: int = 2) -> np.ndarray:
    """Meridian products (1/pi) integral_0^pi Y_k Y_l dtheta.

    Uses Gauss-Chebyshev nodes x_i = cos((2i-1) pi / (2M)) with
    uniform weight pi / M, exact for the polynomial integrands up to
    degree 2M - 1.

    Returns
    -------
    ndarray
        Symmetric (n_max+1, n_max+1) matrix of line integrals.
    """
    count = n_max + 8
    i = np.arange(1, count + 1)
    nodes = np.cos((2 * i - 1) * math.pi / (2 * count))
    table = zonal_harmonic_table(n_max, d, nodes)
    # (1/pi) * (pi/M) sum -> plain average over Chebyshev nodes.
    return (table @ table.T) / count


def resonance_compare(n: int, n2: int, n3: int, d: int = 2):
    """kappa(n, n, n2, n3) against its large-n meridian limit.

    Returns
    -------
    (float, float, float)
        The kappa value, the line integral
        (1/pi) integral_0^pi Y_{n2} Y_{n3} dtheta, and their
        difference (kappa minus line integral).
    """
    if max(n2, n3) > n:
        raise ValueError("resonance comparison needs n2, n3 <= n")
    k_val = kappa((n, n, n2, n3), d)
    line = float(line_integral_table(max(n2, n3), d)[n2, n3])
    return (k_val, line, k_val - line)
