"""Shared fixtures and independent quadrature oracles for the test suite.

The oracles below deliberately avoid the library's own quadrature and
recurrence code paths: they go through scipy.special closed forms and
scipy.integrate adaptive quadrature so that agreement is meaningful.
"""

import numpy as np
import pytest
from scipy import integrate
from scipy.special import eval_chebyu, eval_legendre, gamma as gamma_fn, roots_jacobi


def legendre_zonal(n, x):
    """L2-normalized zonal harmonic on S^2 via scipy Legendre."""
    return np.sqrt(2 * n + 1) * eval_legendre(n, x)


def chebyshev_zonal(n, x):
    """L2-normalized zonal harmonic on S^3 via scipy Chebyshev-U."""
    return eval_chebyu(n, x)


def zonal_oracle(n, d, x):
    """Normalized zonal harmonic through scipy closed forms (d = 2, 3)."""
    if d == 2:
        return legendre_zonal(n, x)
    if d == 3:
        return chebyshev_zonal(n, x)
    raise ValueError("oracle only covers d = 2, 3")


def sphere_weight(d):
    """Density w(x) with int_{-1}^{1} w = 1 matching the zonal measure.

    Pushing the normalized surface measure of S^d to x = cos(theta)
    gives w(x) proportional to (1 - x^2)^{(d-2)/2}.
    """
    c = gamma_fn(d / 2 + 0.5) / (np.sqrt(np.pi) * gamma_fn(d / 2))

    def w(x):
        return c * (1.0 - x * x) ** ((d - 2) / 2)

    return w


def sphere_rule(d, count):
    """Gauss-Jacobi rule for the normalized zonal measure, via scipy.

    Returns nodes and weights summing to one; exact for polynomial
    integrands of degree up to 2 * count - 1.
    """
    alpha = (d - 2) / 2
    nodes, weights = roots_jacobi(count, alpha, alpha)
    weights = weights / np.sum(weights)
    return nodes, weights


def quad_product_integral(degrees, d):
    """Adaptive-quadrature integral of a product of zonal harmonics.

    Returns int_{-1}^{1} prod_i Y_{n_i}(x) w_d(x) dx computed with
    scipy.integrate.quad, independent of any Gauss-Jacobi rule.
    """
    w = sphere_weight(d)

    def f(x):
        out = w(x)
        for n in degrees:
            out = out * zonal_oracle(n, d, x)
        return out

    val, err = integrate.quad(f, -1.0, 1.0, limit=400, epsabs=1e-13, epsrel=1e-13)
    assert err < 1e-8
    return val


def quad_line_integral(n1, n2, d):
    """(1/pi) int_0^pi Y_{n1}(cos t) Y_{n2}(cos t) dt via scipy quad."""

    def f(t):
        x = np.cos(t)
        return zonal_oracle(n1, d, x) * zonal_oracle(n2, d, x) / np.pi

    val, err = integrate.quad(f, 0.0, np.pi, limit=400, epsabs=1e-13, epsrel=1e-13)
    assert err < 1e-8
    return val


def quad_triangle_coefficient(m1, m2):
    """Fourier coefficient of the indicator of {0 <= y <= x <= pi}.

    Semi-analytic oracle for the triangle (0,0), (pi,0), (pi,pi): the
    inner y-integral is evaluated in closed form and the outer integral
    with scipy.integrate.quad, so no 2-d indicator quadrature is needed.
    """

    def inner(x):
        if m2 == 0:
            return x + 0j
        return (1.0 - np.exp(-1j * m2 * x)) / (1j * m2)

    def f_re(x):
        return (np.exp(-1j * m1 * x) * inner(x)).real

    def f_im(x):
        return (np.exp(-1j * m1 * x) * inner(x)).imag

    kw = dict(limit=300, epsabs=1e-13, epsrel=1e-13)
    re, re_err = integrate.quad(f_re, 0.0, np.pi, **kw)
    im, im_err = integrate.quad(f_im, 0.0, np.pi, **kw)
    assert max(re_err, im_err) < 1e-9
    return (re + 1j * im) / (4.0 * np.pi**2)


@pytest.fixture
def rng():
    return np.random.default_rng(987654321)
