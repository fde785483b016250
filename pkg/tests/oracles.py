"""Independent numerical oracles used to freeze and cross-check expected values.

Inner products over the polydisc are computed by tensor quadrature:
Gauss-Legendre in each radius and a uniform trapezoid grid in each angle
(exact for trigonometric polynomials of degree below the grid size).  Nothing
here touches the package's own inner-product code.
"""

from __future__ import annotations

import numpy as np

_RADIAL_NODES = 120
_ANGULAR_NODES = 512


def disc_inner_1d(a: int, b: int, c: int, d: int) -> complex:
    """<z^a zbar^b, z^c zbar^d> over the unit disc, dA = r dr dtheta."""
    x, w = np.polynomial.legendre.leggauss(_RADIAL_NODES)
    r = (x + 1.0) / 2.0
    wr = w / 2.0
    radial = np.sum(wr * r ** (a + b + c + d + 1))
    k = a - b - c + d
    theta = 2.0 * np.pi * np.arange(_ANGULAR_NODES) / _ANGULAR_NODES
    angular = 2.0 * np.pi * np.mean(np.exp(1j * k * theta))
    return complex(radial * angular)


def inner_nd(A, B, C, D) -> complex:
    """<z^A zbar^B, z^C zbar^D> over the polydisc (tensor product of discs)."""
    v = 1.0 + 0.0j
    for a, b, c, d in zip(A, B, C, D):
        v *= disc_inner_1d(a, b, c, d)
    return v


def monomial_norm_sq_nd(beta) -> float:
    zero = (0,) * len(beta)
    return inner_nd(beta, zero, beta, zero).real


def hankel_entry_oracle(terms, alpha, beta, gamma_cap: int) -> complex:
    """<H_psi e_alpha, H_psi e_beta> by brute-force quadrature.

    terms: list of (complex coefficient, holo tuple, antiholo tuple).
    The projection sum runs over the full gamma box up to gamma_cap.
    """
    import itertools

    dim = len(alpha)
    zero = (0,) * dim

    def psi_pair(x, y):
        # <psi z^x, psi z^y>
        total = 0j
        for cs, ns, ms in terms:
            for ct, nt, mt in terms:
                total += (
                    cs
                    * np.conj(ct)
                    * inner_nd(
                        tuple(xi + ni for xi, ni in zip(x, ns)), ms,
                        tuple(yi + ni for yi, ni in zip(y, nt)), mt,
                    )
                )
        return total

    def psi_mono(x, gamma):
        # <psi z^x, z^gamma>
        total = 0j
        for c, n, m in terms:
            total += c * inner_nd(tuple(xi + ni for xi, ni in zip(x, n)), m, gamma, zero)
        return total

    first = psi_pair(alpha, beta)
    proj = 0j
    for gamma in itertools.product(range(gamma_cap + 1), repeat=dim):
        ng = monomial_norm_sq_nd(gamma)
        proj += psi_mono(alpha, gamma) * np.conj(psi_mono(beta, gamma)) / ng
    na = np.sqrt(monomial_norm_sq_nd(alpha))
    nb = np.sqrt(monomial_norm_sq_nd(beta))
    return (first - proj) / (na * nb)


def radial_integral_oracle(fn, exponents) -> float:
    """prod_k 2 pi int_0^1 r^{p_k + 1} f_k(r) dr by quadrature."""
    x, w = np.polynomial.legendre.leggauss(_RADIAL_NODES)
    r = (x + 1.0) / 2.0
    wr = w / 2.0
    total = 1.0
    for f, p in zip(fn, exponents):
        total *= 2.0 * np.pi * np.sum(wr * r ** (p + 1) * f(r))
    return float(total)
