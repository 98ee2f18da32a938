"""Independent reference implementations used as test oracles.

Everything here is computed by a different route than the library code:
power series and numeric integrals via mpmath, exact rational arithmetic
via fractions, and textbook Gram-Schmidt for the nulling beam. Tests
compare library outputs against these, so a shared bug in scipy/numpy
special functions or in the library derivations would be caught.
"""

import math
from fractions import Fraction

import mpmath
import numpy as np


def j0_series(x: float, terms: int = 80) -> float:
    """Bessel J0 by its power series sum_k (-1)^k (x/2)^(2k) / (k!)^2."""
    with mpmath.workdps(50):
        x = mpmath.mpf(x)
        q = -(x / 2) ** 2
        total = mpmath.mpf(0)
        term = mpmath.mpf(1)
        for k in range(terms):
            total += term
            term = term * q / ((k + 1) * (k + 1))
        return float(total)


def gamma_integral(a: float) -> float:
    """Gamma function as the integral of t^(a-1) e^(-t) over (0, inf)."""
    with mpmath.workdps(30):
        return float(mpmath.quad(
            lambda t: t ** (mpmath.mpf(a) - 1) * mpmath.e ** (-t),
            [0, mpmath.inf]))


def beta_integral(a: float, b: float) -> float:
    """Beta function as the integral of t^(a-1) (1-t)^(b-1) over (0, 1)."""
    with mpmath.workdps(30):
        a, b = mpmath.mpf(a), mpmath.mpf(b)
        return float(mpmath.quad(
            lambda t: t ** (a - 1) * (1 - t) ** (b - 1), [0, 1]))


def rvq_mean_sin2(bits: int, nt: int) -> float:
    """Exact mean quantization error sin^2(theta) of a 2^bits random
    codebook in nt dimensions: the integral of (1 - s^(nt-1))^(2^bits)."""
    with mpmath.workdps(40):
        n = mpmath.mpf(2) ** bits
        m = nt - 1
        return float(mpmath.quad(lambda s: (1 - s ** m) ** n, [0, 1]))


def lemma1_harmonic_sum(bits: int, nt: int) -> Fraction:
    """Exact rational value of the alternating binomial-harmonic sum

        sum_{i=0}^{2^bits} C(2^bits, i) (-1)^i H_{i (nt-1)}

    with H_n the n-th harmonic number.
    """
    n = 2 ** bits
    m = nt - 1
    harmonic = [Fraction(0)]
    for j in range(1, n * m + 1):
        harmonic.append(harmonic[-1] + Fraction(1, j))
    total = Fraction(0)
    for i in range(n + 1):
        term = Fraction(math.comb(n, i)) * harmonic[i * m]
        total += term if i % 2 == 0 else -term
    return total


def projection_beam(desired: np.ndarray, interferers) -> np.ndarray:
    """Nulling beam by explicit Gram-Schmidt: project the desired direction
    onto the orthogonal complement of the interferer directions, normalize."""
    basis = []
    for g in interferers:
        v = np.array(g, dtype=np.complex128)
        for q in basis:
            v = v - np.vdot(q, v) * q
        norm = np.linalg.norm(v)
        if norm < 1e-12:
            continue
        basis.append(v / norm)
    f = np.array(desired, dtype=np.complex128)
    for q in basis:
        f = f - np.vdot(q, f) * q
    return f / np.linalg.norm(f)


def eq_loss_bound(rho, alphas, eta_desired, eta_interferers, nt, bk, interferer_bits):
    """Term-by-term high-precision evaluation of the per-user rate loss
    bound, written directly from its three summands."""
    with mpmath.workdps(40):
        m = nt - 1
        c = mpmath.mpf(nt) / m
        lemma_magnitude = mpmath.mpf(0)
        for i in range(1, m + 1):
            lemma_magnitude += mpmath.beta(2 ** mpmath.mpf(bk), mpmath.mpf(i) / m)
        lemma_magnitude /= m
        total_interference = mpmath.mpf(0)
        for alpha, eta, b in zip(alphas, eta_interferers, interferer_bits):
            if alpha == 0.0:
                continue
            quant = (2 ** mpmath.mpf(b)) * mpmath.beta(2 ** mpmath.mpf(b), c) * c
            total_interference += alpha * ((1 - eta * eta) + eta * eta * quant)
        value = (2 * mpmath.log(eta_desired, 2)
                 + lemma_magnitude / mpmath.log(2)
                 + mpmath.log(1 + rho * total_interference, 2))
        return float(value)


def eq_approx_loss(rho, alphas, eta_desired, eta_interferers, nt, bk, interferer_bits):
    """Term-by-term high-precision evaluation of the smooth surrogate loss."""
    with mpmath.workdps(40):
        m = nt - 1
        c = mpmath.mpf(nt) / m
        desired = mpmath.gamma(c) * 2 ** (-mpmath.mpf(bk) / m) / mpmath.log(2)
        interference = mpmath.mpf(0)
        for alpha, eta, b in zip(alphas, eta_interferers, interferer_bits):
            if alpha == 0.0:
                continue
            interference += alpha * ((1 - eta * eta)
                                     + mpmath.gamma(c + 1) * eta * eta
                                     * 2 ** (-mpmath.mpf(b) / m))
        value = desired + mpmath.log(1 + nt * rho * interference, 2)
        return float(value)
