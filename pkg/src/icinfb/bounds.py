"""Closed-form upper bound on the mean sum-rate loss caused by feedback
delay and quantization, plus the large-codebook approximation that the bit
allocator optimizes.

Two independent routes exist for the harmonic-sum identity at the heart of
the desired-channel term: an exact alternating binomial sum (rational
arithmetic, small budgets only) and a beta-function form valid for any
budget. They must agree wherever both are computable; tests enforce it.
"""

import math
from dataclasses import dataclass
from fractions import Fraction

import mpmath

from .errors import CapacityError
from .numerics import beta_fn, ln_gamma

__all__ = [
    "LinkParams",
    "lemma1_binomial_sum",
    "lemma1_beta_form",
    "desired_term_bound",
    "interference_term_bound",
    "loss_upper_bound",
    "approx_loss_user",
]

LOG2E = math.log2(math.e)

# The alternating sum has binomial coefficients of size ~2^(2^bits); every
# extra bit doubles the working precision and the term count, so the cost
# grows like 4^bits. Twelve bits (~4096-bit arithmetic) is the practical
# ceiling; the beta form covers everything beyond it.
BINOMIAL_SUM_MAX_BITS = 12
_EXACT_MAX_BITS = 6  # 2^6 = 64 terms: exact rationals stay cheap


@dataclass(frozen=True)
class LinkParams:
    """Per-user link bundle: SNR, interference ratios, correlations, sizes.

    alphas[l] and eta_interferers[l] describe interferer l; n_cells counts
    the user's own cell plus its interferers, and nt >= n_cells is required
    for nulling feasibility.
    """

    rho: float
    alphas: tuple
    eta_desired: float
    eta_interferers: tuple
    nt: int
    n_cells: int

    def __post_init__(self):
        object.__setattr__(self, "alphas", tuple(float(a) for a in self.alphas))
        object.__setattr__(
            self, "eta_interferers", tuple(float(e) for e in self.eta_interferers)
        )
        if self.n_cells < 1:
            raise ValueError(f"n_cells must be >= 1, got {self.n_cells}")
        if len(self.alphas) != self.n_cells - 1 or len(self.eta_interferers) != self.n_cells - 1:
            raise ValueError(
                "alphas and eta_interferers must both have n_cells - 1 entries"
            )
        if self.nt < self.n_cells:
            raise ValueError(
                f"nulling needs nt >= n_cells, got nt={self.nt}, n_cells={self.n_cells}"
            )
        if not (math.isfinite(self.rho) and self.rho >= 0):
            raise ValueError(f"rho must be >= 0, got {self.rho!r}")
        for a in self.alphas:
            if not (0.0 <= a <= 1.0):
                raise ValueError(f"alphas must lie in [0, 1], got {a!r}")
        for e in (self.eta_desired, *self.eta_interferers):
            if not (math.isfinite(e) and abs(e) <= 1.0):
                raise ValueError(f"correlations must satisfy |eta| <= 1, got {e!r}")


def _interferer_bits_list(allocation, k_interferers: int):
    """Accept a BitAllocation-like object or a (desired, per-interferer) pair."""
    if hasattr(allocation, "desired_bits") and hasattr(allocation, "interferer_bits"):
        desired = allocation.desired_bits
        ib = allocation.interferer_bits
    else:
        desired, ib = allocation
    if hasattr(ib, "get"):
        bits = [ib.get(i, 0) for i in range(k_interferers)]
    else:
        bits = list(ib)
        if len(bits) != k_interferers:
            raise ValueError(
                f"expected {k_interferers} interferer bit counts, got {len(bits)}"
            )
    return float(desired), [float(b) for b in bits]


def lemma1_binomial_sum(bits: int, nt: int) -> float:
    """Exact alternating binomial form of the mean log squared quantization
    cosine:

        sum_{i=0}^{2^B} C(2^B, i) (-1)^i H_{i(nt-1)}

    with H the harmonic numbers. Rational arithmetic up to 6 bits,
    high-precision arithmetic up to 12; beyond that the cancellation makes
    the sum impractical and lemma1_beta_form must be used.
    """
    bits = int(bits)
    nt = int(nt)
    if bits < 0:
        raise ValueError(f"bits must be >= 0, got {bits}")
    if nt < 2:
        raise ValueError(f"nt must be >= 2, got {nt}")
    if bits > BINOMIAL_SUM_MAX_BITS:
        raise CapacityError(
            f"binomial sum at {bits} bits needs ~2^{bits} bits of precision; "
            "use lemma1_beta_form instead"
        )
    n = 2 ** bits
    m = nt - 1
    if bits <= _EXACT_MAX_BITS:
        harmonic = [Fraction(0)]
        for j in range(1, n * m + 1):
            harmonic.append(harmonic[-1] + Fraction(1, j))
        total = Fraction(0)
        for i in range(n + 1):
            total += math.comb(n, i) * (-1) ** i * harmonic[i * m]
        return float(total)
    with mpmath.workprec(n + 64):
        harmonic = [mpmath.mpf(0)]
        for j in range(1, n * m + 1):
            harmonic.append(harmonic[-1] + mpmath.mpf(1) / j)
        total = mpmath.mpf(0)
        for i in range(n + 1):
            term = mpmath.mpf(math.comb(n, i)) * harmonic[i * m]
            total = total - term if i % 2 else total + term
        return float(total)


def lemma1_beta_form(bits: float, nt: int) -> float:
    """Beta-function form of the same quantity, valid for any bit budget:

        -(1/(nt-1)) sum_{i=1}^{nt-1} B(2^bits, i/(nt-1))

    Negative, increasing toward 0 as bits grow.
    """
    nt = int(nt)
    if nt < 2:
        raise ValueError(f"nt must be >= 2, got {nt}")
    bits = float(bits)
    if bits < 0:
        raise ValueError(f"bits must be >= 0, got {bits}")
    m = nt - 1
    n = 2.0 ** bits
    return -sum(beta_fn(n, i / m) for i in range(1, m + 1)) / m


def desired_term_bound(bits: float, eta: float, nt: int, rho: float) -> float:
    """Delay-plus-quantization penalty on the desired-signal log term:

        log2(rho eta^2) + log2(e) * lemma1_beta_form(bits, nt)

    Raises
    ------
    ValueError
        If eta == 0 or rho == 0 (the log diverges; degenerate link).
    """
    eta = float(eta)
    rho = float(rho)
    if eta == 0.0 or rho == 0.0:
        raise ValueError("desired_term_bound diverges at eta == 0 or rho == 0")
    if abs(eta) > 1.0 or rho < 0.0:
        raise ValueError(f"need |eta| <= 1 and rho > 0, got eta={eta!r}, rho={rho!r}")
    return math.log2(rho * eta * eta) + LOG2E * lemma1_beta_form(bits, nt)


def interference_term_bound(bits: float, eta: float, nt: int) -> float:
    """Upper bound on the mean residual interference power |g^H f|^2 after
    nulling a quantized, delayed direction:

        (1 - eta^2) + eta^2 * 2^bits * B(2^bits, nt/(nt-1)) * nt/(nt-1)
    """
    nt = int(nt)
    if nt < 2:
        raise ValueError(f"nt must be >= 2, got {nt}")
    eta = float(eta)
    if abs(eta) > 1.0:
        raise ValueError(f"need |eta| <= 1, got {eta!r}")
    bits = float(bits)
    if bits < 0:
        raise ValueError(f"bits must be >= 0, got {bits}")
    c = nt / (nt - 1)
    n = 2.0 ** bits
    eta2 = eta * eta
    return (1.0 - eta2) + eta2 * n * beta_fn(n, c) * c


def loss_upper_bound(params, allocations) -> float:
    """Closed-form upper bound on the mean sum-rate loss, summed over users.

    Per user:

        log2(eta_k^2)
        + log2(e)/(nt-1) * sum_i B(2^{B_k}, i/(nt-1))
        + log2(1 + rho * sum_l alpha_l * interference_term_bound(B_l, eta_l, nt))

    The middle term is the magnitude of lemma1_beta_form. The raw value is
    returned (it can be negative through log2(eta^2)); user-facing report
    code clamps at zero, the library does not.
    """
    if isinstance(params, LinkParams):
        params = [params]
        allocations = [allocations]
    if len(params) != len(allocations):
        raise ValueError("params and allocations must pair up one per user")
    total = 0.0
    for p, alloc in zip(params, allocations):
        desired_bits, int_bits = _interferer_bits_list(alloc, p.n_cells - 1)
        if p.eta_desired == 0.0:
            raise ValueError("loss bound diverges at eta_desired == 0")
        interference = 0.0
        for alpha, eta, b in zip(p.alphas, p.eta_interferers, int_bits):
            if alpha > 0.0:
                interference += alpha * interference_term_bound(b, eta, p.nt)
        total += (
            math.log2(p.eta_desired ** 2)
            - LOG2E * lemma1_beta_form(desired_bits, p.nt)
            + math.log2(1.0 + p.rho * interference)
        )
    return total


def approx_loss_user(params: LinkParams, allocation) -> float:
    """Large-codebook approximation of one user's loss contribution; the
    objective the bit allocator minimizes. Uses B(a, b) ~ Gamma(b) a^-b:

        log2(e) Gamma(c) 2^(-B_k/(nt-1))
        + log2(1 + nt rho sum_l alpha_l (1 - eta_l^2)
                 + Gamma(c+1) nt rho sum_l alpha_l eta_l^2 2^(-B_l/(nt-1)))

    with c = nt/(nt-1). Accepts fractional bit values (the rounding stage
    evaluates it on real-valued candidates).
    """
    desired_bits, int_bits = _interferer_bits_list(allocation, params.n_cells - 1)
    nt = params.nt
    m = nt - 1
    c = nt / m
    gamma_c = math.exp(ln_gamma(c))
    gamma_c1 = math.exp(ln_gamma((2 * nt - 1) / m))
    static = 0.0
    quantized = 0.0
    for alpha, eta, b in zip(params.alphas, params.eta_interferers, int_bits):
        eta2 = eta * eta
        static += alpha * (1.0 - eta2)
        quantized += alpha * eta2 * 2.0 ** (-b / m)
    inner = 1.0 + nt * params.rho * static + gamma_c1 * nt * params.rho * quantized
    return LOG2E * gamma_c * 2.0 ** (-desired_bits / m) + math.log2(inner)
