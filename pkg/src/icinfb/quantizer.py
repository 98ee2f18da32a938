"""Random vector quantization of channel directions.

Explicit codebook search for small bit budgets, and an exact statistical
equivalent for large ones: the quantization angle is sampled from its known
distribution and the quantized direction is reconstructed around the true
one. The statistical path is what makes 35-bit budgets simulable.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import CapacityError
from .numerics import RngStream

__all__ = [
    "DEFAULT_EXPLICIT_CAP",
    "Codebook",
    "QuantizedDirection",
    "generate_codebook",
    "quantize",
    "statistical_quantize",
    "rvq_sin2_samples",
]

DEFAULT_EXPLICIT_CAP = 16


def _unit_rows(v: np.ndarray) -> np.ndarray:
    norms = np.linalg.norm(v, axis=-1, keepdims=True)
    if np.any(norms == 0):  # probability zero; guards degenerate inputs
        raise ValueError("cannot normalize a zero vector")
    return v / norms


@dataclass(frozen=True)
class Codebook:
    """A set of 2**bits unit-norm complex codeword rows."""

    bits: int
    codewords: np.ndarray  # shape (2**bits, nt)

    def __post_init__(self):
        if self.bits < 0:
            raise ValueError(f"bits must be >= 0, got {self.bits}")
        cw = np.asarray(self.codewords, dtype=np.complex128)
        if cw.ndim != 2 or cw.shape[0] != 2 ** self.bits:
            raise ValueError(
                f"expected {2 ** self.bits} codeword rows, got shape {cw.shape}"
            )
        object.__setattr__(self, "codewords", cw)


@dataclass(frozen=True)
class QuantizedDirection:
    """A quantized unit direction and its squared alignment with the truth."""

    direction: np.ndarray
    cos2_theta: float


def generate_codebook(rng: RngStream, bits: int, nt: int,
                      cap: int = DEFAULT_EXPLICIT_CAP) -> Codebook:
    """Draw a fresh random codebook of 2**bits i.i.d. isotropic unit vectors.

    Raises
    ------
    CapacityError
        If ``bits`` exceeds ``cap``; use :func:`statistical_quantize` for
        large budgets instead of materializing 2**bits codewords.
    """
    bits = int(bits)
    nt = int(nt)
    if bits < 0:
        raise ValueError(f"bits must be >= 0, got {bits}")
    if nt < 1:
        raise ValueError(f"nt must be >= 1, got {nt}")
    if bits > cap:
        raise CapacityError(
            f"explicit codebook with {bits} bits exceeds the cap of {cap}; "
            "use statistical_quantize for large budgets"
        )
    codewords = _unit_rows(rng.complex_gaussian((2 ** bits, nt)))
    return Codebook(bits, codewords)


def quantize(direction: np.ndarray, codebook: Codebook) -> QuantizedDirection:
    """Pick the codeword maximizing |<direction, c>|^2 (ties: lowest index)."""
    direction = np.asarray(direction, dtype=np.complex128)
    cw = codebook.codewords
    if cw.shape[0] == 0:
        raise ValueError("codebook is empty")
    if direction.shape != (cw.shape[1],):
        raise ValueError(
            f"direction shape {direction.shape} does not match codeword length {cw.shape[1]}"
        )
    metric = np.abs(cw @ direction.conj()) ** 2
    idx = int(np.argmax(metric))  # argmax returns the first (lowest) maximizer
    return QuantizedDirection(cw[idx].copy(), min(1.0, float(metric[idx])))


def statistical_quantize(direction: np.ndarray, bits: int, rng: RngStream) -> QuantizedDirection:
    """Sample a random-codebook quantization outcome without a codebook.

    The squared quantization-error sine is the minimum of 2**bits i.i.d.
    variables with CDF y^(nt-1), drawn through one inverse-CDF sample:

        sin^2 = (1 - (1 - u)^(2^-bits))^(1/(nt-1)),  u ~ Uniform(0, 1).

    The quantized direction is rebuilt as cos(theta) * direction +
    sin(theta) * s with s an isotropic unit vector orthogonal to the true
    direction, so |<direction, result>|^2 = 1 - sin^2 exactly.
    """
    direction = np.asarray(direction, dtype=np.complex128)
    nt = direction.shape[-1]
    bits = int(bits)
    if direction.ndim != 1 or nt < 2:
        raise ValueError("statistical_quantize needs a 1-D direction with nt >= 2")
    if bits < 0:
        raise ValueError(f"bits must be >= 0, got {bits}")
    u = float(rng.uniform())
    # -expm1(2^-bits * log1p(-u)) = 1 - (1-u)^(2^-bits), stable for large bits
    sin2 = (-math.expm1(2.0 ** (-bits) * math.log1p(-u))) ** (1.0 / (nt - 1))
    g = rng.complex_gaussian(nt)
    s = g - np.vdot(direction, g) * direction
    norm = np.linalg.norm(s)
    while norm < 1e-12:  # probability-zero redraw, kept deterministic
        g = rng.complex_gaussian(nt)
        s = g - np.vdot(direction, g) * direction
        norm = np.linalg.norm(s)
    s /= norm
    quantized = math.sqrt(1.0 - sin2) * direction + math.sqrt(sin2) * s
    quantized /= np.linalg.norm(quantized)
    return QuantizedDirection(quantized, 1.0 - sin2)


def rvq_sin2_samples(rng: RngStream, bits: int, nt: int, n_samples: int,
                     max_chunk: int = 4096) -> np.ndarray:
    """Explicit-search quantization errors sin^2(theta), drawn in bulk.

    Monte Carlo helper equivalent to repeated generate_codebook + quantize
    with a fresh random direction per sample, evaluated chunk-wise. Per
    chunk of m samples the draw order is: directions (m, nt) first, then
    codebooks (m, 2**bits, nt).
    """
    bits = int(bits)
    nt = int(nt)
    n_samples = int(n_samples)
    if nt < 2:
        raise ValueError(f"nt must be >= 2, got {nt}")
    if n_samples < 1:
        raise ValueError(f"n_samples must be >= 1, got {n_samples}")
    if bits > DEFAULT_EXPLICIT_CAP:
        raise CapacityError(
            f"explicit search with {bits} bits exceeds the cap of {DEFAULT_EXPLICIT_CAP}"
        )
    n_codewords = 2 ** bits
    # keep each chunk's codebook block at ~2^22 complex entries
    chunk = max(1, min(max_chunk, (1 << 22) // max(1, n_codewords * nt)))
    out = np.empty(n_samples)
    done = 0
    while done < n_samples:
        m = min(chunk, n_samples - done)
        directions = _unit_rows(rng.complex_gaussian((m, nt)))
        codebooks = _unit_rows(rng.complex_gaussian((m, n_codewords, nt)))
        metric = np.abs(np.einsum("mcn,mn->mc", codebooks, directions.conj())) ** 2
        out[done:done + m] = 1.0 - metric.max(axis=1)
        done += m
    return out
