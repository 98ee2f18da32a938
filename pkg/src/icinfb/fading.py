"""Rayleigh MISO channels, Gauss-Markov time evolution, Clarke temporal
correlation, and the urban-microcell link budget."""

import math
from dataclasses import dataclass

import numpy as np

from .numerics import RngStream, bessel_j0

__all__ = [
    "SPEED_OF_LIGHT",
    "DopplerParams",
    "rayleigh_channel",
    "clarke_correlation",
    "gauss_markov_evolve",
    "cost231_pathloss_db",
    "link_budget",
]

SPEED_OF_LIGHT = 299_792_458.0  # m/s


@dataclass(frozen=True)
class DopplerParams:
    """Mobility parameters from which the Doppler spread is derived."""

    velocity_mps: float
    carrier_hz: float
    symbol_duration_s: float

    def __post_init__(self):
        for name in ("velocity_mps", "carrier_hz", "symbol_duration_s"):
            value = getattr(self, name)
            if not (isinstance(value, (int, float)) and math.isfinite(value) and value > 0):
                raise ValueError(f"{name} must be strictly positive, got {value!r}")

    @property
    def doppler_hz(self) -> float:
        """Maximum Doppler shift v * f_c / c."""
        return self.velocity_mps * self.carrier_hz / SPEED_OF_LIGHT


def rayleigh_channel(rng: RngStream, nt: int) -> np.ndarray:
    """I.i.d. Rayleigh MISO channel: nt entries of CN(0, 1)."""
    nt = int(nt)
    if nt < 1:
        raise ValueError(f"nt must be >= 1, got {nt}")
    return rng.complex_gaussian(nt)


def clarke_correlation(delay_symbols: int, doppler: DopplerParams) -> float:
    """Temporal correlation of an isotropically scattered fading channel.

    eta = J0(2 pi D f_d T_s) for a delay of D symbol periods. The value may
    be negative for large arguments and is returned unmodified.
    """
    delay_symbols = int(delay_symbols)
    if delay_symbols < 0:
        raise ValueError(f"delay_symbols must be >= 0, got {delay_symbols}")
    x = 2.0 * math.pi * delay_symbols * doppler.doppler_hz * doppler.symbol_duration_s
    return bessel_j0(x)


def gauss_markov_evolve(old: np.ndarray, eta: float, rng: RngStream) -> np.ndarray:
    """One composite step of the first-order Gauss-Markov channel model.

    Returns eta * old + sqrt(1 - eta^2) * w with w fresh CN(0, 1) entries
    of the same shape, so a CN(0, I) marginal is preserved. Batched inputs
    evolve row-wise with independent innovations. The innovation is always
    drawn, keeping the stream consumption independent of eta.
    """
    old = np.asarray(old, dtype=np.complex128)
    eta = float(eta)
    if not math.isfinite(eta) or abs(eta) > 1.0:
        raise ValueError(f"eta must satisfy |eta| <= 1, got {eta!r}")
    w = rng.complex_gaussian(old.shape)
    return eta * old + math.sqrt(1.0 - eta * eta) * w


def cost231_pathloss_db(distance_m: float) -> float:
    """Urban-microcell path loss PL[dB] = 34.53 + 38 log10(d), d in meters."""
    distance_m = float(distance_m)
    if not math.isfinite(distance_m) or distance_m < 1.0:
        raise ValueError(f"distance_m must be >= 1, got {distance_m!r}")
    return 34.53 + 38.0 * math.log10(distance_m)


def link_budget(es_dbw, noise_dbw, pl_desired_db, pl_interferers_db):
    """Per-link SNR and interference-to-signal ratios from the dB budget.

    Returns
    -------
    rho : float
        Linear desired-signal SNR 10^((Es - PL_des - No)/10).
    alphas : list of float in [0, 1]
        Per-interferer received-power ratio relative to the desired signal,
        clamped at 1 (interference is modeled at most as strong as the
        desired signal).
    """
    values = [float(es_dbw), float(noise_dbw), float(pl_desired_db)]
    pl_interferers_db = [float(p) for p in pl_interferers_db]
    if not all(math.isfinite(v) for v in values + pl_interferers_db):
        raise ValueError("link_budget requires finite dB inputs")
    es_dbw, noise_dbw, pl_desired_db = values
    rho = 10.0 ** ((es_dbw - pl_desired_db - noise_dbw) / 10.0)
    alphas = [min(1.0, 10.0 ** ((pl_desired_db - pl) / 10.0)) for pl in pl_interferers_db]
    return rho, alphas
