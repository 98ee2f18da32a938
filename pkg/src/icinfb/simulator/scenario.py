"""Seven-cell hexagonal scenario: geometry and per-position link parameters.

The center base station (index 0) sits at the origin; its six first-ring
neighbors sit at distance sqrt(3) * R, numbered clockwise starting from the
northeast one. The evaluated user travels along the ray from the center
toward the midpoint between neighbors 2 and 3 (azimuth -60 degrees), so the
two of them stay the symmetric strongest interferers at the cell edge.
"""

import math
from dataclasses import dataclass

import numpy as np

from ..bounds import LinkParams
from ..fading import DopplerParams, clarke_correlation, cost231_pathloss_db, link_budget
from .config import N_CELLS, N_INTERFERERS, SimConfig

__all__ = ["Scenario", "build_hex_scenario", "user_link_params"]

# Clockwise from the northeast neighbor.
_NEIGHBOR_ANGLES_DEG = (30.0, -30.0, -90.0, -150.0, 150.0, 90.0)
_USER_RAY_DEG = -60.0  # midpoint of the neighbor-2 and neighbor-3 directions


@dataclass(frozen=True)
class Scenario:
    """Static scenario: geometry, radio parameters and delays."""

    cell_radius_m: float
    bs_positions: np.ndarray  # (7, 2): row 0 center, rows 1..6 clockwise
    nt: int
    es_dbw: float
    noise_dbw: float
    doppler: DopplerParams
    feedback_delay_symbols: int
    backhaul_delay_symbols: int
    btot: int
    explicit_quantizer_cap: int
    regime: str


def build_hex_scenario(config: SimConfig) -> Scenario:
    """Build the seven-cell hexagonal scenario from a validated config."""
    radius = float(config.cell_radius_m)
    positions = np.zeros((N_CELLS, 2))
    ring = math.sqrt(3.0) * radius
    for j, angle_deg in enumerate(_NEIGHBOR_ANGLES_DEG, start=1):
        angle = math.radians(angle_deg)
        positions[j] = (ring * math.cos(angle), ring * math.sin(angle))
    return Scenario(
        cell_radius_m=radius,
        bs_positions=positions,
        nt=config.nt,
        es_dbw=config.es_dbw,
        noise_dbw=config.noise_dbw,
        doppler=DopplerParams(
            velocity_mps=config.velocity_mps,
            carrier_hz=config.carrier_hz,
            symbol_duration_s=config.symbol_duration_s,
        ),
        feedback_delay_symbols=config.feedback_delay_symbols,
        backhaul_delay_symbols=config.backhaul_delay_symbols,
        btot=config.btot,
        explicit_quantizer_cap=config.explicit_quantizer_cap,
        regime=config.regime,
    )


def user_link_params(scenario: Scenario, d: float) -> LinkParams:
    """Link parameters for the user at distance d from the center station.

    Places the user on the fixed trajectory ray, converts per-station
    distances to path losses and then to the SNR and interference ratios,
    and computes the temporal correlations from the feedback delay (desired
    link) and feedback-plus-backhaul delay (interfering links).
    """
    d = float(d)
    if not (1.0 <= d <= scenario.cell_radius_m):
        raise ValueError(
            f"d must lie in [1, {scenario.cell_radius_m}] m, got {d!r}"
        )
    ray = math.radians(_USER_RAY_DEG)
    user = np.array((d * math.cos(ray), d * math.sin(ray)))
    distances = np.linalg.norm(scenario.bs_positions - user, axis=1)
    pathlosses = [cost231_pathloss_db(dist) for dist in distances]
    rho, alphas = link_budget(
        scenario.es_dbw, scenario.noise_dbw, pathlosses[0], pathlosses[1:]
    )
    eta_desired = clarke_correlation(scenario.feedback_delay_symbols, scenario.doppler)
    eta_interferer = clarke_correlation(
        scenario.feedback_delay_symbols + scenario.backhaul_delay_symbols,
        scenario.doppler,
    )
    return LinkParams(
        rho=rho,
        alphas=tuple(alphas),
        eta_desired=eta_desired,
        eta_interferers=(eta_interferer,) * N_INTERFERERS,
        nt=scenario.nt,
        n_cells=N_CELLS,
    )
