"""Seven-cell downlink simulator: geometry, Monte Carlo engine and CLI."""

from .config import N_CELLS, N_INTERFERERS, SimConfig, load_config
from .engine import (
    BITS_GRID,
    CSV_HEADER,
    DELAY_GRID,
    DISTANCE_FRACTIONS,
    SweepReport,
    SweepRow,
    run_sweep,
    run_trial,
)
from .scenario import Scenario, build_hex_scenario, user_link_params

__all__ = [
    "N_CELLS",
    "N_INTERFERERS",
    "SimConfig",
    "load_config",
    "BITS_GRID",
    "CSV_HEADER",
    "DELAY_GRID",
    "DISTANCE_FRACTIONS",
    "SweepReport",
    "SweepRow",
    "run_sweep",
    "run_trial",
    "Scenario",
    "build_hex_scenario",
    "user_link_params",
]
