"""Run configuration with urban-microcell defaults and a JSON loader."""

import json
import math
from dataclasses import dataclass, fields

from ..errors import ConfigError

__all__ = ["N_INTERFERERS", "N_CELLS", "SimConfig", "load_config"]

# First-ring hexagonal neighbors around the center cell.
N_INTERFERERS = 6
N_CELLS = N_INTERFERERS + 1

_REGIMES = ("auto", "low_snr", "high_snr")


@dataclass(frozen=True)
class SimConfig:
    """All run parameters. Defaults follow the urban-microcell setup:
    1.9 GHz carrier, 400 m cells, 3 dBW transmit power, -144 dBW noise,
    10 mph mobility, one-symbol feedback and backhaul delays."""

    cell_radius_m: float = 400.0
    carrier_hz: float = 1.9e9
    es_dbw: float = 3.0
    noise_dbw: float = -144.0
    velocity_mps: float = 4.4704
    symbol_duration_s: float = 1e-3
    nt: int = 8
    btot: int = 35
    feedback_delay_symbols: int = 1
    backhaul_delay_symbols: int = 1
    trials: int = 1000
    master_seed: int = 12345
    regime: str = "auto"
    explicit_quantizer_cap: int = 10

    def __post_init__(self):
        def fail(message):
            raise ConfigError(message)

        for name in ("cell_radius_m", "carrier_hz", "velocity_mps", "symbol_duration_s"):
            value = getattr(self, name)
            if not isinstance(value, (int, float)) or isinstance(value, bool) \
                    or not math.isfinite(value) or value <= 0:
                fail(f"{name} must be a positive number, got {value!r}")
        for name in ("es_dbw", "noise_dbw"):
            value = getattr(self, name)
            if not isinstance(value, (int, float)) or isinstance(value, bool) \
                    or not math.isfinite(value):
                fail(f"{name} must be a finite number, got {value!r}")
        for name in ("nt", "btot", "feedback_delay_symbols", "backhaul_delay_symbols",
                     "trials", "master_seed", "explicit_quantizer_cap"):
            value = getattr(self, name)
            if not isinstance(value, int) or isinstance(value, bool):
                fail(f"{name} must be an integer, got {value!r}")
        if self.cell_radius_m <= 1.0:
            fail(f"cell_radius_m must exceed 1 m, got {self.cell_radius_m!r}")
        if self.nt < N_CELLS:
            fail(
                f"nt must be >= {N_CELLS} so the beam can null all "
                f"{N_INTERFERERS} neighbors, got {self.nt}"
            )
        if self.btot < 0:
            fail(f"btot must be >= 0, got {self.btot}")
        if self.feedback_delay_symbols < 0 or self.backhaul_delay_symbols < 0:
            fail("delays must be >= 0 symbols")
        if self.trials < 1:
            fail(f"trials must be >= 1, got {self.trials}")
        if self.master_seed < 0:
            fail(f"master_seed must be >= 0, got {self.master_seed}")
        if self.explicit_quantizer_cap < 0:
            fail(f"explicit_quantizer_cap must be >= 0, got {self.explicit_quantizer_cap}")
        if self.regime not in _REGIMES:
            fail(f"regime must be one of {_REGIMES}, got {self.regime!r}")


def load_config(path) -> SimConfig:
    """Load a SimConfig from a JSON object file; unknown keys are errors."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            raw = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config file {path} is not valid JSON: {exc}") from exc
    if not isinstance(raw, dict):
        raise ConfigError(f"config file {path} must contain a JSON object")
    known = {f.name for f in fields(SimConfig)}
    unknown = sorted(set(raw) - known)
    if unknown:
        raise ConfigError(f"unknown config keys: {', '.join(unknown)}")
    return SimConfig(**raw)
